"""Loaders for the TOML/CSV input formats and the JSON renderers."""

import json
from decimal import Decimal

import mpmath
import pytest

from torsionlab.errors import InputError
from torsionlab.fileio import (complex_to_json, data_path, dump_json,
                               load_monodromy, load_presentation,
                               load_representation, load_spectrum,
                               matrix_to_json, number_to_json, poly_to_json,
                               ratfunc_to_json)
from torsionlab.knots import build_twisted_complex
from torsionlab.laurent import RatFunc, parse_laurent


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


# -- packaged inputs ------------------------------------------------------------------


def test_packaged_trefoil_file():
    pres, aug = load_presentation(data_path("trefoil.toml"))
    assert pres.generators == ("x", "y")
    assert len(pres.relators) == 1
    assert aug is not None and aug.values == (1, 1)


def test_packaged_files_all_load():
    for name in ("unknot", "figure_eight", "5_1", "5_2"):
        pres, aug = load_presentation(data_path(name + ".toml"))
        assert aug is None
        for rep in ("trivial", "dihedral_3", "dihedral_5", "dihedral_7",
                    "dihedral_twist4_3"):
            if len(pres.generators) == 2:
                load_representation(data_path(rep + ".toml"), pres.generators)
    for name in ("mono_identity", "mono_minus_identity", "mono_rotation",
                 "mono_jordan"):
        mono = load_monodromy(data_path(name + ".toml"))
        assert mono.dimension == 2 and mono.h0_vanishes


def test_packaged_spectrum():
    spec = load_spectrum(data_path("sample_spectrum.csv"))
    assert len(spec) == 5
    lengths = [e.length for e in spec.entries]
    assert lengths == sorted(lengths)
    assert any(e.matrix is not None for e in spec.entries)
    assert any(e.charpoly is not None for e in spec.entries)


# -- error reporting ------------------------------------------------------------------


def test_missing_file_mentions_path(tmp_path):
    target = tmp_path / "nope.toml"
    with pytest.raises(InputError, match="nope.toml"):
        load_presentation(target)


def test_toml_syntax_error_carries_position(tmp_path):
    p = write(tmp_path, "broken.toml", "generators = [x]\n")
    with pytest.raises(InputError, match=r"broken\.toml.*line 1"):
        load_presentation(p)


def test_missing_keys_are_named(tmp_path):
    p = write(tmp_path, "norel.toml", 'generators = ["x"]\n')
    with pytest.raises(InputError, match="missing required key 'relators'"):
        load_presentation(p)


def test_augmentation_table_must_cover_every_generator(tmp_path):
    base = 'generators = ["x", "y"]\nrelators = ["x y x y^-1 x^-1 y^-1"]\n'
    p = write(tmp_path, "partial.toml", base + "[augmentation]\nx = 1\n")
    with pytest.raises(InputError, match="missing generator 'y'"):
        load_presentation(p)
    p = write(tmp_path, "unknown.toml", base + "[augmentation]\nx = 1\ny = 1\nq = 1\n")
    with pytest.raises(InputError, match="unknown generators \\['q'\\]"):
        load_presentation(p)
    p = write(tmp_path, "float.toml", base + "[augmentation]\nx = 1\ny = 1.5\n")
    with pytest.raises(InputError, match="must be an integer"):
        load_presentation(p)


def test_representation_matrix_errors(tmp_path):
    head = "cyclotomic_order = 1\ndimension = 2\n[matrices]\n"
    eye = '[["1", "0"], ["0", "1"]]'
    p = write(tmp_path, "missing.toml", head + f"x = {eye}\n")
    with pytest.raises(InputError, match="no matrix for generator 'y'"):
        load_representation(p, ("x", "y"))
    p = write(tmp_path, "shape.toml", head + f'x = {eye}\ny = [["1"]]\n')
    with pytest.raises(InputError, match="matrices.y is 1x1, expected 2x2"):
        load_representation(p, ("x", "y"))
    p = write(tmp_path, "entry.toml",
              head + f'x = {eye}\ny = [["1", "0"], ["0", "oops"]]\n')
    with pytest.raises(InputError, match=r"matrices\.y\[1\]\[1\]"):
        load_representation(p, ("x", "y"))
    p = write(tmp_path, "nonunitary.toml",
              head + f'x = {eye}\ny = [["2", "0"], ["0", "2"]]\n')
    with pytest.raises(InputError, match="unitary"):
        load_representation(p, ("x", "y"))


def test_monodromy_defaults_and_errors(tmp_path):
    p = write(tmp_path, "m.toml",
              'cyclotomic_order = 1\ndimension = 1\nmatrix = [["3"]]\n')
    mono = load_monodromy(p)
    assert not mono.h0_vanishes  # the flag is opt-in
    p = write(tmp_path, "flag.toml",
              'cyclotomic_order = 1\ndimension = 1\nmatrix = [["3"]]\n'
              'h0_vanishes = "yes"\n')
    with pytest.raises(InputError, match="must be a boolean"):
        load_monodromy(p)
    p = write(tmp_path, "dim.toml",
              'cyclotomic_order = 1\ndimension = 2\nmatrix = [["3"]]\n')
    with pytest.raises(InputError, match="2x2"):
        load_monodromy(p)


def test_spectrum_errors_carry_line_numbers(tmp_path):
    head = "length,multiplicity,holonomy\n"
    p = write(tmp_path, "badlen.csv", head + "abc,1,charpoly:-1 + t\n")
    with pytest.raises(InputError, match="line 2: bad length 'abc'"):
        load_spectrum(p)
    p = write(tmp_path, "badhol.csv",
              head + "1,1,charpoly:-1 + t\n2,1,trace:5\n")
    with pytest.raises(InputError, match="line 3: holonomy must start"):
        load_spectrum(p)
    p = write(tmp_path, "badmat.csv",
              head + '1,1,"matrix:[[""1"",""0""]]"\n')
    with pytest.raises(InputError, match="row 0 has 2 entries, expected 1"):
        load_spectrum(p)
    p = write(tmp_path, "noheader.csv", "a,b\n1,2\n")
    with pytest.raises(InputError, match="missing columns"):
        load_spectrum(p)


# -- JSON rendering -------------------------------------------------------------------


def test_poly_and_ratfunc_json():
    f = RatFunc(parse_laurent("z*t^-1 + 2", 4), parse_laurent("1 - t", 4))
    got = ratfunc_to_json(f)
    assert got["numerator"] == {
        "min_exp": -1, "coeffs": ["z", "2"], "cyclotomic_order": 4}
    assert got["denominator"]["coeffs"] == ["1", "-1"]
    assert poly_to_json(parse_laurent("0"))["min_exp"] == 0


def test_complex_json_round_structure():
    pres, aug = load_presentation(data_path("trefoil.toml"))
    rho = load_representation(data_path("trivial.toml"), pres.generators)
    tc = build_twisted_complex(pres, rho, aug)
    got = complex_to_json(tc.complex)
    assert got["ranks"] == [1, 2, 1]
    assert len(got["boundaries"]) == 2
    assert got["boundaries"][0]["nrows"] == 1
    assert got["labels"][1] == ["x(x)v1", "y(x)v1"]
    assert json.loads(dump_json(got)) == got


def test_number_json_branches():
    assert number_to_json(None) is None
    assert number_to_json(mpmath.mpf("0.5")) == "0.5"
    pair = number_to_json(mpmath.mpc(1, -2))
    assert pair == {"re": "1.0", "im": "-2.0"}


def test_dump_json_is_deterministic():
    a = dump_json({"b": 1, "a": [1, 2]})
    b = dump_json({"a": [1, 2], "b": 1})
    assert a == b
    assert a.endswith("\n")
    assert matrix_to_json(
        load_monodromy(data_path("mono_rotation.toml")).matrix)["entries"] == \
        [["0", "-1"], ["1", "0"]]
