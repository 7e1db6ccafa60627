"""Command line interface: exit codes, human output, and the JSON contract."""

import json
import subprocess
import sys

import jsonschema
import pytest

from torsionlab.cli import main
from torsionlab.fileio import data_path

SCHEMA = json.loads(data_path("report.schema.json").read_text(encoding="utf-8"))


def knot_args(name, rep):
    return ["-p", str(data_path(name + ".toml")),
            "-r", str(data_path(rep + ".toml"))]


def run_json(capsys, argv, expect_code=0):
    code = main(argv + ["--json"])
    assert code == expect_code
    report = json.loads(capsys.readouterr().out)
    jsonschema.validate(report, SCHEMA)
    return report


# -- human-readable output ------------------------------------------------------------


def test_twisted_alexander_human_output(capsys):
    assert main(["twisted-alexander"] + knot_args("trefoil", "trivial")) == 0
    out = capsys.readouterr().out
    assert "(1 - t + t^2) / (1 - t)" in out


def test_mapping_torus_jordan_verdict(capsys):
    code = main(["mapping-torus", "-f", str(data_path("mono_jordan.toml"))])
    assert code == 0
    out = capsys.readouterr().out
    assert "strict inequality" in out


def test_mapping_torus_semisimple_verdict(capsys):
    code = main(["mapping-torus", "-f", str(data_path("mono_rotation.toml"))])
    assert code == 0
    assert "orders equal" in capsys.readouterr().out


def test_homology_human_output(capsys):
    assert main(["homology"] + knot_args("trefoil", "dihedral_3")) == 0
    out = capsys.readouterr().out
    assert "ranks: [2, 4, 2]" in out
    assert "Alexander invariant" in out


# -- exit codes -----------------------------------------------------------------------


def test_unknown_flag_is_an_input_error(capsys):
    assert main(["twisted-alexander", "--bogus"]) == 1
    assert "error:" in capsys.readouterr().err


def test_missing_file(capsys):
    assert main(["mapping-torus", "-f", "/does/not/exist.toml"]) == 1
    err = capsys.readouterr().err
    assert "cannot read" in err


def test_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.toml"
    bad.write_text("relators = [x\n", encoding="utf-8")
    code = main(["twisted-alexander", "-p", str(bad),
                 "-r", str(data_path("trivial.toml"))])
    assert code == 1


def test_torsion_outside_hypotheses_exits_2(capsys):
    code = main(["torsion"] + knot_args("trefoil", "trivial"))
    assert code == 2
    err = capsys.readouterr().err
    assert err.startswith("not applicable:")
    assert "degree-0 homology" in err


def test_column_out_of_range(capsys):
    code = main(["twisted-alexander", "--column", "7"]
                + knot_args("trefoil", "trivial"))
    assert code == 1


def test_truncate_cutoff_below_spectrum(capsys):
    code = main(["ruelle", "truncate",
                 "--spectrum", str(data_path("sample_spectrum.csv")),
                 "-s", "2", "--max-length", "0.1"])
    assert code == 1


# -- JSON reports against the packaged schema -----------------------------------------


def test_twisted_alexander_json(capsys):
    rep = run_json(capsys, ["twisted-alexander"] + knot_args("trefoil", "trivial"))
    assert rep["kind"] == "twisted-alexander"
    assert rep["column"] == 1
    assert rep["delta"]["numerator"]["coeffs"] == ["1", "-1", "1"]


def test_torsion_json(capsys):
    rep = run_json(capsys, ["torsion"] + knot_args("trefoil", "dihedral_3"))
    assert rep["kind"] == "torsion"
    assert rep["ord_delta_at_one"] == 1
    assert rep["cohomology_dims"] == [0, 1, 1]
    assert rep["dual_torsion_inverts_delta"] is True


def test_homology_json(capsys):
    rep = run_json(capsys, ["homology"] + knot_args("trefoil", "trivial"))
    assert rep["kind"] == "homology"
    assert rep["is_torsion"] is True
    assert rep["alexander_invariant"] is not None


def test_mapping_torus_json(capsys):
    rep = run_json(capsys, ["mapping-torus",
                            "-f", str(data_path("mono_rotation.toml"))])
    assert rep["kind"] == "mapping-torus"
    assert rep["beta"] == 0
    assert rep["orders_equal"] is True


def test_ruelle_predict_json_both_sources(capsys):
    rep = run_json(capsys, ["ruelle", "predict", "--from", "mapping-torus",
                            str(data_path("mono_identity.toml"))])
    assert rep["kind"] == "ruelle-predict"
    assert rep["order"] == -4
    assert rep["leading_abs"] == "1.0"

    rep = run_json(capsys, ["ruelle", "predict", "--from", "knot",
                            str(data_path("trefoil.toml")),
                            str(data_path("dihedral_twist4_3.toml"))])
    assert rep["order"] == 0
    assert rep["leading_abs"] == "0.25"


def test_ruelle_predict_wrong_arity(capsys):
    code = main(["ruelle", "predict", "--from", "mapping-torus",
                 str(data_path("mono_identity.toml")),
                 str(data_path("mono_jordan.toml"))])
    assert code == 1


def test_ruelle_truncate_json(capsys):
    rep = run_json(capsys, ["ruelle", "truncate",
                            "--spectrum", str(data_path("sample_spectrum.csv")),
                            "-s", "2,0.5", "--max-length", "3"])
    assert rep["kind"] == "ruelle-truncate"
    assert rep["terms_used"] >= 1
    assert set(rep["value"]) == {"re", "im"}
    assert "not a value at s = 0" in rep["note"]


def test_verify_json(capsys):
    rep = run_json(capsys, ["verify", "--suite", "laurent", "--seed", "7"])
    assert rep["kind"] == "verify"
    assert rep["ok"] is True
    assert all(v["fail"] == 0 and v["pass"] > 0
               for v in rep["properties"].values())


# -- determinism across processes -----------------------------------------------------


def run_module(argv):
    return subprocess.run([sys.executable, "-m", "torsionlab"] + argv,
                          capture_output=True, text=True)


def test_verify_output_is_reproducible_across_processes():
    argv = ["verify", "--suite", "laurent", "--seed", "42", "--json"]
    a = run_module(argv)
    b = run_module(argv)
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["seed"] == 42
