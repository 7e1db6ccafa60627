"""Input files (TOML and CSV) and deterministic JSON rendering.

File layouts accepted by the loaders:

* presentation: ``generators = ["x", "y"]`` and ``relators = ["x y x Y X Y"]``
  (word syntax as in :func:`torsionlab.foxcalc.parse_word`), plus an optional
  ``[augmentation]`` table mapping each generator to an integer weight.
* representation: ``cyclotomic_order``, ``dimension``, and a ``[matrices]``
  table with one row-major matrix of cyclotomic literals per generator.
* monodromy: ``cyclotomic_order``, ``dimension``, ``matrix`` as rows of
  cyclotomic literals, and an optional ``h0_vanishes`` boolean.
* spectrum: CSV with a ``length,multiplicity,holonomy`` header where the
  holonomy field is ``charpoly:<polynomial>`` or ``matrix:<JSON rows>``.

JSON emitted by the ``*_to_json`` helpers is built from plain dicts, lists,
strings, ints, and bools only, so :func:`dump_json` (sorted keys, fixed
indentation) renders byte-identical output for equal values.
"""

from __future__ import annotations

import csv
import json
from decimal import Decimal, InvalidOperation
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - python < 3.11
    import tomli as tomllib

import mpmath

from .complexes import BasedComplex
from .errors import InputError
from .foxcalc import Augmentation, Presentation, Representation
from .laurent import LaurentPoly, RatFunc, parse_laurent
from .linalg import Matrix
from .mapping_torus import MonodromyInput
from .ruelle import LengthSpectrum, SpectrumEntry
from .scalars import parse_cyclo


def data_path(name: str) -> Path:
    """Path of a packaged sample input file."""
    return Path(__file__).with_name("data") / name


def _read_toml(path) -> dict:
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc.strerror or exc}") from exc
    try:
        return tomllib.loads(raw.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise InputError(f"{p} is not valid UTF-8: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"{p}: {exc}") from exc


def _get(data: dict, key: str, path) -> object:
    if key not in data:
        raise InputError(f"{path}: missing required key {key!r}")
    return data[key]


def _positive_int(data: dict, key: str, path) -> int:
    value = _get(data, key, path)
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise InputError(f"{path}: {key!r} must be a positive integer, got {value!r}")
    return value


def _string_rows(value, path, where: str) -> list:
    """Validate a TOML value as a non-empty list of lists of strings."""
    if (not isinstance(value, list) or not value
            or not all(isinstance(r, list) for r in value)):
        raise InputError(f"{path}: {where} must be a list of rows")
    for i, row in enumerate(value):
        for j, cell in enumerate(row):
            if not isinstance(cell, str):
                raise InputError(
                    f"{path}: {where}[{i}][{j}] must be a string literal, "
                    f"got {cell!r}")
    return value


def _parse_matrix(rows, order: int, path, where: str) -> Matrix:
    rows = _string_rows(rows, path, where)
    width = len(rows[0])
    parsed = []
    for i, row in enumerate(rows):
        if len(row) != width:
            raise InputError(
                f"{path}: {where} row {i} has {len(row)} entries, expected {width}")
        out = []
        for j, cell in enumerate(row):
            try:
                out.append(parse_cyclo(cell, order))
            except InputError as exc:
                raise InputError(f"{path}: {where}[{i}][{j}]: {exc}") from exc
        parsed.append(out)
    return Matrix(len(parsed), width, parsed)


def load_presentation(path) -> tuple[Presentation, Augmentation | None]:
    """Read a group presentation, and its augmentation when one is given."""
    data = _read_toml(path)
    gens = _get(data, "generators", path)
    if (not isinstance(gens, list) or not gens
            or not all(isinstance(g, str) for g in gens)):
        raise InputError(f"{path}: 'generators' must be a non-empty list of names")
    relators = _get(data, "relators", path)
    if not isinstance(relators, list) or not all(isinstance(r, str) for r in relators):
        raise InputError(f"{path}: 'relators' must be a list of words")
    try:
        pres = Presentation(tuple(gens), relators)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc

    aug = None
    if "augmentation" in data:
        table = data["augmentation"]
        if not isinstance(table, dict):
            raise InputError(f"{path}: [augmentation] must be a table")
        unknown = sorted(set(table) - set(gens))
        if unknown:
            raise InputError(
                f"{path}: [augmentation] names unknown generators {unknown}")
        values = []
        for g in gens:
            if g not in table:
                raise InputError(
                    f"{path}: [augmentation] is missing generator {g!r}")
            v = table[g]
            if not isinstance(v, int) or isinstance(v, bool):
                raise InputError(
                    f"{path}: augmentation weight of {g!r} must be an integer")
            values.append(v)
        aug = Augmentation(values)
        aug.validate(pres)
    return pres, aug


def load_representation(path, generators) -> Representation:
    """Read a unitary representation keyed by generator name."""
    data = _read_toml(path)
    order = _positive_int(data, "cyclotomic_order", path)
    dim = _positive_int(data, "dimension", path)
    table = _get(data, "matrices", path)
    if not isinstance(table, dict):
        raise InputError(f"{path}: [matrices] must be a table of generator matrices")
    names = list(generators)
    unknown = sorted(set(table) - set(names))
    if unknown:
        raise InputError(f"{path}: [matrices] names unknown generators {unknown}")
    mats = []
    for name in names:
        if name not in table:
            raise InputError(f"{path}: no matrix for generator {name!r}")
        m = _parse_matrix(table[name], order, path, f"matrices.{name}")
        if m.shape != (dim, dim):
            raise InputError(
                f"{path}: matrices.{name} is {m.nrows}x{m.ncols}, "
                f"expected {dim}x{dim}")
        mats.append(m)
    try:
        return Representation(dim, order, tuple(mats))
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_monodromy(path) -> MonodromyInput:
    """Read a monodromy matrix file."""
    data = _read_toml(path)
    order = _positive_int(data, "cyclotomic_order", path)
    dim = _positive_int(data, "dimension", path)
    m = _parse_matrix(_get(data, "matrix", path), order, path, "matrix")
    h0 = data.get("h0_vanishes", False)
    if not isinstance(h0, bool):
        raise InputError(f"{path}: 'h0_vanishes' must be a boolean")
    try:
        return MonodromyInput(dim, order, m, h0)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc


_SPECTRUM_COLUMNS = ("length", "multiplicity", "holonomy")


def load_spectrum(path, zeta_order: int = 1) -> LengthSpectrum:
    """Read a geodesic length spectrum from CSV."""
    p = Path(path)
    try:
        fh = open(p, newline="", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc.strerror or exc}") from exc
    entries = []
    with fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise InputError(f"{p}: empty spectrum file")
        missing = [c for c in _SPECTRUM_COLUMNS if c not in reader.fieldnames]
        if missing:
            raise InputError(f"{p}: header is missing columns {missing}")
        for lineno, row in enumerate(reader, start=2):
            entries.append(_spectrum_entry(row, zeta_order, p, lineno))
    try:
        return LengthSpectrum(entries)
    except InputError as exc:
        raise InputError(f"{p}: {exc}") from exc


def _spectrum_entry(row: dict, zeta_order: int, path, lineno: int) -> SpectrumEntry:
    raw_len = (row.get("length") or "").strip()
    try:
        length = Decimal(raw_len)
    except InvalidOperation:
        raise InputError(f"{path}, line {lineno}: bad length {raw_len!r}") from None
    raw_mult = (row.get("multiplicity") or "").strip()
    try:
        mult = int(raw_mult)
    except ValueError:
        raise InputError(
            f"{path}, line {lineno}: bad multiplicity {raw_mult!r}") from None
    hol = (row.get("holonomy") or "").strip()
    try:
        if hol.startswith("charpoly:"):
            poly = parse_laurent(hol[len("charpoly:"):], zeta_order)
            return SpectrumEntry(length, mult, charpoly=poly)
        if hol.startswith("matrix:"):
            m = _holonomy_matrix(hol[len("matrix:"):], zeta_order)
            return SpectrumEntry(length, mult, matrix=m)
    except InputError as exc:
        raise InputError(f"{path}, line {lineno}: {exc}") from exc
    raise InputError(
        f"{path}, line {lineno}: holonomy must start with 'charpoly:' or "
        f"'matrix:', got {hol!r}")


def _holonomy_matrix(text: str, zeta_order: int) -> Matrix:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"holonomy matrix is not valid JSON: {exc}") from exc
    if (not isinstance(rows, list) or not rows
            or not all(isinstance(r, list) for r in rows)):
        raise InputError("holonomy matrix must be a JSON list of rows")
    n = len(rows)
    parsed = []
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InputError(f"holonomy matrix row {i} has {len(row)} entries, "
                             f"expected {n}")
        out = []
        for j, cell in enumerate(row):
            if not isinstance(cell, str):
                raise InputError(f"holonomy matrix entry [{i}][{j}] must be a "
                                 f"string literal")
            out.append(parse_cyclo(cell, zeta_order))
        parsed.append(out)
    return Matrix(n, n, parsed)


# ---------------------------------------------------------------------------
# JSON rendering


def poly_to_json(p: LaurentPoly) -> dict:
    return {
        "min_exp": p.min_exp if p.coeffs else 0,
        "coeffs": [c.to_literal() for c in p.coeffs],
        "cyclotomic_order": p.zeta_order(),
    }


def ratfunc_to_json(f: RatFunc) -> dict:
    return {"numerator": poly_to_json(f.num), "denominator": poly_to_json(f.den)}


def matrix_to_json(m: Matrix) -> dict:
    return {
        "nrows": m.nrows,
        "ncols": m.ncols,
        "entries": [[x.to_literal() for x in row] for row in m.rows],
    }


def complex_to_json(c: BasedComplex) -> dict:
    return {
        "lo": c.lo,
        "ranks": list(c.ranks),
        "boundaries": [matrix_to_json(b) for b in c.boundaries],
        "labels": [list(per) for per in c.labels],
    }


def number_to_json(x):
    """Render an mpmath value as decimal strings (complex as re/im pair)."""
    if x is None:
        return None
    if isinstance(x, mpmath.mpc):
        return {"re": mpmath.nstr(x.real, 30), "im": mpmath.nstr(x.imag, 30)}
    return mpmath.nstr(mpmath.mpf(x), 30)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
