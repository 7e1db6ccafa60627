"""Order and leading-constant predictions at s = 0 for dynamical L-products.

Everything here is computed on the topological side; the module never
evaluates the L-function at s = 0 itself.  The truncated evaluator exists
only as a sanity check on spectrum data in the region where the defining
product converges, and its output says which factor was included last so
the caller can judge the truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, InvalidOperation

import mpmath

from .errors import HypothesisError, InputError
from .knots import order_report
from .laurent import LaurentPoly
from .linalg import Matrix
from .mapping_torus import MonodromyInput, monodromy_order_report
from .scalars import CycloNumber

_CZERO = CycloNumber.from_rational(0)


def predict_order(h0: int, h1: int) -> int:
    """Vanishing order at s = 0 from the two cohomology dimensions."""
    if h0 < 0 or h1 < 0:
        raise InputError("cohomology dimensions must be nonnegative")
    return 4 * h0 - 2 * h1


def predict_leading_from_torsion(abs_torsion,
                                 precision_bits: int = 128) -> mpmath.mpf:
    """Leading coefficient magnitude: the squared torsion."""
    with mpmath.workprec(precision_bits):
        value = mpmath.mpf(abs_torsion)
        if not value > 0:
            raise InputError("torsion magnitude must be positive")
        return value * value


def predict_R0_from_alexander(delta_abs, a_at_one_abs,
                              precision_bits: int = 128) -> mpmath.mpf:
    """|R(0)| from the correction factor and the invariant evaluated at 1."""
    with mpmath.workprec(precision_bits):
        d = mpmath.mpf(delta_abs)
        a = mpmath.mpf(a_at_one_abs)
        if not (d > 0 and a > 0):
            raise InputError("both factors must be positive")
        return (d * a) ** 2


@dataclass(frozen=True)
class RuellePrediction:
    """Predicted order (always even) and leading magnitude when available."""

    order: int
    leading_abs: mpmath.mpf | None
    provenance: str


def prediction_from_monodromy(mono: MonodromyInput,
                              precision_bits: int = 128) -> RuellePrediction:
    report = monodromy_order_report(mono, precision_bits)
    order = predict_order(0, report.beta)
    if not report.semisimple_at_one or report.limit_value is None:
        return RuellePrediction(
            order, None,
            "order from the monodromy fixed space; leading constant skipped "
            "because the monodromy is not semisimple at eigenvalue 1")
    with mpmath.workprec(precision_bits):
        leading = report.limit_value ** 2
    return RuellePrediction(
        order, leading,
        "order from the monodromy fixed space; leading constant is the "
        "squared limit of |(t-1)^beta / det(t - F)| at t = 1")


def prediction_from_knot(pres, rho, eps,
                         precision_bits: int = 128) -> RuellePrediction:
    report = order_report(pres, rho, eps, precision_bits)
    if not report.applicable:
        raise HypothesisError(report.reason)
    h0, h1, _ = report.cohomology_dims
    order = predict_order(h0, h1)
    if not report.all_cohomology_vanishes:
        return RuellePrediction(
            order, None,
            "order from specialized cohomology dimensions; leading constant "
            "skipped because the twisted cohomology does not vanish")
    leading = predict_leading_from_torsion(report.abs_torsion_at_one,
                                           precision_bits)
    return RuellePrediction(
        order, leading,
        "order from specialized cohomology dimensions; leading constant is "
        "the squared torsion of the specialized complex")


# -- length spectra and the truncated product ----------------------------------------


@dataclass(frozen=True)
class SpectrumEntry:
    """One prime geodesic: length (as the literal decimal), multiplicity,
    and the holonomy, given by characteristic polynomial or by matrix."""

    length: Decimal
    multiplicity: int
    charpoly: LaurentPoly | None = None
    matrix: Matrix | None = None

    def __post_init__(self):
        if self.length <= 0:
            raise InputError(f"geodesic length must be positive, got {self.length}")
        if self.multiplicity < 1:
            raise InputError("multiplicity must be a positive integer")
        if (self.charpoly is None) == (self.matrix is None):
            raise InputError("exactly one of charpoly or matrix per entry")
        if self.charpoly is not None:
            if self.charpoly.min_exp < 0 or self.charpoly.is_zero():
                raise InputError("holonomy charpoly must be a nonzero polynomial")
        if self.matrix is not None and self.matrix.nrows != self.matrix.ncols:
            raise InputError("holonomy matrix must be square")


class LengthSpectrum:
    """Ascending prime-geodesic data for the truncated product."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        entries = tuple(entries)
        for prev, cur in zip(entries, entries[1:]):
            if cur.length <= prev.length:
                raise InputError(
                    f"lengths must be strictly ascending; {cur.length} follows "
                    f"{prev.length}")
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *a):
        raise AttributeError("LengthSpectrum is immutable")

    def __len__(self):
        return len(self.entries)

    def truncate(self, max_length) -> tuple[SpectrumEntry, ...]:
        try:
            cutoff = Decimal(str(max_length))
        except InvalidOperation:
            raise InputError(f"bad max length {max_length!r}") from None
        return tuple(e for e in self.entries if e.length <= cutoff)


@dataclass(frozen=True)
class TruncatedProduct:
    value: mpmath.mpc
    terms_used: int
    last_factor_deviation: mpmath.mpf


def _factor(entry: SpectrumEntry, x: mpmath.mpc, precision_bits: int) -> mpmath.mpc:
    """det(1 - holonomy * x), from the matrix or from its charpoly."""
    if entry.matrix is not None:
        n = entry.matrix.nrows
        a = mpmath.zeros(n)
        for i in range(n):
            for j in range(n):
                a[i, j] = -x * entry.matrix.entry(i, j).embed(precision_bits)
            a[i, i] += 1
        return mpmath.det(a)
    dense = [_CZERO] * entry.charpoly.min_exp + list(entry.charpoly.coeffs)
    m = len(dense) - 1
    lead = dense[-1].embed(precision_bits)
    total = mpmath.mpc(0)
    for i, c in enumerate(dense):
        if not c.is_zero():
            total += c.embed(precision_bits) * x ** (m - i)
    return total / lead


def evaluate_truncated(spectrum: LengthSpectrum, s, max_length,
                       precision_bits: int = 128) -> TruncatedProduct:
    """Partial product of det(1 - rho(gamma) e^(-s l)) over lengths <= cutoff.

    This is a convergence-region diagnostic only; it says nothing about the
    value at s = 0.
    """
    chosen = spectrum.truncate(max_length)
    if not chosen:
        raise InputError(
            f"no spectrum entries with length <= {max_length}; nothing to "
            "evaluate")
    with mpmath.workprec(precision_bits):
        s = mpmath.mpc(s)
        total = mpmath.mpc(1)
        last = mpmath.mpc(1)
        for entry in chosen:
            ell = mpmath.mpf(str(entry.length))
            x = mpmath.exp(-s * ell)
            last = _factor(entry, x, precision_bits)
            total *= last ** entry.multiplicity
        deviation = mpmath.fabs(last - 1)
    return TruncatedProduct(total, len(chosen), deviation)
