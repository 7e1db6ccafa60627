"""Torsion and Alexander data of a mapping torus from its monodromy matrix.

Input is the action F of the monodromy on a middle cohomology group, as an
exact square matrix over a cyclotomic field, plus a provenance flag
asserting that the degree-0 group of the fiber vanishes.  From F alone we
get the kernel dimension beta at eigenvalue 1, the torsion
|det((F - 1) restricted to the quotient by that kernel)|^-1, and the
invariant 1/det(t - F), whose vanishing order at t = 1 the order report
compares with -beta.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .errors import HypothesisError, InputError, InternalInvariantError
from .laurent import (LaurentPoly, RatFunc, is_squarefree_dense,
                      multiplicity_at_one)
from .linalg import (Matrix, charpoly, det_field, invert_field, kernel_basis_field,
                     smith_normal_form)
from .scalars import CycloNumber

_CZERO = CycloNumber.from_rational(0)
_CONE = CycloNumber.from_rational(1)


@dataclass(frozen=True)
class MonodromyInput:
    """Exact monodromy matrix with its standing-hypothesis flag."""

    dimension: int
    order: int
    matrix: Matrix
    h0_vanishes: bool

    def __post_init__(self):
        if self.dimension < 0:
            raise InputError("dimension must be nonnegative")
        if self.order < 1:
            raise InputError("cyclotomic order must be positive")
        if self.matrix.shape != (self.dimension, self.dimension):
            raise InputError(
                f"monodromy matrix must be {self.dimension}x{self.dimension}, "
                f"got {self.matrix.nrows}x{self.matrix.ncols}")


def _minus_identity(f: Matrix) -> Matrix:
    return Matrix(f.nrows, f.ncols, [
        [f.entry(i, j) - (_CONE if i == j else _CZERO) for j in range(f.ncols)]
        for i in range(f.nrows)])


@dataclass(frozen=True)
class QuotientData:
    """The quotient by Ker(F - 1) with the two maps F induces on it."""

    beta: int
    i_dim: int
    induced: Matrix            # F on the quotient; always invertible
    induced_minus_one: Matrix  # F - 1 on the quotient; singular iff a
                               # generalized 1-eigenvector survives


def quotient_I(f: Matrix) -> QuotientData:
    if f.nrows != f.ncols:
        raise InputError("monodromy matrix must be square")
    n = f.nrows
    fm1 = _minus_identity(f)
    kernel = kernel_basis_field(fm1, _CZERO, _CONE)
    beta = len(kernel)

    # Echelonize the kernel to find which coordinates it pins down; the
    # remaining coordinates carry the quotient.
    rows = [list(v) for v in kernel]
    pivots = []
    r = 0
    for col in range(n):
        sel = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [v - c * w for v, w in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [j for j in range(n) if j not in pivots]

    def project(column):
        vec = list(column)
        for row, p in zip(rows, pivots):
            if vec[p]:
                c = vec[p]
                vec = [v - c * w for v, w in zip(vec, row)]
        return [vec[j] for j in free]

    cols_f = [project([f.entry(i, j) for i in range(n)]) for j in free]
    cols_fm1 = [project([fm1.entry(i, j) for i in range(n)]) for j in free]
    i_dim = len(free)
    induced = Matrix(i_dim, i_dim,
                     [[cols_f[c][r] for c in range(i_dim)] for r in range(i_dim)])
    induced_m1 = Matrix(i_dim, i_dim,
                        [[cols_fm1[c][r] for c in range(i_dim)] for r in range(i_dim)])
    if i_dim and invert_field(induced, _CZERO, _CONE) is None:
        raise InternalInvariantError(
            "the monodromy induces a singular map on the quotient by its "
            "fixed space; the input matrix cannot be a monodromy")
    return QuotientData(beta, i_dim, induced, induced_m1)


def _dense_charpoly(f: Matrix) -> list:
    cp = charpoly(f)
    dense = [_CZERO] * cp.min_exp + list(cp.coeffs)
    return dense


def is_globally_semisimple(f: Matrix) -> bool:
    """Squarefree minimal polynomial, read off the largest invariant factor."""
    if f.nrows == 0:
        return True
    tf = t_minus_f(f)
    snf = smith_normal_form(tf)
    minimal = snf.d[-1]
    dense = [_CZERO] * minimal.min_exp + list(minimal.coeffs)
    return is_squarefree_dense(dense)


def is_semisimple_at_one(f: Matrix) -> bool:
    """No invariant factor of tI - F divisible by (t - 1) squared."""
    if f.nrows == 0:
        return True
    snf = smith_normal_form(t_minus_f(f))
    for d in snf.d:
        if d.is_zero():
            raise InternalInvariantError("tI - F cannot be singular over K(t)")
        dense = [_CZERO] * d.min_exp + list(d.coeffs)
        if multiplicity_at_one(dense)[0] >= 2:
            return False
    return True


def t_minus_f(f: Matrix) -> Matrix:
    t = LaurentPoly.t_power(1, 1)
    return Matrix(f.nrows, f.ncols, [
        [t - LaurentPoly.constant(f.entry(i, j)) if i == j
         else LaurentPoly.constant(-f.entry(i, j))
         for j in range(f.ncols)]
        for i in range(f.nrows)])


@dataclass(frozen=True)
class MonodromyTorsion:
    """|det((F-1) on the quotient)|^-1 with its exactness provenance."""

    value: mpmath.mpf
    determinant: CycloNumber
    beta: int
    i_dim: int
    globally_semisimple: bool
    outside_hypothesis: bool


def torsion_from_monodromy(f: Matrix,
                           precision_bits: int = 128) -> MonodromyTorsion:
    q = quotient_I(f)
    det = det_field(q.induced_minus_one, _CZERO, _CONE)
    semisimple = is_globally_semisimple(f)
    if det.is_zero():
        if is_semisimple_at_one(f):
            raise InternalInvariantError(
                "det((F-1)|_I) = 0 although F is semisimple at eigenvalue 1")
        value = mpmath.inf
    else:
        with mpmath.workprec(precision_bits):
            value = 1 / det.abs_embed(precision_bits)
    return MonodromyTorsion(value, det, q.beta, q.i_dim, semisimple,
                            not semisimple)


def alexander_from_monodromy(f: Matrix) -> RatFunc:
    """1/det(t - F), unit-normalized."""
    inv = RatFunc(LaurentPoly.one(), charpoly(f))
    return inv.unit_normalize()[0]


@dataclass(frozen=True)
class MonodromyOrderReport:
    """Order of 1/det(t - F) at t = 1 against the fixed-space dimension."""

    beta: int
    i_dim: int
    ord_invariant: int
    neg_beta: int
    orders_equal: bool
    strict_inequality: bool
    semisimple_at_one: bool
    globally_semisimple: bool
    equality_matches_semisimplicity: bool
    limit_checked: bool
    limit_value: mpmath.mpf | None = None
    torsion_value: mpmath.mpf | None = None
    limit_agrees: bool | None = None


def monodromy_order_report(mono: MonodromyInput,
                           precision_bits: int = 128) -> MonodromyOrderReport:
    if not mono.h0_vanishes:
        raise HypothesisError(
            "order report needs the standing hypothesis h0_vanishes = true; "
            "the input file does not assert it")
    f = mono.matrix
    q = quotient_I(f)
    dense = _dense_charpoly(f)
    algebraic, reduced = multiplicity_at_one(dense)
    ord_invariant = -algebraic
    ss_at_one = is_semisimple_at_one(f)
    globally = is_globally_semisimple(f)
    orders_equal = ord_invariant == -q.beta
    report = MonodromyOrderReport(
        beta=q.beta,
        i_dim=q.i_dim,
        ord_invariant=ord_invariant,
        neg_beta=-q.beta,
        orders_equal=orders_equal,
        strict_inequality=ord_invariant < -q.beta,
        semisimple_at_one=ss_at_one,
        globally_semisimple=globally,
        equality_matches_semisimplicity=orders_equal == ss_at_one,
        limit_checked=ss_at_one,
    )
    if not ss_at_one:
        return report

    # charpoly = (t-1)^beta * q(t) with q(1) != 0; the limit of
    # |(t-1)^beta / charpoly| at t = 1 is 1/|q(1)|.
    q_at_one = LaurentPoly(reduced, 0).eval_at_one()
    if q_at_one.is_zero():
        raise InternalInvariantError(
            "reduced characteristic polynomial vanishes at 1 after removing "
            "the full (t-1) power")
    torsion = torsion_from_monodromy(f, precision_bits)
    with mpmath.workprec(precision_bits):
        limit = 1 / q_at_one.abs_embed(precision_bits)
        tol = mpmath.mpf(10) ** -20
        agrees = bool(mpmath.fabs(limit - torsion.value)
                      <= tol * max(limit, torsion.value))
    return MonodromyOrderReport(
        beta=report.beta,
        i_dim=report.i_dim,
        ord_invariant=report.ord_invariant,
        neg_beta=report.neg_beta,
        orders_equal=report.orders_equal,
        strict_inequality=report.strict_inequality,
        semisimple_at_one=report.semisimple_at_one,
        globally_semisimple=report.globally_semisimple,
        equality_matches_semisimplicity=report.equality_matches_semisimplicity,
        limit_checked=True,
        limit_value=limit,
        torsion_value=torsion.value,
        limit_agrees=agrees,
    )
