"""Twisted chain complexes of deficiency-one group presentations.

The complex has three terms,

    0 -> L^((k-1)m) -> L^(km) -> L^m -> 0,

where k counts generators, m is the representation dimension and L is the
cyclotomic Laurent ring.  The middle boundary is assembled from Fox
derivatives of the relators, the last one from the generator images.  The
determinant ratio of a cofactor of the middle boundary over the matching
generator block is the twisted Alexander polynomial; the other exported
checks compare it against torsion and homology data of the same complex.

Matrix blocks are stored transposed relative to the row-vector picture so
that the composite of the two boundaries vanishes literally; determinants,
and hence every exported value, are unaffected.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .complexes import (BasedComplex, alexander_invariant, dualize, homology,
                        reidemeister_torsion, specialize_at_one)
from .errors import HypothesisError, InputError
from .foxcalc import (Augmentation, FreeWord, GroupRingElement, Presentation,
                      Representation, fox_derivative, phi)
from .laurent import LaurentPoly, RatFunc
from .linalg import Matrix, det_laurent, rank_field
from .scalars import CycloNumber

_LZERO = LaurentPoly.zero()
_CONE = CycloNumber.from_rational(1)


@dataclass(frozen=True)
class TwistedComplex:
    """The based complex together with the input data that produced it."""

    complex: BasedComplex
    presentation: Presentation
    representation: Representation
    augmentation: Augmentation

    @property
    def n_generators(self) -> int:
        return self.presentation.n_generators

    @property
    def dimension(self) -> int:
        return self.representation.dimension


def _generator_block(rho: Representation, eps: Augmentation, idx: int) -> Matrix:
    """Transposed image of x_idx - 1 under the Laurent matrix map."""
    x = GroupRingElement.from_word(FreeWord.generator(idx)) - GroupRingElement.one()
    return phi(x, rho, eps).transpose()


def build_twisted_complex(pres: Presentation, rho: Representation,
                          eps: Augmentation) -> TwistedComplex:
    if not pres.is_deficiency_one():
        raise HypothesisError(
            f"presentation has {len(pres.relators)} relators for "
            f"{pres.n_generators} generators; need deficiency one")
    rho.validate(pres)
    eps.validate(pres)
    k = pres.n_generators
    m = rho.dimension

    d1_blocks = [_generator_block(rho, eps, i) for i in range(k)]
    d1 = Matrix(m, k * m, [
        [d1_blocks[i].entry(a, b) for i in range(k) for b in range(m)]
        for a in range(m)])

    jac = pres.fox_jacobian()
    d2_rows = []
    for i in range(k):
        blocks = [phi(jac[i][alpha], rho, eps).transpose()
                  for alpha in range(len(pres.relators))]
        for a in range(m):
            d2_rows.append([blk.entry(a, b) for blk in blocks for b in range(m)])
    d2 = Matrix(k * m, (k - 1) * m, d2_rows)

    labels = (
        tuple(f"p(x)v{j + 1}" for j in range(m)),
        tuple(f"{g}(x)v{j + 1}" for g in pres.generators for j in range(m)),
        tuple(f"r{alpha + 1}(x)v{j + 1}"
              for alpha in range(len(pres.relators)) for j in range(m)),
    )
    cx = BasedComplex(0, (m, k * m, (k - 1) * m), (d1, d2), labels)
    return TwistedComplex(cx, pres, rho, eps)


@dataclass(frozen=True)
class TwistedAlexander:
    """Determinant ratio for one deleted generator block."""

    column: int
    numerator_det: LaurentPoly
    denominator_det: LaurentPoly
    value: RatFunc
    normalized: RatFunc
    unit_power: int
    unit_scalar: CycloNumber


def twisted_alexander(pres: Presentation, rho: Representation,
                      eps: Augmentation, column: int = 1,
                      tc: TwistedComplex | None = None) -> TwistedAlexander:
    if tc is None:
        tc = build_twisted_complex(pres, rho, eps)
    k = tc.n_generators
    m = tc.dimension
    if not 1 <= column <= k:
        raise InputError(f"column must be in 1..{k}, got {column}")
    d2 = tc.complex.boundary(2)
    keep = [r for r in range(k * m) if not (column - 1) * m <= r < column * m]
    cofactor = Matrix((k - 1) * m, (k - 1) * m,
                      [[d2.entry(r, c) for c in range((k - 1) * m)] for r in keep])
    num = det_laurent(cofactor)
    den = det_laurent(_generator_block(rho, eps, column - 1))
    if den.is_zero():
        raise HypothesisError(
            f"det of the x_{column} generator block vanishes; the twisted "
            "homology cannot be torsion")
    if num.is_zero():
        raise HypothesisError(
            f"det of the relator block with x_{column} deleted vanishes; "
            "the twisted homology is not torsion")
    value = RatFunc(num, den)
    normalized, power, scalar = value.unit_normalize()
    return TwistedAlexander(column, num, den, value, normalized, power, scalar)


@dataclass(frozen=True)
class ColumnIndependence:
    """Units relating each column's polynomial to the first one."""

    holds: bool
    units: tuple[tuple[int, int, CycloNumber], ...]  # (column, power, scalar)


def column_independence_check(pres: Presentation, rho: Representation,
                              eps: Augmentation) -> ColumnIndependence:
    tc = build_twisted_complex(pres, rho, eps)
    first = twisted_alexander(pres, rho, eps, 1, tc)
    units = []
    holds = True
    for j in range(1, tc.n_generators + 1):
        cur = twisted_alexander(pres, rho, eps, j, tc)
        rel = cur.value.unit_quotient(first.value)
        if rel is None:
            holds = False
            continue
        units.append((j, rel[0], rel[1]))
    return ColumnIndependence(holds, tuple(units))


@dataclass(frozen=True)
class DualTorsionCheck:
    """Torsion of the dualized complex against the inverse polynomial."""

    holds: bool
    torsion: RatFunc
    inverse_delta: RatFunc
    unit_power: int | None
    unit_scalar: CycloNumber | None


def dual_torsion_check(pres: Presentation, rho: Representation,
                       eps: Augmentation) -> DualTorsionCheck:
    tc = build_twisted_complex(pres, rho, eps)
    delta = twisted_alexander(pres, rho, eps, 1, tc)
    tau, _ = reidemeister_torsion(dualize(tc.complex))
    target = delta.value.inverse()
    rel = tau.unit_quotient(target)
    if rel is None:
        return DualTorsionCheck(False, tau, target, None, None)
    return DualTorsionCheck(True, tau, target, rel[0], rel[1])


@dataclass(frozen=True)
class OrderReport:
    """Vanishing orders at t = 1 against cohomology of the closed-up data."""

    applicable: bool
    reason: str | None
    ord_delta: int | None = None
    neg_ord_dual_invariant: int | None = None
    orders_match: bool | None = None
    cohomology_dims: tuple[int, int, int] | None = None
    dim_h1: int | None = None
    inequality_holds: bool | None = None
    semisimple_at_one: bool | None = None
    equality_holds: bool | None = None
    equality_matches_semisimplicity: bool | None = None
    all_cohomology_vanishes: bool | None = None
    abs_torsion_at_one: mpmath.mpf | None = None
    abs_inverse_delta_at_one: mpmath.mpf | None = None
    numeric_agreement: bool | None = None


def order_report(pres: Presentation, rho: Representation, eps: Augmentation,
                 precision_bits: int = 128) -> OrderReport:
    tc = build_twisted_complex(pres, rho, eps)
    h = homology(tc.complex)
    if h.factors(0) or h.free_rank(0):
        parts = [f.to_literal() for f in h.factors(0)]
        if h.free_rank(0):
            parts.append(f"free rank {h.free_rank(0)}")
        return OrderReport(
            False,
            "degree-0 homology of the infinite cyclic cover is nonzero "
            f"({', '.join(parts)})")

    delta = twisted_alexander(pres, rho, eps, 1, tc)
    ord_delta, _ = delta.value.order_and_leading_at_one()
    dual_inv = alexander_invariant(dualize(tc.complex), "chain")
    ord_dual, _ = dual_inv.order_and_leading_at_one()

    k, m = tc.n_generators, tc.dimension
    b1 = tc.complex.boundary(1).map(lambda f: f.eval_at_one())
    b2 = tc.complex.boundary(2).map(lambda f: f.eval_at_one())
    r1 = rank_field(b1)
    r2 = rank_field(b2)
    dims = (m - r1, k * m - r1 - r2, (k - 1) * m - r2)

    semisimple = h.max_power_of_t_minus_one(1) < 2
    report = OrderReport(
        True, None,
        ord_delta=ord_delta,
        neg_ord_dual_invariant=-ord_dual,
        orders_match=ord_delta == -ord_dual,
        cohomology_dims=dims,
        dim_h1=dims[1],
        inequality_holds=ord_delta >= dims[1],
        semisimple_at_one=semisimple,
        equality_holds=ord_delta == dims[1],
        equality_matches_semisimplicity=(ord_delta == dims[1]) == semisimple,
        all_cohomology_vanishes=dims == (0, 0, 0),
    )
    if dims != (0, 0, 0):
        return report

    spec = specialize_at_one(tc.complex)
    if not spec.applicable or spec.specialized_torsion is None:
        raise HypothesisError(
            "specialization at t = 1 blocked although every cohomology "
            f"group vanishes: {spec.blocking}")
    _, leading = delta.value.order_and_leading_at_one()
    abs_tau = spec.specialized_torsion.abs_embed(precision_bits)
    abs_inv = 1 / leading.abs_embed(precision_bits)
    with mpmath.workprec(precision_bits):
        agree = bool(
            mpmath.fabs(abs_tau - abs_inv)
            <= mpmath.mpf(10) ** -20 * max(abs_tau, abs_inv))
    return OrderReport(
        True, None,
        ord_delta=report.ord_delta,
        neg_ord_dual_invariant=report.neg_ord_dual_invariant,
        orders_match=report.orders_match,
        cohomology_dims=report.cohomology_dims,
        dim_h1=report.dim_h1,
        inequality_holds=report.inequality_holds,
        semisimple_at_one=report.semisimple_at_one,
        equality_holds=report.equality_holds,
        equality_matches_semisimplicity=report.equality_matches_semisimplicity,
        all_cohomology_vanishes=True,
        abs_torsion_at_one=abs_tau,
        abs_inverse_delta_at_one=abs_inv,
        numeric_agreement=agree,
    )
