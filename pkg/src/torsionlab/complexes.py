"""Bounded complexes of free Laurent-module chains with distinguished bases.

Everything downstream funnels through this module: homology as a torsion
module over Q(zeta)[t, t^-1] via Smith normal form, the Alexander invariant
as an alternating characteristic-polynomial product, torsion of a complex
that becomes acyclic over the rational-function field, dualization, and
specialization at t = 1.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import HypothesisError, InputError, InternalInvariantError
from .laurent import LaurentPoly, RatFunc, multiplicity_at_one
from .linalg import Matrix, det_field, det_laurent, pivot_columns, smith_normal_form
from .scalars import CycloNumber

_LZERO = LaurentPoly.zero()
_LONE = LaurentPoly.one()
_CONE = CycloNumber.from_rational(1)


def _default_labels(degree: int, rank: int) -> tuple[str, ...]:
    return tuple(f"c{degree}.{j}" for j in range(rank))


class BasedComplex:
    """A bounded complex of free modules with a chosen basis in each degree.

    ``ranks[j]`` is the rank in degree ``lo + j``.  ``boundaries[j]`` is the
    matrix of the map from degree ``lo + j + 1`` into degree ``lo + j``,
    written in the chosen bases with columns indexing the source.  The
    square-to-zero identity is verified exactly at construction.
    """

    __slots__ = ("lo", "ranks", "boundaries", "labels")

    def __init__(self, lo, ranks, boundaries, labels=None):
        ranks = tuple(int(r) for r in ranks)
        if not ranks:
            raise InputError("a based complex needs at least one degree")
        if any(r < 0 for r in ranks):
            raise InputError("ranks must be nonnegative")
        boundaries = tuple(boundaries)
        if len(boundaries) != len(ranks) - 1:
            raise InputError(
                f"{len(ranks)} degrees need {len(ranks) - 1} boundary maps, "
                f"got {len(boundaries)}")
        for j, b in enumerate(boundaries):
            if not isinstance(b, Matrix):
                raise InputError("boundary maps must be Matrix values")
            want = (ranks[j], ranks[j + 1])
            if b.shape != want:
                raise InputError(
                    f"boundary into degree {int(lo) + j} has shape {b.shape}, "
                    f"expected {want}")
        for j in range(len(boundaries) - 1):
            if not boundaries[j].mul(boundaries[j + 1], _LZERO).is_zero():
                raise InputError(
                    f"boundary maps out of degree {int(lo) + j + 2} do not "
                    "square to zero")
        if labels is None:
            labels = tuple(_default_labels(int(lo) + j, r)
                           for j, r in enumerate(ranks))
        else:
            labels = tuple(tuple(str(s) for s in per) for per in labels)
            if len(labels) != len(ranks):
                raise InputError("one label tuple per degree is required")
            for j, per in enumerate(labels):
                if len(per) != ranks[j]:
                    raise InputError(
                        f"degree {int(lo) + j} has {ranks[j]} generators but "
                        f"{len(per)} labels")
        object.__setattr__(self, "lo", int(lo))
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "boundaries", boundaries)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, *a):
        raise AttributeError("BasedComplex is immutable")

    @classmethod
    def from_single_matrix(cls, m: Matrix, lo: int = 0) -> "BasedComplex":
        """Two-term complex 0 -> source -> target -> 0 with the map ``m``."""
        return cls(lo, (m.nrows, m.ncols), (m,))

    @property
    def hi(self) -> int:
        return self.lo + len(self.ranks) - 1

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def rank(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self.ranks[i - self.lo]
        return 0

    def boundary(self, i: int) -> Matrix:
        """Matrix of the map out of degree ``i``; zero-shaped off the window."""
        if self.lo < i <= self.hi:
            return self.boundaries[i - self.lo - 1]
        return Matrix.zeros(self.rank(i - 1), self.rank(i), _LZERO)

    def labels_at(self, i: int) -> tuple[str, ...]:
        if self.lo <= i <= self.hi:
            return self.labels[i - self.lo]
        return ()

    def total_rank(self) -> int:
        return sum(self.ranks)

    def euler_characteristic(self) -> int:
        return sum(r if (self.lo + j) % 2 == 0 else -r
                   for j, r in enumerate(self.ranks))

    def direct_sum(self, other: "BasedComplex") -> "BasedComplex":
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        ranks = [self.rank(i) + other.rank(i) for i in range(lo, hi + 1)]
        boundaries = []
        for i in range(lo + 1, hi + 1):
            a, b = self.boundary(i), other.boundary(i)
            rows = []
            for r in range(a.nrows):
                rows.append(tuple(a.row(r)) + (_LZERO,) * b.ncols)
            for r in range(b.nrows):
                rows.append((_LZERO,) * a.ncols + tuple(b.row(r)))
            boundaries.append(Matrix(a.nrows + b.nrows, a.ncols + b.ncols, rows))
        labels = [self.labels_at(i) + other.labels_at(i)
                  for i in range(lo, hi + 1)]
        return BasedComplex(lo, ranks, boundaries, labels)

    def __eq__(self, other):
        if not isinstance(other, BasedComplex):
            return NotImplemented
        return (self.lo == other.lo and self.ranks == other.ranks
                and self.boundaries == other.boundaries
                and self.labels == other.labels)

    __hash__ = None

    def __repr__(self):
        return f"BasedComplex(degrees=[{self.lo}, {self.hi}], ranks={self.ranks})"


# -- homology ------------------------------------------------------------------


@dataclass(frozen=True)
class HomologyData:
    """Per-degree invariant factors and free ranks of the homology modules.

    Invariant factors are reported in divisibility order, stripped of unit
    factors (powers of t and scalars), and monic.
    """

    lo: int
    invariant_factors: tuple[tuple[LaurentPoly, ...], ...]
    free_ranks: tuple[int, ...]

    @property
    def hi(self) -> int:
        return self.lo + len(self.free_ranks) - 1

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def factors(self, i: int) -> tuple[LaurentPoly, ...]:
        if self.lo <= i <= self.hi:
            return self.invariant_factors[i - self.lo]
        return ()

    def free_rank(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self.free_ranks[i - self.lo]
        return 0

    def is_torsion(self) -> bool:
        return all(r == 0 for r in self.free_ranks)

    def first_nontorsion_degree(self) -> int | None:
        for i in self.degrees():
            if self.free_rank(i):
                return i
        return None

    def dimension(self, i: int) -> int | None:
        """Dimension over the coefficient field, or None when infinite."""
        if self.free_rank(i):
            return None
        return sum(f.max_exp for f in self.factors(i))

    def char_poly(self, i: int) -> LaurentPoly:
        """Characteristic polynomial of t acting on the torsion part."""
        out = _LONE
        for f in self.factors(i):
            out = out * f
        return out

    def order_at_one(self, i: int) -> int:
        """Total multiplicity of t = 1 across the invariant factors."""
        return sum(multiplicity_at_one(f.to_dense())[0] for f in self.factors(i))

    def max_power_of_t_minus_one(self, i: int) -> int:
        """Largest k with (t-1)^k dividing a single invariant factor."""
        best = 0
        for f in self.factors(i):
            best = max(best, multiplicity_at_one(f.to_dense())[0])
        return best


def _strip_unit(f: LaurentPoly) -> LaurentPoly:
    return f.shift(-f.min_exp)


def homology(c: BasedComplex) -> HomologyData:
    """Invariant-factor decomposition of every homology module.

    For each degree the kernel of the outgoing map is read off from the
    column transform of its Smith normal form, the incoming image is
    rewritten in that kernel basis, and a second Smith normal form of the
    resulting presentation gives the decomposition.
    """
    all_factors = []
    free = []
    for i in c.degrees():
        out = smith_normal_form(c.boundary(i))
        ker_idx = out.zero_column_indices()
        inc = c.boundary(i + 1)
        coords = out.Vinv.mul(inc, _LZERO)
        ker_set = set(ker_idx)
        for r in range(coords.nrows):
            if r not in ker_set and any(coords.row(r)):
                raise InternalInvariantError(
                    f"boundary image in degree {i} falls outside the kernel")
        pres = Matrix.from_rows([coords.row(r) for r in ker_idx],
                                ncols=inc.ncols)
        snf = smith_normal_form(pres)
        factors = []
        for f in snf.d:
            if not f:
                continue
            f = _strip_unit(f)
            if not f.is_one():
                factors.append(f)
        free.append(len(ker_idx) - snf.rank())
        all_factors.append(tuple(factors))
    return HomologyData(c.lo, tuple(all_factors), tuple(free))


def alexander_invariant(c: BasedComplex, convention: str = "chain") -> RatFunc:
    """Alternating product of the t-action characteristic polynomials.

    Even degrees contribute to the numerator.  The cochain convention
    returns the reciprocal of the chain value.
    """
    if convention not in ("chain", "cochain"):
        raise InputError(f"unknown convention {convention!r}")
    h = homology(c)
    bad = h.first_nontorsion_degree()
    if bad is not None:
        raise HypothesisError(
            f"homology in degree {bad} has free rank {h.free_rank(bad)}; "
            "the Alexander invariant needs torsion homology in every degree")
    value = RatFunc.one()
    for i in h.degrees():
        p = RatFunc.from_laurent(h.char_poly(i))
        value = value * p if i % 2 == 0 else value / p
    return value if convention == "chain" else value.inverse()


# -- torsion -------------------------------------------------------------------


@dataclass(frozen=True)
class TorsionCertificate:
    """Replayable record of the determinant blocks behind a torsion value.

    ``pivot_sets[j]`` lists the basis columns of degree ``lo + j`` whose
    boundary images were taken as the image basis one degree down.
    ``blocks[j]`` stacks unit rows for those columns on top of the incoming
    image rows; acyclicity makes each block square and nonsingular.
    """

    lo: int
    pivot_sets: tuple[tuple[int, ...], ...]
    blocks: tuple[Matrix, ...]

    def block_determinants(self) -> tuple[LaurentPoly, ...]:
        return tuple(det_laurent(b) for b in self.blocks)

    def replay(self) -> RatFunc:
        """Recompute the torsion value from the stored blocks alone."""
        num = _LONE
        den = _LONE
        for j, d in enumerate(self.block_determinants()):
            if d.is_zero():
                raise InternalInvariantError(
                    f"stored torsion block for degree {self.lo + j} is singular")
            if (self.lo + j) % 2 == 0:
                num = num * d
            else:
                den = den * d
        return RatFunc(num, den)


def _unit_row(n: int, p: int, zero, one) -> tuple:
    return tuple(one if j == p else zero for j in range(n))


def _torsion_blocks(lo, ranks, boundaries, field_boundaries, zero, one):
    """Pivot sets and square blocks realizing the torsion of the complex.

    ``boundaries[j]`` maps position j+1 to position j; ``field_boundaries``
    holds the same maps over a field, where ranks are decided.  Raises
    HypothesisError when some homology survives over that field.
    """
    n = len(ranks)
    pivots = [()]
    for j in range(1, n):
        pivots.append(tuple(pivot_columns(field_boundaries[j - 1])))
    pivots.append(())
    for j in range(n):
        if len(pivots[j]) + len(pivots[j + 1]) != ranks[j]:
            raise HypothesisError(
                f"complex is not acyclic over the coefficient field: homology "
                f"survives in degree {lo + j}")
    blocks = []
    for j in range(n):
        rows = [_unit_row(ranks[j], p, zero, one) for p in pivots[j]]
        if j + 1 < n:
            inc = boundaries[j]
            rows.extend(tuple(inc.column(q)) for q in pivots[j + 1])
        blocks.append(Matrix(ranks[j], ranks[j], rows))
    return tuple(pivots[:n]), tuple(blocks)


def reidemeister_torsion(c: BasedComplex) -> tuple[RatFunc, TorsionCertificate]:
    """Torsion of a complex that is acyclic over the rational-function field.

    Basis columns spanning each image are picked by deterministic greedy
    pivoting over K(t); the value is the alternating ratio of the block
    determinants, even degrees up.
    """
    field = [b.map(RatFunc.from_laurent) for b in c.boundaries]
    pivot_sets, blocks = _torsion_blocks(
        c.lo, c.ranks, c.boundaries, field, _LZERO, _LONE)
    cert = TorsionCertificate(c.lo, pivot_sets, blocks)
    return cert.replay(), cert


def difference_unit(c: BasedComplex) -> tuple[CycloNumber, int]:
    """Exact unit c, k with torsion = c * t^k * Alexander invariant."""
    tau, _ = reidemeister_torsion(c)
    alex = alexander_invariant(c, "chain")
    q = tau.unit_quotient(alex)
    if q is None:
        raise InternalInvariantError(
            "torsion and the Alexander invariant differ by a non-unit; "
            "one of the two computations is wrong")
    k, unit = q
    return unit, k

def difference_delta(c: BasedComplex, precision_bits: int = 128):
    """|c| and k for the unit c * t^k relating torsion to the invariant."""
    unit, k = difference_unit(c)
    return unit.abs_embed(precision_bits), k


# -- dualization ---------------------------------------------------------------


def _dual_label(s: str) -> str:
    return s[:-1] if s.endswith("*") else s + "*"


def dualize(c: BasedComplex) -> BasedComplex:
    """Conjugate-transposed complex, regraded so degree i lands in 1 - i.

    Entries are conjugated coefficientwise (t is left alone), matrices are
    transposed, and the window [lo, hi] reflects to [1 - hi, 1 - lo].
    Applying it twice returns the original complex, labels included.
    """
    n = len(c.ranks)
    ranks = tuple(reversed(c.ranks))
    boundaries = []
    for jj in range(n - 1):
        old = c.boundaries[n - 2 - jj]
        boundaries.append(old.transpose().map(lambda p: p.sigma()))
    labels = tuple(tuple(_dual_label(s) for s in c.labels[n - 1 - jj])
                   for jj in range(n))
    return BasedComplex(1 - c.hi, ranks, boundaries, labels)


# -- specialization at t = 1 -----------------------------------------------------


@dataclass(frozen=True)
class SpecializationResult:
    """Outcome of evaluating a complex at t = 1.

    When ``applicable`` is False the torsion comparison was skipped and
    ``blocking`` explains why, as (degree, reason) pairs.  Otherwise
    ``specialized_torsion`` is the torsion of the evaluated complex over
    the coefficient field and ``torsion_at_one`` the evaluation of the
    Laurent-side torsion, which must agree exactly.
    """

    lo: int
    ranks: tuple[int, ...]
    boundaries_at_one: tuple[Matrix, ...]
    applicable: bool
    blocking: tuple[tuple[int, str], ...]
    torsion_at_one: CycloNumber | None
    specialized_torsion: CycloNumber | None

    @property
    def torsion_matches(self) -> bool | None:
        if self.torsion_at_one is None or self.specialized_torsion is None:
            return None
        return self.torsion_at_one == self.specialized_torsion


def specialize_at_one(c: BasedComplex) -> SpecializationResult:
    """Evaluate the boundaries at t = 1 and compare torsions when allowed.

    The comparison runs only when homology is torsion and no invariant
    factor vanishes at t = 1; then the specialized complex is acyclic over
    the coefficient field and its torsion equals the Laurent torsion
    evaluated at 1, exactly.
    """
    h = homology(c)
    blocking = []
    for i in h.degrees():
        r = h.free_rank(i)
        if r:
            blocking.append((i, f"free rank {r}"))
            continue
        for f in h.factors(i):
            if multiplicity_at_one(f.to_dense())[0] > 0:
                blocking.append((i, f"t - 1 divides invariant factor "
                                    f"{f.to_literal()}"))
                break
    czero = CycloNumber.from_rational(0)
    at_one = tuple(b.map(lambda p: p.eval_at_one()) for b in c.boundaries)
    if blocking:
        return SpecializationResult(c.lo, c.ranks, at_one, False,
                                    tuple(blocking), None, None)
    tau, _ = reidemeister_torsion(c)
    tau_at_one = tau.evaluate(_CONE)
    try:
        _, blocks = _torsion_blocks(c.lo, c.ranks, at_one, at_one,
                                    czero, _CONE)
    except HypothesisError as exc:
        raise InternalInvariantError(
            "specialized complex fails to be acyclic although t = 1 avoids "
            f"every invariant factor: {exc}") from exc
    num = _CONE
    den = _CONE
    for j, m in enumerate(blocks):
        d = det_field(m, czero, _CONE)
        if d.is_zero():
            raise InternalInvariantError(
                f"specialized torsion block for degree {c.lo + j} is singular")
        if (c.lo + j) % 2 == 0:
            num = num * d
        else:
            den = den * d
    return SpecializationResult(c.lo, c.ranks, at_one, True, (),
                                tau_at_one, num / den)


# -- duality dimension report ----------------------------------------------------


@dataclass(frozen=True)
class DualityReport:
    """Cohomology dimensions of a low-dimensional complex and two verdicts.

    ``cohomology_dimensions[i]`` is dim H^i read from the dualized complex.
    ``pairing_holds`` asserts dim H^i = dim H^(2-i) for 0 <= i <= 2 and
    ``vanishing_holds`` asserts dim H^i = 0 for i >= 3.
    """

    applicable: bool
    reason: str
    cohomology_dimensions: tuple[int, ...]
    pairing_holds: bool | None
    vanishing_holds: bool | None


def duality_dimension_report(c: BasedComplex) -> DualityReport:
    """Check the dimension symmetry dim H^i = dim H^(2-i) through the dual.

    Applies to complexes supported in degrees [0, 3] with torsion homology;
    anything else is reported as not applicable rather than an error.
    """
    if c.lo != 0 or c.hi > 3:
        return DualityReport(
            False,
            f"complex lives in degrees [{c.lo}, {c.hi}], outside [0, 3]",
            (), None, None)
    hd = homology(dualize(c))
    dims = []
    for i in range(4):
        d = hd.dimension(1 - i)
        if d is None:
            return DualityReport(
                False,
                f"homology of the dual has a free summand in degree {1 - i}",
                (), None, None)
        dims.append(d)
    pairing = all(dims[i] == dims[2 - i] for i in range(3))
    vanishing = dims[3] == 0
    return DualityReport(True, "", tuple(dims), pairing, vanishing)
