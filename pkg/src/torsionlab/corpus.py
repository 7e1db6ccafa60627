"""Seeded random inputs for the verification harness and the test suite.

Random complexes are assembled from two-term elementary pieces joined by
direct sum, then dressed with unimodular base changes.  That way the
square-to-zero law and torsion homology hold by construction; nothing is
rejection-sampled.  Monodromy matrices are built the same way, by
conjugating a chosen eigenvalue structure with a product of elementary
matrices whose inverse is tracked alongside.
"""

from __future__ import annotations

import random

from .complexes import BasedComplex
from .laurent import LaurentPoly
from .linalg import Matrix
from .scalars import CycloNumber, rational

_LZERO = LaurentPoly.zero()
_LONE = LaurentPoly.one()
_CZERO = CycloNumber.from_rational(0)
_CONE = CycloNumber.from_rational(1)

_ZETA_ORDERS = (3, 4, 5, 6, 8, 12)
_SCALAR_NUMS = (1, -1, 2, -2, 3, 5)
_SCALAR_DENS = (1, 1, 1, 2, 3)


def _random_rational(rng: random.Random) -> CycloNumber:
    return CycloNumber.from_rational(
        rational(rng.choice(_SCALAR_NUMS), rng.choice(_SCALAR_DENS)))


def _random_entry_scalar(rng: random.Random) -> CycloNumber:
    """Scalar for matrix entries; occasionally a root of unity."""
    if rng.random() < 0.25:
        n = rng.choice(_ZETA_ORDERS)
        return CycloNumber.zeta(n, rng.randrange(1, n))
    return _random_rational(rng)


def random_unit(rng: random.Random) -> LaurentPoly:
    """A unit of the Laurent ring: nonzero scalar times a power of t."""
    return LaurentPoly.t_power(rng.randint(-1, 1), _random_rational(rng))


def random_torsion_factor(rng: random.Random,
                          allow_t_minus_one: bool = False) -> LaurentPoly:
    """A non-unit polynomial whose monic form is fixed by conjugation.

    Degree is 1 or 2: either t - r with rational r, or the real quadratic
    (t - zeta)(t - conj zeta) for a root of unity zeta.  A unit factor is
    mixed in so that the corpus exercises nontrivial differences.
    """
    roll = rng.random()
    if allow_t_minus_one and roll < 0.3:
        base = LaurentPoly.t_minus_one()
    elif roll < 0.6:
        r = 0
        while r == 0 or (r == 1 and not allow_t_minus_one):
            r = rational(rng.choice(_SCALAR_NUMS), rng.choice(_SCALAR_DENS))
        base = LaurentPoly((CycloNumber.from_rational(-r), _CONE))
    else:
        n = rng.choice(_ZETA_ORDERS)
        z = CycloNumber.zeta(n, rng.randrange(1, n))
        base = LaurentPoly((_CONE, -(z + z.conjugate()), _CONE))
    if rng.random() < 0.4:
        base = base * random_unit(rng)
    return base


def _transvection(rng: random.Random, n: int) -> tuple[Matrix, Matrix]:
    p = rng.randrange(n)
    q = rng.randrange(n)
    while q == p:
        q = rng.randrange(n)
    f = LaurentPoly.t_power(rng.randint(-1, 1), _random_entry_scalar(rng))
    rows = [[_LONE if i == j else _LZERO for j in range(n)] for i in range(n)]
    inv = [list(r) for r in rows]
    rows[p][q] = f
    inv[p][q] = -f
    return Matrix(n, n, rows), Matrix(n, n, inv)


def _swap_matrix(n: int, p: int, q: int) -> Matrix:
    rows = [[_LONE if i == j else _LZERO for j in range(n)] for i in range(n)]
    rows[p][p] = rows[q][q] = _LZERO
    rows[p][q] = rows[q][p] = _LONE
    return Matrix(n, n, rows)


def _scaling(rng: random.Random, n: int) -> tuple[Matrix, Matrix]:
    p = rng.randrange(n)
    c = _random_rational(rng)
    k = rng.randint(-1, 1)
    rows = [[_LONE if i == j else _LZERO for j in range(n)] for i in range(n)]
    inv = [list(r) for r in rows]
    rows[p][p] = LaurentPoly.t_power(k, c)
    inv[p][p] = LaurentPoly.t_power(-k, c.inverse())
    return Matrix(n, n, rows), Matrix(n, n, inv)


def _random_base_change(rng: random.Random, n: int) -> tuple[Matrix, Matrix]:
    roll = rng.random()
    if n >= 2 and roll < 0.55:
        return _transvection(rng, n)
    if n >= 2 and roll < 0.75:
        p = rng.randrange(n)
        q = rng.randrange(n)
        while q == p:
            q = rng.randrange(n)
        s = _swap_matrix(n, p, q)
        return s, s
    return _scaling(rng, n)


def random_complex(rng: random.Random,
                   max_length: int = 4,
                   max_rank: int = 5,
                   allow_t_minus_one: bool = False,
                   include_free: bool = False,
                   base_changes: int | None = None) -> BasedComplex:
    """A based complex with torsion homology (free pieces only on request).

    Elementary two-term pieces with random non-unit factors are summed,
    occasionally together with an acyclic unit piece, and the result is
    conjugated by random unimodular base changes degree by degree.
    """
    length = rng.randint(2, max(2, max_length))
    lo = rng.randint(-1, 1)
    total = None
    counts = [0] * length
    for pos in range(length - 1):
        for _ in range(rng.randint(0, 2)):
            if counts[pos] >= max_rank or counts[pos + 1] >= max_rank:
                break
            if rng.random() < 0.2:
                f = random_unit(rng)
            else:
                f = random_torsion_factor(rng, allow_t_minus_one)
            piece = BasedComplex(lo + pos, (1, 1), (Matrix(1, 1, [[f]]),))
            total = piece if total is None else total.direct_sum(piece)
            counts[pos] += 1
            counts[pos + 1] += 1
    if total is None:
        f = random_torsion_factor(rng, allow_t_minus_one)
        total = BasedComplex(lo, (1, 1), (Matrix(1, 1, [[f]]),))
    if include_free and rng.random() < 0.5:
        pos = rng.randrange(length)
        if counts[pos] < max_rank:
            total = total.direct_sum(BasedComplex(lo + pos, (1,), ()))
    ranks = list(total.ranks)
    boundaries = list(total.boundaries)
    n_ops = rng.randint(2, 6) if base_changes is None else base_changes
    for _ in range(n_ops):
        j = rng.randrange(len(ranks))
        if ranks[j] == 0:
            continue
        g, ginv = _random_base_change(rng, ranks[j])
        if j >= 1:
            boundaries[j - 1] = boundaries[j - 1].mul(g, _LZERO)
        if j < len(boundaries):
            boundaries[j] = ginv.mul(boundaries[j], _LZERO)
    return BasedComplex(total.lo, ranks, boundaries, total.labels)


def random_corpus(seed: int, count: int, **kwargs) -> list[BasedComplex]:
    rng = random.Random(seed)
    return [random_complex(rng, **kwargs) for _ in range(count)]


# -- monodromy matrices ----------------------------------------------------------


_EIGENVALUE_POOL = (2, -1, 3, -2)


def _random_eigenvalue(rng: random.Random) -> CycloNumber:
    """A nonzero eigenvalue different from 1."""
    if rng.random() < 0.4:
        n = rng.choice(_ZETA_ORDERS)
        return CycloNumber.zeta(n, rng.randrange(1, n))
    if rng.random() < 0.5:
        return CycloNumber.from_rational(rng.choice(_EIGENVALUE_POOL))
    return CycloNumber.from_rational(rational(1, rng.choice((2, 3))))


def _conjugating_pair(rng: random.Random, dim: int) -> tuple[Matrix, Matrix]:
    """Invertible P with its exact inverse, built from elementary factors."""
    p = Matrix.identity(dim, _CONE, _CZERO)
    pinv = Matrix.identity(dim, _CONE, _CZERO)
    for _ in range(2 * dim):
        i = rng.randrange(dim)
        j = rng.randrange(dim)
        if i == j:
            continue
        c = _random_entry_scalar(rng)
        rows = [[_CONE if a == b else _CZERO for b in range(dim)]
                for a in range(dim)]
        inv = [list(r) for r in rows]
        rows[i][j] = c
        inv[i][j] = -c
        e = Matrix(dim, dim, rows)
        einv = Matrix(dim, dim, inv)
        p = p.mul(e, _CZERO)
        pinv = einv.mul(pinv, _CZERO)
    return p, pinv


def random_monodromy(rng: random.Random, dim: int, ones: int = 0,
                     kind: str = "semisimple") -> Matrix:
    """Invertible matrix with controlled eigenvalue-1 structure.

    ``ones`` counts eigenvalue-1 slots.  With kind="jordan_at_one" two of
    them are welded into a single nontrivial Jordan block, so the action is
    invertible but not semisimple at 1 (requires ones >= 2).
    """
    if ones > dim:
        raise ValueError("more eigenvalue-1 slots than dimensions")
    diag = [[_CZERO] * dim for _ in range(dim)]
    for a in range(dim):
        diag[a][a] = _CONE if a < ones else _random_eigenvalue(rng)
    if kind == "jordan_at_one":
        if ones < 2:
            raise ValueError("a Jordan block at 1 needs at least two slots")
        diag[0][1] = _CONE
    elif kind != "semisimple":
        raise ValueError(f"unknown monodromy kind {kind!r}")
    d = Matrix(dim, dim, diag)
    p, pinv = _conjugating_pair(rng, dim)
    return p.mul(d, _CZERO).mul(pinv, _CZERO)


def random_letters(rng: random.Random, n_generators: int,
                   max_length: int = 12) -> tuple[int, ...]:
    """Word in a free group as signed generator indices (1-based)."""
    length = rng.randint(0, max_length)
    out = []
    for _ in range(length):
        g = rng.randint(1, n_generators)
        out.append(g if rng.random() < 0.5 else -g)
    return tuple(out)
