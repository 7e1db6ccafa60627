"""Exact linear algebra over cyclotomic fields, K[t], and Laurent rings.

Three layers share the Matrix container below:

* fraction-free Bareiss determinants over the Laurent ring (no fractions
  ever appear, so entry growth stays polynomial);
* Gaussian elimination over a field, duck-typed so both CycloNumber and
  RatFunc entries work (rank, kernels, inverses, pivot columns);
* Smith normal form over K[t] with all four transform matrices tracked,
  which is what the homology and torsion code consumes.

Pivot selection everywhere uses a fixed deterministic rule (smallest entry
by a cheap size estimate, then lowest index), so repeated runs produce
identical output, including the transform matrices.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from . import kernels
from .errors import InputError, InternalInvariantError
from .laurent import LaurentPoly, RatFunc, dense_divmod
from .scalars import CycloNumber


class Matrix:
    """Immutable dense matrix with an explicit shape; entries are any ring."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Iterable[Iterable]):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise InputError(
                f"matrix shape mismatch: declared {nrows}x{ncols}, "
                f"got {len(rows)} rows of lengths {sorted({len(r) for r in rows})}"
            )
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if rows:
            ncols = len(rows[0])
        elif ncols is None:
            raise InputError("empty matrix needs an explicit column count")
        return cls(len(rows), ncols, rows)

    @classmethod
    def identity(cls, n: int, one, zero) -> "Matrix":
        return cls(n, n, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int, zero) -> "Matrix":
        return cls(nrows, ncols, [[zero] * ncols for _ in range(nrows)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows,
                      [[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)])

    def map(self, f: Callable) -> "Matrix":
        return Matrix(self.nrows, self.ncols, [[f(x) for x in r] for r in self.rows])

    def mul(self, other: "Matrix", zero) -> "Matrix":
        if self.ncols != other.nrows:
            raise InputError(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        if self.ncols == 0 or self.nrows == 0 or other.ncols == 0:
            return Matrix.zeros(self.nrows, other.ncols, zero)
        rows = kernels.mat_mul([list(r) for r in self.rows],
                               [list(r) for r in other.rows])
        return Matrix(self.nrows, other.ncols, rows)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        return Matrix(len(row_idx), len(col_idx),
                      [[self.rows[i][j] for j in col_idx] for i in row_idx])

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    __hash__ = None

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"


def _size(x) -> int:
    """Cheap complexity estimate used only to pick pivots deterministically."""
    if isinstance(x, LaurentPoly):
        return len(x.coeffs)
    if isinstance(x, RatFunc):
        return len(x.num.coeffs) + len(x.den.coeffs)
    if isinstance(x, CycloNumber):
        return sum(1 for c in x.coords if c)
    return 1


# -- Bareiss determinants over the Laurent ring -------------------------------


def det_laurent(m: Matrix) -> LaurentPoly:
    """Fraction-free determinant; entries must be LaurentPoly."""
    if m.nrows != m.ncols:
        raise InputError(f"determinant of a {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    if n == 0:
        return LaurentPoly.one()
    a = [list(r) for r in m.rows]
    sign = 1
    prev = LaurentPoly.one()
    for k in range(n - 1):
        pivot_row = None
        best = None
        for i in range(k, n):
            if a[i][k]:
                key = (_size(a[i][k]), i)
                if best is None or key < best:
                    best = key
                    pivot_row = i
        if pivot_row is None:
            return LaurentPoly.zero()
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * pivot - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev)
            a[i][k] = LaurentPoly.zero()
        prev = pivot
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def charpoly(f: Matrix) -> LaurentPoly:
    """det(t*I - F) for a square matrix of CycloNumber entries."""
    if f.nrows != f.ncols:
        raise InputError("characteristic polynomial of a non-square matrix")
    n = f.nrows
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            c = -f.entry(i, j)
            if i == j:
                row.append(LaurentPoly((c, 1)))
            else:
                row.append(LaurentPoly((c,)))
        rows.append(row)
    return det_laurent(Matrix(n, n, rows))


# -- Gaussian elimination over a field ----------------------------------------


def det_field(m: Matrix, zero, one):
    """Determinant by exact elimination; entries may be any field type."""
    if m.nrows != m.ncols:
        raise InputError(f"determinant of a {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    det = one
    a = [list(r) for r in m.rows]
    for k in range(n):
        pivot_row = None
        best = None
        for i in range(k, n):
            if a[i][k]:
                key = (_size(a[i][k]), i)
                if best is None or key < best:
                    best = key
                    pivot_row = i
        if pivot_row is None:
            return zero
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            det = -det
        pivot = a[k][k]
        det = det * pivot
        inv = pivot.inverse() if hasattr(pivot, "inverse") else one / pivot
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] * inv
                a[i] = [v - f * w for v, w in zip(a[i], a[k])]
    return det


def _rref(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    nrows = len(rows)
    pivots = []
    r = 0
    for col in range(ncols):
        if r >= nrows:
            break
        best = None
        sel = None
        for i in range(r, nrows):
            if rows[i][col]:
                key = (_size(rows[i][col]), i)
                if best is None or key < best:
                    best = key
                    sel = i
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = rows[r][col].inverse() if hasattr(rows[r][col], "inverse") else 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    return rows, pivots


def rank_field(m: Matrix) -> int:
    rows = [list(r) for r in m.rows]
    _, pivots = _rref(rows, m.ncols)
    return len(pivots)


def pivot_columns(m: Matrix) -> list[int]:
    """Leftmost maximal independent column set, greedily."""
    rows = [list(r) for r in m.rows]
    _, pivots = _rref(rows, m.ncols)
    return pivots


def kernel_basis_field(m: Matrix, zero, one) -> list[tuple]:
    """Column vectors spanning the right kernel, one per free column."""
    rows = [list(r) for r in m.rows]
    red, pivots = _rref(rows, m.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        vec = [zero] * m.ncols
        vec[free] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][free]
        basis.append(tuple(vec))
    return basis


def invert_field(m: Matrix, zero, one) -> Matrix | None:
    """Inverse over a field, or None when singular."""
    if m.nrows != m.ncols:
        raise InputError("inverse of a non-square matrix")
    n = m.nrows
    aug = [list(m.rows[i]) + [one if j == i else zero for j in range(n)]
           for i in range(n)]
    red, pivots = _rref(aug, n)
    if len(pivots) != n:
        return None
    return Matrix(n, n, [row[n:] for row in red])


def solve_field(a: Matrix, b: Matrix, zero, one) -> Matrix | None:
    """X with a.mul(X) = b, or None when inconsistent; a need not be square."""
    if a.nrows != b.nrows:
        raise InputError("row counts differ between system and right-hand side")
    n, m, k = a.nrows, a.ncols, b.ncols
    aug = [list(a.rows[i]) + list(b.rows[i]) for i in range(n)]
    red, pivots = _rref(aug, m)
    for i in range(len(pivots), n):
        if any(red[i][m:]):
            return None
    x = [[zero] * k for _ in range(m)]
    for r, pc in enumerate(pivots):
        for j in range(k):
            x[pc][j] = red[r][m + j]
    return Matrix(m, k, x)


# -- Smith normal form over K[t] -----------------------------------------------


class SNFResult:
    """Diagonal form D = U A V with tracked transforms and their inverses."""

    __slots__ = ("matrix", "d", "U", "V", "Uinv", "Vinv")

    def __init__(self, matrix, d, U, V, Uinv, Vinv):
        self.matrix = matrix
        self.d = d
        self.U = U
        self.V = V
        self.Uinv = Uinv
        self.Vinv = Vinv

    def rank(self) -> int:
        return sum(1 for x in self.d if x)

    def zero_column_indices(self) -> list[int]:
        """Column indices of D whose diagonal entry is zero or absent."""
        out = [i for i, x in enumerate(self.d) if not x]
        out.extend(range(len(self.d), self.matrix.ncols))
        return out

    def verify(self) -> None:
        zero = LaurentPoly.zero()
        one = LaurentPoly.one()
        n, m = self.matrix.shape
        d_mat = Matrix(n, m, [[self.d[i] if i == j and i < len(self.d) else zero
                               for j in range(m)] for i in range(n)])
        prod = self.U.mul(self.matrix, zero).mul(self.V, zero)
        if prod != d_mat:
            raise InternalInvariantError("U*A*V does not equal the diagonal form")
        if self.U.mul(self.Uinv, zero) != Matrix.identity(n, one, zero):
            raise InternalInvariantError("U*Uinv is not the identity")
        if self.V.mul(self.Vinv, zero) != Matrix.identity(m, one, zero):
            raise InternalInvariantError("V*Vinv is not the identity")
        for i in range(len(self.d) - 1):
            if self.d[i] and self.d[i + 1]:
                if not _divides(self.d[i], self.d[i + 1]):
                    raise InternalInvariantError("diagonal divisibility chain broken")
            elif not self.d[i] and self.d[i + 1]:
                raise InternalInvariantError("zero diagonal entry precedes a nonzero one")


def _poly_divmod(x: LaurentPoly, p: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Strict K[t] division (t-powers count as degree, not as units)."""
    q, r = dense_divmod(x.to_dense(), p.to_dense())
    return LaurentPoly(q, 0), LaurentPoly(r, 0)


def _divides(a: LaurentPoly, b: LaurentPoly) -> bool:
    _, r = _poly_divmod(b, a)
    return r.is_zero()


class _Tracker:
    """Mutable working state for the Smith reduction."""

    def __init__(self, m: Matrix):
        zero = LaurentPoly.zero()
        one = LaurentPoly.one()
        self.a = [list(r) for r in m.rows]
        self.n = m.nrows
        self.m = m.ncols
        self.u = [[one if i == j else zero for j in range(self.n)] for i in range(self.n)]
        self.uinv = [[one if i == j else zero for j in range(self.n)] for i in range(self.n)]
        self.v = [[one if i == j else zero for j in range(self.m)] for i in range(self.m)]
        self.vinv = [[one if i == j else zero for j in range(self.m)] for i in range(self.m)]

    def row_swap(self, i, j):
        if i == j:
            return
        self.a[i], self.a[j] = self.a[j], self.a[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]
        for row in self.uinv:
            row[i], row[j] = row[j], row[i]

    def col_swap(self, i, j):
        if i == j:
            return
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        for row in self.v:
            row[i], row[j] = row[j], row[i]
        self.vinv[i], self.vinv[j] = self.vinv[j], self.vinv[i]

    def row_scale(self, i, unit: LaurentPoly, unit_inv: LaurentPoly):
        self.a[i] = [unit * x for x in self.a[i]]
        self.u[i] = [unit * x for x in self.u[i]]
        for row in self.uinv:
            row[i] = row[i] * unit_inv

    def row_addmul(self, i, j, f: LaurentPoly):
        """row_i += f * row_j"""
        self.a[i] = [x + f * y for x, y in zip(self.a[i], self.a[j])]
        self.u[i] = [x + f * y for x, y in zip(self.u[i], self.u[j])]
        for row in self.uinv:
            row[j] = row[j] - f * row[i]

    def col_addmul(self, j, i, f: LaurentPoly):
        """col_j += f * col_i"""
        for row in self.a:
            row[j] = row[j] + f * row[i]
        for row in self.v:
            row[j] = row[j] + f * row[i]
        self.vinv[i] = [x - f * y for x, y in zip(self.vinv[i], self.vinv[j])]


def smith_normal_form(m: Matrix, check: bool = False) -> SNFResult:
    """Smith normal form over K[t] of a Laurent matrix.

    Rows are first scaled by t-units so every entry is a polynomial; the
    diagonal keeps any t-power content (so [[t, 1], [0, t-1]] diagonalizes
    to 1, t*(t-1)), and each nonzero diagonal entry is monic.
    """
    t = _Tracker(m)
    for i in range(t.n):
        exps = [x.min_exp for x in t.a[i] if x]
        if exps:
            e = min(exps)
            if e != 0:
                t.row_scale(i, LaurentPoly.t_power(-e), LaurentPoly.t_power(e))
    k = 0
    limit = min(t.n, t.m)
    while k < limit:
        pos = _smallest_entry(t, k)
        if pos is None:
            break
        t.row_swap(k, pos[0])
        t.col_swap(k, pos[1])
        while True:
            if not _clear_once(t, k):
                continue
            culprit = _find_nondivisible(t, k)
            if culprit is None:
                break
            t.row_addmul(k, culprit, LaurentPoly.one())
        lead = t.a[k][k].coeffs[-1]
        if not lead.is_one():
            inv = lead.inverse()
            t.row_scale(k, LaurentPoly.constant(inv), LaurentPoly.constant(lead))
        k += 1
    d = [t.a[i][i] for i in range(limit)]
    n_, m_ = m.shape
    result = SNFResult(
        m, d,
        Matrix(n_, n_, t.u), Matrix(m_, m_, t.v),
        Matrix(n_, n_, t.uinv), Matrix(m_, m_, t.vinv),
    )
    if check:
        result.verify()
    return result


def _smallest_entry(t: _Tracker, k: int) -> tuple[int, int] | None:
    best = None
    pos = None
    for i in range(k, t.n):
        for j in range(k, t.m):
            x = t.a[i][j]
            if x:
                key = (x.max_exp, len(x.coeffs), i, j)
                if best is None or key < best:
                    best = key
                    pos = (i, j)
    return pos


def _clear_once(t: _Tracker, k: int) -> bool:
    """One sweep reducing row and column k by the pivot.

    Returns True when the pivot cleanly divides everything it met (row and
    column k are now zero off the pivot); False when a smaller remainder
    took over as pivot and the sweep must restart.
    """
    pivot = t.a[k][k]
    for i in range(k + 1, t.n):
        x = t.a[i][k]
        if not x:
            continue
        q, r = _poly_divmod(x, pivot)
        t.row_addmul(i, k, -q)
        if r:
            t.row_swap(k, i)
            return False
    for j in range(k + 1, t.m):
        x = t.a[k][j]
        if not x:
            continue
        q, r = _poly_divmod(x, pivot)
        t.col_addmul(j, k, -q)
        if r:
            t.col_swap(k, j)
            return False
    return True


def _find_nondivisible(t: _Tracker, k: int) -> int | None:
    """Row index of some entry the pivot fails to divide, if any."""
    pivot = t.a[k][k]
    if pivot.max_exp == 0:
        return None
    for i in range(k + 1, t.n):
        for j in range(k + 1, t.m):
            x = t.a[i][j]
            if x:
                _, r = _poly_divmod(x, pivot)
                if r:
                    return i
    return None


# -- Smith normal form over the integers ----------------------------------------


def snf_int(rows: Sequence[Sequence[int]], nrows: int, ncols: int):
    """Integer Smith form; returns (diag, U, V) with diag nonnegative."""
    a = [list(map(int, r)) for r in rows]
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    limit = min(nrows, ncols)
    k = 0
    while k < limit:
        pos = None
        best = None
        for i in range(k, nrows):
            for j in range(k, ncols):
                if a[i][j] and (best is None or (abs(a[i][j]), i, j) < best):
                    best = (abs(a[i][j]), i, j)
                    pos = (i, j)
        if pos is None:
            break
        i0, j0 = pos
        a[k], a[i0] = a[i0], a[k]
        u[k], u[i0] = u[i0], u[k]
        if j0 != k:
            for row in a:
                row[k], row[j0] = row[j0], row[k]
            for row in v:
                row[k], row[j0] = row[j0], row[k]
        while True:
            done = True
            for i in range(k + 1, nrows):
                if a[i][k]:
                    q = a[i][k] // a[k][k]
                    for j in range(ncols):
                        a[i][j] -= q * a[k][j]
                    for j in range(nrows):
                        u[i][j] -= q * u[k][j]
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        u[k], u[i] = u[i], u[k]
                        done = False
                        break
            if not done:
                continue
            for j in range(k + 1, ncols):
                if a[k][j]:
                    q = a[k][j] // a[k][k]
                    for i in range(nrows):
                        a[i][j] -= q * a[i][k]
                    for i in range(ncols):
                        v[i][j] -= q * v[i][k]
                    if a[k][j]:
                        for row in a:
                            row[k], row[j] = row[j], row[k]
                        for row in v:
                            row[k], row[j] = row[j], row[k]
                        done = False
                        break
            if done:
                culprit = None
                for i in range(k + 1, nrows):
                    for j in range(k + 1, ncols):
                        if a[i][j] % a[k][k]:
                            culprit = i
                            break
                    if culprit is not None:
                        break
                if culprit is None:
                    break
                for j in range(ncols):
                    a[culprit][j] += a[k][j]
                for j in range(nrows):
                    u[culprit][j] += u[k][j]
                a[k], a[culprit] = a[culprit], a[k]
                u[k], u[culprit] = u[culprit], u[k]
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            u[k] = [-x for x in u[k]]
        k += 1
    diag = [a[i][i] for i in range(limit)]
    return diag, u, v
