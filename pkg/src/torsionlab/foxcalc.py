"""Free-group calculus: words, Fox derivatives, and the map into Laurent matrices.

Words are stored freely reduced.  Derivatives live in the integral group
ring and satisfy the product rule d(uv) = du + u.dv with d(x)/dx = 1 and
d(x^-1)/dx = -x^-1.  A presentation plus a unitary representation and an
augmentation turn group-ring elements into matrices over Q(zeta)[t, t^-1]
via w |-> rho(w) * t^eps(w).
"""

from __future__ import annotations

import re
from math import gcd

from .errors import HypothesisError, InputError, ParseError
from .laurent import LaurentPoly
from .linalg import Matrix, snf_int
from .scalars import CycloNumber

_CZERO = CycloNumber.from_rational(0)
_CONE = CycloNumber.from_rational(1)
_LZERO = LaurentPoly.zero()

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


class FreeWord:
    """Freely reduced word; letters are (generator index, exponent +-1)."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        reduced: list[tuple[int, int]] = []
        for idx, exp in letters:
            idx = int(idx)
            exp = int(exp)
            if idx < 0:
                raise InputError("generator indices must be nonnegative")
            if exp not in (1, -1):
                raise InputError("letter exponents must be +1 or -1")
            if reduced and reduced[-1][0] == idx and reduced[-1][1] == -exp:
                reduced.pop()
            else:
                reduced.append((idx, exp))
        object.__setattr__(self, "letters", tuple(reduced))

    def __setattr__(self, *a):
        raise AttributeError("FreeWord is immutable")

    @classmethod
    def identity(cls) -> "FreeWord":
        return cls()

    @classmethod
    def generator(cls, idx: int, exp: int = 1) -> "FreeWord":
        return cls(((idx, exp),))

    @classmethod
    def from_signed(cls, signed) -> "FreeWord":
        """Build from 1-based signed indices, e.g. (1, -2) meaning x1 * x2^-1."""
        letters = []
        for s in signed:
            s = int(s)
            if s == 0:
                raise InputError("0 is not a signed generator index")
            letters.append((abs(s) - 1, 1 if s > 0 else -1))
        return cls(letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if not isinstance(other, FreeWord):
            return NotImplemented
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((i, -e) for i, e in reversed(self.letters)))

    def is_identity(self) -> bool:
        return not self.letters

    def max_index(self) -> int:
        """Largest generator index used, or -1 for the empty word."""
        return max((i for i, _ in self.letters), default=-1)

    def cycled(self, k: int) -> "FreeWord":
        """Cyclic permutation moving the first k letters to the end."""
        k %= max(len(self.letters), 1)
        return FreeWord(self.letters[k:] + self.letters[:k])

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        if not isinstance(other, FreeWord):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def to_text(self, names) -> str:
        """Printable form, merging runs: x x y^-1 -> 'x^2 y^-1'."""
        if not self.letters:
            return "1"
        out = []
        run_idx, run_exp = self.letters[0]
        count = 1
        for idx, exp in self.letters[1:]:
            if idx == run_idx and exp == run_exp:
                count += 1
                continue
            out.append(_fmt_run(names[run_idx], run_exp * count))
            run_idx, run_exp, count = idx, exp, 1
        out.append(_fmt_run(names[run_idx], run_exp * count))
        return " ".join(out)

    def __repr__(self):
        body = " ".join(f"g{i}" if e > 0 else f"g{i}^-1" for i, e in self.letters)
        return f"FreeWord({body or '1'})"


def _fmt_run(name: str, exp: int) -> str:
    return name if exp == 1 else f"{name}^{exp}"


def parse_word(text: str, generators) -> FreeWord:
    """Parse whitespace-separated tokens `name`, `name^k`, shorthand `X` = x^-1."""
    names = list(generators)
    letters = []
    for m in re.finditer(r"\S+", text):
        token = m.group()
        pos = m.start()
        if token == "1":
            continue
        if "^" in token:
            base, _, tail = token.partition("^")
            try:
                exp = int(tail)
            except ValueError:
                raise ParseError(text, pos, f"bad exponent {tail!r}") from None
        else:
            base, exp = token, 1
        if base in names:
            idx = names.index(base)
        elif base != base.lower() and base.lower() in names:
            idx = names.index(base.lower())
            exp = -exp
        else:
            raise ParseError(text, pos, f"unknown generator {base!r}")
        if exp == 0:
            continue
        sign = 1 if exp > 0 else -1
        letters.extend(((idx, sign),) * abs(exp))
    return FreeWord(letters)


# -- the integral group ring ------------------------------------------------------


class GroupRingElement:
    """Finite integer combination of free-group words."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        cleaned = {}
        for word, c in (coeffs or {}).items():
            if not isinstance(word, FreeWord):
                raise InputError("group ring keys must be words")
            c = int(c)
            if c:
                cleaned[word] = c
        object.__setattr__(self, "coeffs", cleaned)

    def __setattr__(self, *a):
        raise AttributeError("GroupRingElement is immutable")

    @classmethod
    def zero(cls) -> "GroupRingElement":
        return cls()

    @classmethod
    def one(cls) -> "GroupRingElement":
        return cls({FreeWord.identity(): 1})

    @classmethod
    def from_word(cls, w: FreeWord, c: int = 1) -> "GroupRingElement":
        return cls({w: c})

    def terms(self) -> tuple[tuple[int, FreeWord], ...]:
        """Deterministically ordered (coefficient, word) pairs."""
        keys = sorted(self.coeffs, key=lambda w: (len(w.letters), w.letters))
        return tuple((self.coeffs[w], w) for w in keys)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement({w: c * other for w, c in self.coeffs.items()})
        if isinstance(other, FreeWord):
            other = GroupRingElement.from_word(other)
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        out: dict[FreeWord, int] = {}
        for u, a in self.coeffs.items():
            for v, b in other.coeffs.items():
                w = u * v
                out[w] = out.get(w, 0) + a * b
        return GroupRingElement(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        if isinstance(other, FreeWord):
            return GroupRingElement.from_word(other) * self
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def max_index(self) -> int:
        return max((w.max_index() for w in self.coeffs), default=-1)

    def to_text(self, names) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for c, w in self.terms():
            body = w.to_text(names)
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"GroupRingElement({len(self.coeffs)} terms)"


def fox_derivative(w: FreeWord, x: int) -> GroupRingElement:
    """Derivative with respect to generator index x, by the product rule."""
    total: dict[FreeWord, int] = {}
    prefix = FreeWord.identity()
    for idx, exp in w.letters:
        if idx == x:
            if exp == 1:
                piece = prefix
                sign = 1
            else:
                piece = prefix * FreeWord.generator(idx, -1)
                sign = -1
            total[piece] = total.get(piece, 0) + sign
        prefix = prefix * FreeWord.generator(idx, exp)
    return GroupRingElement(total)


# -- presentations -----------------------------------------------------------------


class Presentation:
    """Finite presentation; relators are words in the listed generators."""

    __slots__ = ("generators", "relators")

    def __init__(self, generators, relators=()):
        generators = tuple(str(g) for g in generators)
        if not generators:
            raise InputError("a presentation needs at least one generator")
        if len(set(generators)) != len(generators):
            raise InputError("generator names must be distinct")
        for g in generators:
            if not _NAME_RE.match(g):
                raise InputError(f"bad generator name {g!r}")
        rel = []
        for r in relators:
            if isinstance(r, str):
                r = parse_word(r, generators)
            if not isinstance(r, FreeWord):
                raise InputError("relators must be words or word strings")
            if r.max_index() >= len(generators):
                raise InputError(
                    f"relator {r!r} uses generator index {r.max_index()}, but "
                    f"only {len(generators)} generators are declared")
            rel.append(r)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "relators", tuple(rel))

    def __setattr__(self, *a):
        raise AttributeError("Presentation is immutable")

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def is_deficiency_one(self) -> bool:
        return len(self.relators) == len(self.generators) - 1

    def generator_index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise InputError(f"no generator named {name!r}") from None

    def exponent_sum_matrix(self) -> list[list[int]]:
        """Abelianized relators: one row per relator, one column per generator."""
        rows = []
        for r in self.relators:
            row = [0] * self.n_generators
            for idx, exp in r.letters:
                row[idx] += exp
            rows.append(row)
        return rows

    def fox_jacobian(self) -> tuple[tuple[GroupRingElement, ...], ...]:
        """Rows indexed by generator, columns by relator."""
        return tuple(
            tuple(fox_derivative(r, i) for r in self.relators)
            for i in range(self.n_generators))

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (self.generators == other.generators
                and self.relators == other.relators)

    __hash__ = None

    def __repr__(self):
        rels = "; ".join(r.to_text(self.generators) for r in self.relators)
        return f"<{', '.join(self.generators)} | {rels}>"


class Augmentation:
    """Integer weights for the generators, defining a map onto the integers."""

    __slots__ = ("values",)

    def __init__(self, values):
        object.__setattr__(self, "values", tuple(int(v) for v in values))

    def __setattr__(self, *a):
        raise AttributeError("Augmentation is immutable")

    def weight(self, w: FreeWord) -> int:
        return sum(exp * self.values[idx] for idx, exp in w.letters)

    def validate(self, pres: Presentation) -> None:
        if len(self.values) != pres.n_generators:
            raise InputError(
                f"{pres.n_generators} generators but {len(self.values)} weights")
        if gcd(*self.values) != 1:
            raise InputError("augmentation weights must generate the integers")
        for r in pres.relators:
            if self.weight(r):
                raise InputError(
                    f"relator {r.to_text(pres.generators)!r} has nonzero "
                    f"weight {self.weight(r)}")

    def __eq__(self, other):
        if not isinstance(other, Augmentation):
            return NotImplemented
        return self.values == other.values

    __hash__ = None

    def __repr__(self):
        return f"Augmentation{self.values}"


def abelianization_epsilon(pres: Presentation) -> Augmentation:
    """The surjection onto the integers when the abelianization is infinite cyclic.

    Computed from the integer Smith form of the exponent-sum matrix; the
    sign is fixed so the first nonzero weight is positive.
    """
    k = pres.n_generators
    rows = pres.exponent_sum_matrix()
    if not rows:
        if k != 1:
            raise HypothesisError(
                "abelianization is free of rank > 1; supply an explicit "
                "augmentation")
        return Augmentation((1,))
    diag, _, v = snf_int(rows, len(rows), k)
    nonzero = [d for d in diag if d]
    if len(nonzero) != k - 1 or any(abs(d) != 1 for d in nonzero):
        raise HypothesisError(
            "the abelianization of this presentation is not infinite cyclic; "
            "supply an explicit augmentation")
    free_cols = [j for j in range(k) if j >= len(diag) or not diag[j]]
    col = free_cols[0]
    values = [v[i][col] for i in range(k)]
    lead = next(x for x in values if x)
    if lead < 0:
        values = [-x for x in values]
    return Augmentation(values)


# -- representations ---------------------------------------------------------------


def conjugate_transpose(m: Matrix) -> Matrix:
    return m.transpose().map(lambda x: x.conjugate())


class Representation:
    """Per-generator unitary matrices over a cyclotomic field."""

    __slots__ = ("dimension", "order", "matrices")

    def __init__(self, dimension, order, matrices):
        dimension = int(dimension)
        order = int(order)
        matrices = tuple(matrices)
        if dimension < 1:
            raise InputError("representation dimension must be positive")
        if order < 1:
            raise InputError("cyclotomic order must be positive")
        ident = Matrix.identity(dimension, _CONE, _CZERO)
        for u in matrices:
            if not isinstance(u, Matrix) or u.shape != (dimension, dimension):
                raise InputError(
                    f"generator matrices must be {dimension}x{dimension}")
            if u.mul(conjugate_transpose(u), _CZERO) != ident:
                raise InputError("generator matrix is not unitary")
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "matrices", matrices)

    def __setattr__(self, *a):
        raise AttributeError("Representation is immutable")

    @classmethod
    def trivial(cls, n_generators: int) -> "Representation":
        one = Matrix.identity(1, _CONE, _CZERO)
        return cls(1, 1, (one,) * n_generators)

    def image(self, w: FreeWord) -> Matrix:
        """Product of generator matrices; inverses via the conjugate transpose."""
        out = Matrix.identity(self.dimension, _CONE, _CZERO)
        for idx, exp in w.letters:
            u = self.matrices[idx]
            if exp < 0:
                u = conjugate_transpose(u)
            out = out.mul(u, _CZERO)
        return out

    def validate(self, pres: Presentation) -> None:
        if len(self.matrices) != pres.n_generators:
            raise InputError(
                f"{pres.n_generators} generators but "
                f"{len(self.matrices)} matrices")
        ident = Matrix.identity(self.dimension, _CONE, _CZERO)
        for r in pres.relators:
            if self.image(r) != ident:
                raise InputError(
                    f"relator {r.to_text(pres.generators)!r} does not map to "
                    "the identity")

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.dimension == other.dimension and self.order == other.order
                and self.matrices == other.matrices)

    __hash__ = None

    def __repr__(self):
        return (f"Representation(dim={self.dimension}, order={self.order}, "
                f"{len(self.matrices)} generators)")


def phi(e, rho: Representation, eps: Augmentation) -> Matrix:
    """Matrix over the Laurent ring: sum of c * rho(w) * t^eps(w) over terms.

    Accepts a word or a group-ring element.  Entries always land in the
    Laurent ring; no denominators appear.
    """
    if isinstance(e, FreeWord):
        e = GroupRingElement.from_word(e)
    m = rho.dimension
    acc = [[_LZERO] * m for _ in range(m)]
    for c, w in e.terms():
        img = rho.image(w)
        k = eps.weight(w)
        scalar = CycloNumber.from_rational(c)
        for i in range(m):
            for j in range(m):
                x = img.entry(i, j)
                if x.is_zero():
                    continue
                acc[i][j] = acc[i][j] + LaurentPoly.t_power(k, scalar * x)
    return Matrix(m, m, acc)
