"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored as rational coordinates over the power basis
1, zeta, ..., zeta^(d-1) where d = deg Phi_n; products are reduced modulo
Phi_n through cached integer reduction rows. Elements of different orders
combine by lifting both to the lcm order (zeta_m -> zeta_n^(n/m)), and an
element whose higher coordinates vanish collapses to order 1, so plain
rationals stay cheap. Supported scalars are exactly the cyclotomic numbers;
algebraic numbers outside every Q(zeta_n) cannot be represented and inputs
claiming them are rejected at parse time.

Rational coordinates use gmpy2.mpq when available (fractions.Fraction
otherwise); both are kept in lowest terms by construction.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath

from . import kernels
from .errors import InputError, ParseError

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as QQ

_ZERO = QQ(0)
_ONE = QQ(1)


def rational(value, den=None) -> QQ:
    """Coerce ints, strings like '-3/4', and existing rationals to QQ."""
    if isinstance(value, float) or isinstance(den, float):
        raise InputError("floats are not exact; pass a string or integer ratio")
    if den is not None:
        return QQ(value, den)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, d = text.partition("/")
            return QQ(int(num), int(d))
        return QQ(int(text))
    return QQ(value)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, little-endian, monic."""
    if n < 1:
        raise InputError(f"cyclotomic order must be >= 1, got {n}")
    if n == 1:
        return (-1, 1)
    # divide x^n - 1 by the product of Phi_d over proper divisors d of n
    poly = [0] * (n + 1)
    poly[0] = -1
    poly[n] = 1
    for d in range(1, n):
        if n % d == 0:
            poly = _int_poly_exact_div(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _int_poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    out = [0] * (len(num) - len(den) + 1)
    rem = list(num)
    for i in range(len(out) - 1, -1, -1):
        q = rem[i + len(den) - 1] // den[-1]
        out[i] = q
        for j, c in enumerate(den):
            rem[i + j] -= q * c
    assert not any(rem), "non-exact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def field_degree(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of zeta_n^(d+j) for j = 0.. covering conjugation and products."""
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    count = max(d - 1, n - d, 1)
    base = tuple(-c for c in phi[:d])
    rows = [base]
    for _ in range(count - 1):
        prev = rows[-1]
        top = prev[d - 1]
        row = [prev[k - 1] + top * base[k] if k else top * base[0] for k in range(d)]
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def _power_coords(n: int, k: int) -> tuple:
    """Coordinates of zeta_n^k in the power basis, k >= 0."""
    d = field_degree(n)
    k %= n
    if k < d:
        coords = [_ZERO] * d
        coords[k] = _ONE
        return tuple(coords)
    return tuple(QQ(c) for c in _reduction_rows(n)[k - d])


@lru_cache(maxsize=None)
def _lift_rows(m: int, n: int) -> tuple[tuple, ...]:
    """Row i = coordinates in Q(zeta_n) of the i-th basis power of Q(zeta_m)."""
    assert n % m == 0
    step = n // m
    return tuple(_power_coords(n, i * step) for i in range(field_degree(m)))


class CycloNumber:
    """Immutable element of Q(zeta_order) in the power basis."""

    __slots__ = ("order", "coords")

    def __init__(self, order: int, coords: Iterable):
        coords = tuple(QQ(c) for c in coords)
        d = field_degree(order)
        if len(coords) != d:
            raise InputError(
                f"order {order} needs {d} coordinates, got {len(coords)}"
            )
        if order > 1 and not any(coords[1:]):
            order, coords = 1, coords[:1]
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, *a):
        raise AttributeError("CycloNumber is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rational(cls, value) -> "CycloNumber":
        return cls(1, (rational(value),))

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycloNumber":
        return cls(n, _power_coords(n, k % n))

    # -- basic predicates -----------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return self.order == 1

    def rational_value(self) -> QQ:
        if self.order != 1:
            raise InputError("not a rational number")
        return self.coords[0]

    def is_one(self) -> bool:
        return self.order == 1 and self.coords[0] == 1

    # -- order management -----------------------------------------------

    def lift_coords(self, n: int) -> tuple:
        """Coordinates of this element inside Q(zeta_n); order must divide n."""
        if n == self.order:
            return self.coords
        if n % self.order != 0:
            raise InputError(f"order {self.order} does not divide {n}")
        rows = _lift_rows(self.order, n)
        out = [_ZERO] * field_degree(n)
        for c, row in zip(self.coords, rows):
            if c:
                for k, r in enumerate(row):
                    if r:
                        out[k] += c * r
        return tuple(out)

    def lift(self, n: int) -> "CycloNumber":
        return CycloNumber(n, self.lift_coords(n)) if n != self.order else self

    def project(self, m: int) -> "CycloNumber":
        """Rewrite in Q(zeta_m) when the value lies there; error otherwise."""
        if self.order % m != 0:
            raise InputError(f"{m} is not a divisor of order {self.order}")
        if m == self.order:
            return self
        sol = _solve_lift(m, self.order, self.coords)
        if sol is None:
            raise InputError("element does not lie in the requested subfield")
        return CycloNumber(m, sol)

    def reduced(self) -> "CycloNumber":
        """Smallest cyclotomic order representing the same value."""
        cur = self
        changed = True
        while changed and cur.order > 1:
            changed = False
            for p in _prime_factors(cur.order):
                m = cur.order // p
                try:
                    cur = cur.project(m)
                    changed = True
                    break
                except InputError:
                    continue
        return cur

    # -- arithmetic -------------------------------------------------------

    def _pair(self, other):
        if not isinstance(other, CycloNumber):
            if isinstance(other, (int, QQ)) or type(other).__name__ in ("mpz", "Fraction"):
                other = CycloNumber.from_rational(other)
            else:
                return None
        if self.order == other.order:
            return self.order, self.coords, other.coords
        n = math.lcm(self.order, other.order)
        return n, self.lift_coords(n), other.lift_coords(n)

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        n, a, b = pair
        return CycloNumber(n, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        n, a, b = pair
        return CycloNumber(n, tuple(x - y for x, y in zip(a, b)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CycloNumber(self.order, tuple(-c for c in self.coords))

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        n, a, b = pair
        d = len(a)
        if d == 1:
            return CycloNumber(n, (a[0] * b[0],))
        conv = kernels.convolve(list(a), list(b))
        return CycloNumber(n, kernels.reduce_tail(conv, d, _reduction_rows(n)))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        n = self.order
        if n == 1:
            return CycloNumber(1, (_ONE / self.coords[0],))
        phi = [QQ(c) for c in cyclotomic_polynomial(n)]
        inv = _poly_modinv(list(self.coords), phi)
        return CycloNumber(n, inv)

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        if not isinstance(other, CycloNumber):
            other = CycloNumber.from_rational(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycloNumber.from_rational(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNumber.from_rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "CycloNumber":
        """Image under zeta -> zeta^(-1) (complex conjugation)."""
        n = self.order
        if n == 1:
            return self
        d = len(self.coords)
        acc = [_ZERO] * max(n, d)
        acc[0] = self.coords[0]
        for i in range(1, d):
            acc[n - i] += self.coords[i]
        return CycloNumber(n, kernels.reduce_tail(acc, d, _reduction_rows(n)))

    def abs_squared(self) -> "CycloNumber":
        return self * self.conjugate()

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        _, a, b = pair
        return a == b

    def __bool__(self):
        return not self.is_zero()

    __hash__ = None  # cross-order equality makes a consistent hash awkward

    # -- numeric embedding -------------------------------------------------

    def embed(self, precision_bits: int = 128) -> mpmath.mpc:
        """Complex value at zeta_n = exp(2 pi i / n), accurate past precision_bits."""
        if precision_bits < 53:
            raise InputError("precision_bits must be at least 53")
        work = precision_bits + 16 + self.order.bit_length()
        with mpmath.workprec(work):
            powers = _zeta_powers(self.order, work)
            total = mpmath.mpc(0)
            for c, p in zip(self.coords, powers):
                if c:
                    total += _to_mpf(c) * p
            return +total

    def abs_embed(self, precision_bits: int = 128) -> mpmath.mpf:
        with mpmath.workprec(precision_bits + 16):
            return +abs(self.embed(precision_bits))

    # -- formatting ---------------------------------------------------------

    def to_literal(self) -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            if i == 0:
                terms.append(_format_rat(c))
            else:
                z = "z" if i == 1 else f"z^{i}"
                if c == 1:
                    terms.append(z)
                elif c == -1:
                    terms.append(f"-{z}")
                else:
                    terms.append(f"{_format_rat(c)}*{z}")
        if not terms:
            return "0"
        text = terms[0]
        for term in terms[1:]:
            text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return text

    def __repr__(self):
        if self.order == 1:
            return f"CycloNumber({_format_rat(self.coords[0])})"
        return f"CycloNumber(order={self.order}, {self.to_literal()!r})"


def _format_rat(c) -> str:
    return str(c)


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _solve_lift(m: int, n: int, target: Sequence) -> tuple | None:
    """Solve lift_rows(m, n)^T x = target by elimination; None if unsolvable."""
    rows = _lift_rows(m, n)
    dm, dn = field_degree(m), field_degree(n)
    # augmented system: dn equations, dm unknowns
    aug = [[rows[j][i] for j in range(dm)] + [target[i]] for i in range(dn)]
    piv_cols = []
    r = 0
    for col in range(dm):
        sel = next((i for i in range(r, dn) if aug[i][col]), None)
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        inv = _ONE / aug[r][col]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(dn):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, dn):
        if aug[i][dm]:
            return None
    sol = [_ZERO] * dm
    for i, col in enumerate(piv_cols):
        sol[col] = aug[i][dm]
    return tuple(sol)


def _poly_modinv(a: list, phi: list) -> list:
    """Inverse of a modulo phi over Q; a nonzero, phi irreducible."""
    d = len(phi) - 1
    r0, r1 = phi, _trim(a)
    s0, s1 = [], [_ONE]
    while True:
        if not r1:
            raise ZeroDivisionError("non-invertible residue")
        if len(r1) == 1:
            inv = _ONE / r1[0]
            out = [c * inv for c in s1]
            out += [_ZERO] * (d - len(out))
            return out[:d]
        q, rem = kernels.poly_divmod(r0, r1)
        rem = _trim(rem)
        new_s = _poly_sub(s0, _poly_mul(q, s1))
        r0, r1 = r1, rem
        s0, s1 = s1, new_s


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    return kernels.convolve(a, b)


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else _ZERO
        y = b[i] if i < len(b) else _ZERO
        out.append(x - y)
    return _trim(out)


@lru_cache(maxsize=32)
def _zeta_powers(n: int, workprec: int) -> tuple:
    with mpmath.workprec(workprec):
        return tuple(mpmath.expjpi(mpmath.mpf(2 * k) / n) for k in range(field_degree(n)))


def _to_mpf(q) -> mpmath.mpf:
    return mpmath.mpf(int(q.numerator)) / mpmath.mpf(int(q.denominator))


# -- literal syntax ---------------------------------------------------------
#
# expr   := [+-] term ((+|-) term)*
# term   := atom (* atom)*
# atom   := rational | z-power | ( expr )
# z-power:= z [^ [-] int]

def parse_cyclo(text: str, order: int) -> CycloNumber:
    """Parse a cyclotomic literal such as '1/2 + 1/2*z^2' in Q(zeta_order)."""
    tokens = _tokenize(text, allow_t=False)
    value, pos = _parse_expr(tokens, 0, order, text)
    if pos != len(tokens):
        raise ParseError(text, tokens[pos][2], "unexpected trailing input")
    return value


def _tokenize(text: str, allow_t: bool):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch == "z" or (allow_t and ch == "t"):
            tokens.append(("sym", ch, i))
            i += 1
            continue
        raise ParseError(text, i, f"unexpected character {ch!r}")
    return tokens


def _parse_expr(tokens, pos, order, text):
    total = CycloNumber.from_rational(0)
    sign = 1
    if pos < len(tokens) and tokens[pos][0] in "+-":
        sign = -1 if tokens[pos][0] == "-" else 1
        pos += 1
    while True:
        term, pos = _parse_term(tokens, pos, order, text)
        total = total + (term if sign == 1 else -term)
        if pos >= len(tokens) or tokens[pos][0] not in "+-":
            return total, pos
        sign = -1 if tokens[pos][0] == "-" else 1
        pos += 1


def _parse_term(tokens, pos, order, text):
    value, pos = _parse_atom(tokens, pos, order, text)
    while pos < len(tokens) and tokens[pos][0] == "*":
        nxt, pos = _parse_atom(tokens, pos + 1, order, text)
        value = value * nxt
    return value, pos


def _parse_atom(tokens, pos, order, text):
    if pos >= len(tokens):
        raise ParseError(text, len(text), "expected a value")
    kind, tok, at = tokens[pos]
    if kind == "(":
        value, pos = _parse_expr(tokens, pos + 1, order, text)
        if pos >= len(tokens) or tokens[pos][0] != ")":
            raise ParseError(text, at, "unbalanced parenthesis")
        return value, pos + 1
    if kind == "int":
        num = int(tok)
        pos += 1
        if pos + 1 < len(tokens) and tokens[pos][0] == "/" and tokens[pos + 1][0] == "int":
            den = int(tokens[pos + 1][1])
            if den == 0:
                raise ParseError(text, tokens[pos + 1][2], "zero denominator")
            return CycloNumber.from_rational(QQ(num, den)), pos + 2
        return CycloNumber.from_rational(num), pos
    if kind == "sym" and tok == "z":
        pos += 1
        k = 1
        if pos < len(tokens) and tokens[pos][0] == "^":
            pos += 1
            ksign = 1
            if pos < len(tokens) and tokens[pos][0] == "-":
                ksign = -1
                pos += 1
            if pos >= len(tokens) or tokens[pos][0] != "int":
                raise ParseError(text, at, "expected integer exponent")
            k = ksign * int(tokens[pos][1])
            pos += 1
        return CycloNumber.zeta(order, k % order), pos
    raise ParseError(text, at, f"unexpected token {tok!r}")
