"""Laurent polynomials and rational functions in t over a cyclotomic field.

LaurentPoly stores a trimmed coefficient window starting at min_exp, so
t-units cost nothing and negative exponents are first class. RatFunc keeps
a single canonical representative per value: num = t^e * N with N(0) != 0,
den = D with D(0) = 1 and gcd(N, D) = 1. Structural equality on that form
is value equality, which the unit-comparison and torsion code relies on.

Coefficients are CycloNumber throughout; constructors coerce ints, rational
strings, and mpq values, and refuse floats.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from . import kernels
from .errors import InputError, ParseError
from .scalars import CycloNumber, _tokenize

_C0 = CycloNumber.from_rational(0)
_C1 = CycloNumber.from_rational(1)


def _coerce(c) -> CycloNumber:
    if isinstance(c, CycloNumber):
        return c
    return CycloNumber.from_rational(c)


class LaurentPoly:
    """Finite sum of c * t^e with exact cyclotomic coefficients."""

    __slots__ = ("min_exp", "coeffs")

    def __init__(self, coeffs: Iterable, min_exp: int = 0):
        coeffs = [_coerce(c) for c in coeffs]
        lo = 0
        hi = len(coeffs)
        while hi > lo and coeffs[hi - 1].is_zero():
            hi -= 1
        while lo < hi and coeffs[lo].is_zero():
            lo += 1
        if lo == hi:
            object.__setattr__(self, "min_exp", 0)
            object.__setattr__(self, "coeffs", ())
        else:
            object.__setattr__(self, "min_exp", min_exp + lo)
            object.__setattr__(self, "coeffs", tuple(coeffs[lo:hi]))

    def __setattr__(self, *a):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls(())

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls((_C1,))

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls((_coerce(c),))

    @classmethod
    def t_power(cls, k: int, c=1) -> "LaurentPoly":
        return cls((_coerce(c),), k)

    @classmethod
    def t_minus_one(cls) -> "LaurentPoly":
        return cls((-1, 1))

    # -- shape ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.min_exp == 0 and len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    @property
    def max_exp(self) -> int:
        if not self.coeffs:
            raise InputError("zero polynomial has no degree")
        return self.min_exp + len(self.coeffs) - 1

    def coeff(self, e: int) -> CycloNumber:
        i = e - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return _C0

    def to_dense(self) -> list:
        """Little-endian coefficients from exponent 0; requires min_exp >= 0."""
        if not self.coeffs:
            return []
        if self.min_exp < 0:
            raise InputError("negative exponents cannot be densified")
        return [_C0] * self.min_exp + list(self.coeffs)

    def shift(self, k: int) -> "LaurentPoly":
        if not self.coeffs or k == 0:
            return self
        return LaurentPoly(self.coeffs, self.min_exp + k)

    def zeta_order(self) -> int:
        n = 1
        for c in self.coeffs:
            n = math.lcm(n, c.order)
        return n

    # -- arithmetic ---------------------------------------------------------

    def _window(self, lo: int, hi: int) -> list:
        out = [_C0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.min_exp + i - lo] = c
        return out

    def __add__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.max_exp, other.max_exp) + 1
        a = self._window(lo, hi)
        for i, c in enumerate(other.coeffs):
            j = other.min_exp + i - lo
            a[j] = a[j] + c
        return LaurentPoly(a, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(tuple(-c for c in self.coeffs), self.min_exp)

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return LaurentPoly.zero()
        prod = kernels.convolve(list(self.coeffs), list(other.coeffs))
        return LaurentPoly(prod, self.min_exp + other.min_exp)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative powers need RatFunc")
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "LaurentPoly":
        c = _coerce(c)
        return LaurentPoly(tuple(c * x for x in self.coeffs), self.min_exp)

    def sigma(self) -> "LaurentPoly":
        """Conjugate every coefficient; t is left alone."""
        return LaurentPoly(tuple(c.conjugate() for c in self.coeffs), self.min_exp)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient self / other when other divides exactly; error otherwise."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero()
        q = dense_exact_div(list(self.coeffs), list(other.coeffs))
        return LaurentPoly(q, self.min_exp - other.min_exp)

    def divmod(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Division with remainder; the remainder has a shorter coefficient span."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(), LaurentPoly.zero()
        q, r = dense_divmod(list(self.coeffs), list(other.coeffs))
        shift = self.min_exp - other.min_exp
        return LaurentPoly(q, shift), LaurentPoly(r, self.min_exp)

    def evaluate(self, x: CycloNumber) -> CycloNumber:
        x = _coerce(x)
        if not self.coeffs:
            return _C0
        if self.min_exp < 0 and x.is_zero():
            raise ZeroDivisionError("pole at zero")
        total = _C0
        power = x ** self.min_exp
        for c in self.coeffs:
            if not c.is_zero():
                total = total + c * power
            power = power * x
        return total

    def eval_at_one(self) -> CycloNumber:
        total = _C0
        for c in self.coeffs:
            total = total + c
        return total

    # -- comparisons ----------------------------------------------------------

    def __eq__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self.min_exp == other.min_exp and self.coeffs == other.coeffs

    __hash__ = None

    def __bool__(self):
        return bool(self.coeffs)

    # -- formatting -------------------------------------------------------------

    def to_literal(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            e = self.min_exp + i
            terms.append(_format_term(c, e))
        text = terms[0]
        for term in terms[1:]:
            text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return text

    def __repr__(self):
        return f"LaurentPoly({self.to_literal()!r})"


def _format_term(c: CycloNumber, e: int) -> str:
    if e == 0:
        lit = c.to_literal()
        return f"({lit})" if " " in lit else lit
    t = "t" if e == 1 else f"t^{e}"
    if c.is_one():
        return t
    if (-c).is_one():
        return f"-{t}"
    lit = c.to_literal()
    if " " in lit or "/" in lit or "*" in lit:
        return f"({lit})*{t}"
    return f"{lit}*{t}"


def _as_laurent(p):
    if isinstance(p, LaurentPoly):
        return p
    if isinstance(p, CycloNumber):
        return LaurentPoly((p,))
    if isinstance(p, int):
        return LaurentPoly((CycloNumber.from_rational(p),))
    return NotImplemented


# -- dense polynomial helpers (little-endian CycloNumber lists) ----------------


def dense_trim(p: list) -> list:
    while p and p[-1].is_zero():
        p.pop()
    return p


def dense_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    b = dense_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q, r = kernels.poly_divmod(list(a), list(b))
    return dense_trim(q), dense_trim(r)


def dense_exact_div(a: Sequence, b: Sequence) -> list:
    q, r = dense_divmod(a, b)
    if r:
        raise InputError("division was expected to be exact")
    return q


def dense_gcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd (leading coefficient 1); gcd(0, 0) = 0."""
    a = dense_trim(list(a))
    b = dense_trim(list(b))
    while b:
        _, r = dense_divmod(a, b)
        a, b = b, r
    if a:
        inv = a[-1].inverse()
        a = [c * inv for c in a]
    return a


def dense_derivative(p: Sequence) -> list:
    return dense_trim([p[i] * i for i in range(1, len(p))])


def multiplicity_at_one(p: Sequence) -> tuple[int, list]:
    """Largest k with (t-1)^k dividing p, plus the exact quotient."""
    p = dense_trim(list(p))
    if not p:
        raise InputError("zero polynomial vanishes at 1 to every order")
    k = 0
    one = [-_C1, _C1]
    while True:
        total = _C0
        for c in p:
            total = total + c
        if not total.is_zero():
            return k, p
        p = dense_exact_div(p, one)
        k += 1


def is_squarefree_dense(p: Sequence) -> bool:
    p = dense_trim(list(p))
    if len(p) <= 1:
        return bool(p)
    g = dense_gcd(p, dense_derivative(p))
    return len(g) == 1


class RatFunc:
    """Rational function in t, kept in a unique reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly, _canonical: bool = False):
        if not isinstance(num, LaurentPoly) or not isinstance(den, LaurentPoly):
            raise InputError("RatFunc needs LaurentPoly numerator and denominator")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _canonical:
            num, den = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFunc is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls(LaurentPoly.zero(), LaurentPoly.one(), _canonical=True)

    @classmethod
    def one(cls) -> "RatFunc":
        return cls(LaurentPoly.one(), LaurentPoly.one(), _canonical=True)

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RatFunc":
        return cls(p, LaurentPoly.one())

    @classmethod
    def constant(cls, c) -> "RatFunc":
        return cls.from_laurent(LaurentPoly.constant(c))

    @classmethod
    def t_power(cls, k: int, c=1) -> "RatFunc":
        return cls.from_laurent(LaurentPoly.t_power(k, c))

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_unit(self) -> bool:
        """True when the value is c * t^k with c != 0."""
        return self.num.is_monomial() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one() and (self.num.is_zero() or self.num.min_exp >= 0)

    def zeta_order(self) -> int:
        return math.lcm(self.num.zeta_order(), self.den.zeta_order())

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_ratfunc(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = RatFunc.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sigma(self) -> "RatFunc":
        return RatFunc(self.num.sigma(), self.den.sigma())

    # -- analysis at t = 1 -----------------------------------------------------

    def order_at_one(self) -> int:
        """Vanishing order at t = 1; poles come out negative."""
        return self.order_and_leading_at_one()[0]

    def leading_at_one(self) -> CycloNumber:
        return self.order_and_leading_at_one()[1]

    def order_and_leading_at_one(self) -> tuple[int, CycloNumber]:
        if self.is_zero():
            raise InputError("order at 1 is undefined for the zero function")
        kn, pn = multiplicity_at_one(list(self.num.coeffs))
        kd, pd = multiplicity_at_one(list(self.den.coeffs))
        num_val = _C0
        for c in pn:
            num_val = num_val + c
        den_val = _C0
        for c in pd:
            den_val = den_val + c
        return kn - kd, num_val / den_val

    def evaluate(self, x) -> CycloNumber:
        x = _coerce(x)
        d = self.den.evaluate(x)
        if d.is_zero():
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.num.evaluate(x) / d

    # -- unit bookkeeping ---------------------------------------------------------

    def unit_normalize(self) -> tuple["RatFunc", int, CycloNumber]:
        """Split as c * t^k * g where g has num starting 1 * t^0; returns (g, k, c)."""
        if self.is_zero():
            raise InputError("the zero function has no unit part")
        k = self.num.min_exp
        c = self.num.coeffs[0]
        inv = c.inverse()
        num = LaurentPoly(tuple(inv * x for x in self.num.coeffs), 0)
        return RatFunc(num, self.den, _canonical=True), k, c

    def unit_quotient(self, other: "RatFunc") -> tuple[int, CycloNumber] | None:
        """(k, c) with self = c * t^k * other, or None when no unit works."""
        other = _as_ratfunc(other)
        if other is NotImplemented or other.is_zero():
            raise InputError("unit comparison against zero")
        if self.is_zero():
            return None
        q = self / other
        if q.is_unit():
            return q.num.min_exp, q.num.coeffs[0]
        return None

    def equals_up_to_unit(self, other: "RatFunc") -> bool:
        return self.unit_quotient(other) is not None

    # -- comparisons ---------------------------------------------------------------

    def __eq__(self, other):
        other = _as_ratfunc(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    __hash__ = None

    def __bool__(self):
        return not self.is_zero()

    # -- formatting ------------------------------------------------------------------

    def to_literal(self) -> str:
        if self.den.is_one():
            return self.num.to_literal()
        num = self.num.to_literal()
        den = self.den.to_literal()
        if len(self.num.coeffs) > 1 or self.num.min_exp != 0:
            num = f"({num})"
        return f"{num}/({den})"

    def __repr__(self):
        return f"RatFunc({self.to_literal()!r})"


def _reduce(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero():
        return LaurentPoly.zero(), LaurentPoly.one()
    shift = num.min_exp - den.min_exp
    n = list(num.coeffs)
    d = list(den.coeffs)
    g = dense_gcd(n, d)
    if len(g) > 1:
        n = dense_exact_div(n, g)
        d = dense_exact_div(d, g)
    scale = d[0].inverse()
    n = [scale * c for c in n]
    d = [scale * c for c in d]
    return LaurentPoly(n, shift), LaurentPoly(d, 0)


def _as_ratfunc(v):
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, LaurentPoly):
        return RatFunc.from_laurent(v)
    if isinstance(v, (CycloNumber, int)):
        return RatFunc.from_laurent(LaurentPoly((_coerce(v),)))
    return NotImplemented


# -- parsing ---------------------------------------------------------------------
#
# expr   := [+-] term ((+|-) term)*
# term   := factor ((*|/) factor)*
# factor := atom [^ [-] int]
# atom   := int | z | t | ( expr )

def parse_ratfunc(text: str, zeta_order: int = 1) -> RatFunc:
    tokens = _tokenize(text, allow_t=True)
    value, pos = _rf_expr(tokens, 0, zeta_order, text)
    if pos != len(tokens):
        raise ParseError(text, tokens[pos][2], "unexpected trailing input")
    return value


def parse_laurent(text: str, zeta_order: int = 1) -> LaurentPoly:
    value = parse_ratfunc(text, zeta_order)
    if not value.den.is_one():
        raise ParseError(text, 0, "expected a Laurent polynomial, found a quotient")
    return value.num


def _rf_expr(tokens, pos, order, text):
    total = RatFunc.zero()
    sign = 1
    if pos < len(tokens) and tokens[pos][0] in "+-":
        sign = -1 if tokens[pos][0] == "-" else 1
        pos += 1
    while True:
        term, pos = _rf_term(tokens, pos, order, text)
        total = total + (term if sign == 1 else -term)
        if pos >= len(tokens) or tokens[pos][0] not in "+-":
            return total, pos
        sign = -1 if tokens[pos][0] == "-" else 1
        pos += 1


def _rf_term(tokens, pos, order, text):
    value, pos = _rf_factor(tokens, pos, order, text)
    while pos < len(tokens) and tokens[pos][0] in "*/":
        op = tokens[pos][0]
        nxt, pos = _rf_factor(tokens, pos + 1, order, text)
        if op == "*":
            value = value * nxt
        else:
            if nxt.is_zero():
                raise ParseError(text, tokens[pos - 1][2], "division by zero")
            value = value / nxt
    return value, pos


def _rf_factor(tokens, pos, order, text):
    value, pos = _rf_atom(tokens, pos, order, text)
    if pos < len(tokens) and tokens[pos][0] == "^":
        pos += 1
        ksign = 1
        if pos < len(tokens) and tokens[pos][0] == "-":
            ksign = -1
            pos += 1
        if pos >= len(tokens) or tokens[pos][0] != "int":
            raise ParseError(text, tokens[pos - 1][2], "expected integer exponent")
        k = ksign * int(tokens[pos][1])
        pos += 1
        if k < 0 and value.is_zero():
            raise ParseError(text, tokens[pos - 1][2], "negative power of zero")
        value = value ** k
    return value, pos


def _rf_atom(tokens, pos, order, text):
    if pos >= len(tokens):
        raise ParseError(text, len(text), "expected a value")
    kind, tok, at = tokens[pos]
    if kind == "(":
        value, pos = _rf_expr(tokens, pos + 1, order, text)
        if pos >= len(tokens) or tokens[pos][0] != ")":
            raise ParseError(text, at, "unbalanced parenthesis")
        return value, pos + 1
    if kind == "int":
        return RatFunc.constant(int(tok)), pos + 1
    if kind == "sym" and tok == "t":
        return RatFunc.t_power(1), pos + 1
    if kind == "sym" and tok == "z":
        if order <= 1:
            raise ParseError(text, at, "literal uses z but no zeta order is declared")
        return RatFunc.constant(CycloNumber.zeta(order)), pos + 1
    raise ParseError(text, at, f"unexpected token {tok!r}")
