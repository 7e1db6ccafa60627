import pytest
from hypothesis import given, settings, strategies as st

from torsionlab.errors import InputError, ParseError
from torsionlab.scalars import (
    QQ,
    CycloNumber,
    cyclotomic_polynomial,
    field_degree,
    parse_cyclo,
    rational,
)


def test_cyclotomic_polynomials_small():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    # prime p: 1 + x + ... + x^(p-1)
    assert cyclotomic_polynomial(7) == (1,) * 7


def test_field_degrees():
    assert [field_degree(n) for n in (1, 2, 3, 4, 5, 6, 8, 12)] == [1, 1, 2, 2, 4, 2, 4, 4]


def test_zeta_powers_collapse_to_rationals():
    assert CycloNumber.zeta(2).is_rational()
    assert CycloNumber.zeta(2).rational_value() == -1
    assert CycloNumber.zeta(4, 2) == -1
    assert CycloNumber.zeta(5, 0).is_one()


def test_norm_identity_order_three():
    z = CycloNumber.zeta(3)
    assert ((1 + z) * (1 + z * z)).is_one()


def test_sum_of_all_roots_is_zero():
    for n in (3, 4, 5, 6, 8, 12):
        total = CycloNumber.from_rational(0)
        for k in range(n):
            total = total + CycloNumber.zeta(n, k)
        assert total.is_zero()


def test_conjugate_is_inverse_power():
    for n in (3, 4, 5, 8, 12):
        z = CycloNumber.zeta(n)
        assert z.conjugate() == CycloNumber.zeta(n, n - 1)
        assert z.abs_squared().is_one()


def test_conjugate_involution_and_homomorphism():
    a = parse_cyclo("1/2 + z - 3*z^2", 5)
    b = parse_cyclo("2 - z^3", 5)
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()


def test_mixed_order_arithmetic():
    i = CycloNumber.zeta(4)
    w = CycloNumber.zeta(3)
    s = i + w
    assert s.order == 12
    assert s - w == i
    # zeta_12^4 = zeta_3, zeta_12^3 = zeta_4
    z12 = CycloNumber.zeta(12)
    assert z12 ** 4 == w
    assert z12 ** 3 == i


def test_inverse_matches_multiplication():
    a = parse_cyclo("3 - 2*z + z^3", 8)
    assert (a * a.inverse()).is_one()
    assert (1 / a) * a == 1
    with pytest.raises(ZeroDivisionError):
        CycloNumber.from_rational(0).inverse()


def test_lift_project_roundtrip():
    w = CycloNumber.zeta(3) + 2
    lifted = w.lift(12)
    assert lifted == w
    assert lifted.project(3) == w
    assert lifted.reduced().order == 3
    with pytest.raises(InputError):
        CycloNumber.zeta(12).project(3)


def test_rational_collapse():
    # an order-12 combination that happens to be rational
    z = CycloNumber.zeta(12)
    v = z ** 6 + z ** -6  # -1 + -1
    assert v.order == 1 and v.rational_value() == -2


def test_embed_known_values():
    import mpmath

    i = CycloNumber.zeta(4)
    assert abs(i.embed(128) - mpmath.mpc(0, 1)) < mpmath.mpf(2) ** -120
    # 2*cos(2*pi/5) = (sqrt(5) - 1)/2
    z5 = CycloNumber.zeta(5)
    val = (z5 + z5.conjugate()).embed(160)
    with mpmath.workprec(200):
        target = (mpmath.sqrt(5) - 1) / 2
        assert abs(val.real - target) < mpmath.mpf(2) ** -150
        assert abs(val.imag) < mpmath.mpf(2) ** -150


def test_embed_precision_floor():
    with pytest.raises(InputError):
        CycloNumber.zeta(3).embed(32)


def test_parse_roundtrip():
    a = parse_cyclo("1/2 - z + 7/3*z^3", 8)
    assert parse_cyclo(a.to_literal(), 8) == a
    assert parse_cyclo("(1 + z)*(1 + z^2)", 3).is_one()
    assert parse_cyclo("z^-1", 5) == CycloNumber.zeta(5, 4)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError):
        parse_cyclo("1 +", 3)
    with pytest.raises(ParseError):
        parse_cyclo("1 & 2", 3)
    with pytest.raises(ParseError):
        parse_cyclo("3/0", 3)


def test_floats_are_rejected():
    with pytest.raises(InputError):
        rational(0.5)
    assert rational("3/4") == QQ(3, 4)


def test_not_hashable():
    with pytest.raises(TypeError):
        hash(CycloNumber.zeta(3))


@st.composite
def cyclo_numbers(draw):
    order = draw(st.sampled_from([1, 3, 4, 5, 6, 8, 12]))
    d = field_degree(order)
    nums = draw(st.lists(st.integers(min_value=-20, max_value=20), min_size=d, max_size=d))
    dens = draw(st.lists(st.integers(min_value=1, max_value=8), min_size=d, max_size=d))
    return CycloNumber(order, [QQ(n, m) for n, m in zip(nums, dens)])


@settings(max_examples=60, deadline=None)
@given(cyclo_numbers(), cyclo_numbers(), cyclo_numbers())
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert a + (-a) == 0


@settings(max_examples=40, deadline=None)
@given(cyclo_numbers())
def test_embedding_is_multiplicative(a):
    import mpmath

    if a.is_zero():
        return
    with mpmath.workprec(200):
        prod = (a * a.conjugate()).embed(128)
        direct = a.embed(128) * a.embed(128).conjugate()
        assert abs(prod - direct) < mpmath.mpf(2) ** -100


@settings(max_examples=40, deadline=None)
@given(cyclo_numbers())
def test_inverse_roundtrip(a):
    if a.is_zero():
        return
    assert (a.inverse() * a).is_one()
