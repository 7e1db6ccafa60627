"""Monodromy-driven torsion, Alexander invariant, and order comparisons."""

import random

import mpmath
import pytest

from torsionlab.corpus import random_monodromy
from torsionlab.errors import HypothesisError, InputError
from torsionlab.fileio import data_path, load_monodromy
from torsionlab.laurent import RatFunc, parse_laurent
from torsionlab.linalg import Matrix
from torsionlab.mapping_torus import (MonodromyInput, alexander_from_monodromy,
                                      is_globally_semisimple,
                                      is_semisimple_at_one,
                                      monodromy_order_report, quotient_I,
                                      torsion_from_monodromy)
from torsionlab.scalars import CycloNumber


def C(q):
    return CycloNumber.from_rational(q)


def M(rows):
    n = len(rows)
    return Matrix(n, n, [[C(v) for v in row] for row in rows])


def load(name):
    return load_monodromy(data_path(name + ".toml"))


# -- fixed examples -----------------------------------------------------------------


def test_identity_keeps_everything_fixed():
    mono = load("mono_identity")
    q = quotient_I(mono.matrix)
    assert (q.beta, q.i_dim) == (2, 0)
    tor = torsion_from_monodromy(mono.matrix)
    assert tor.value == 1
    assert tor.determinant == C(1)
    assert tor.globally_semisimple and not tor.outside_hypothesis
    rep = monodromy_order_report(mono)
    assert (rep.ord_invariant, rep.neg_beta) == (-2, -2)
    assert rep.orders_equal and not rep.strict_inequality
    assert rep.limit_checked and rep.limit_agrees
    assert rep.limit_value == 1


def test_minus_identity():
    mono = load("mono_minus_identity")
    tor = torsion_from_monodromy(mono.matrix)
    assert tor.beta == 0 and tor.i_dim == 2
    assert tor.value == mpmath.mpf("0.25")
    rep = monodromy_order_report(mono)
    assert rep.ord_invariant == 0 == rep.neg_beta
    assert rep.limit_value == mpmath.mpf("0.25")
    assert rep.limit_agrees


def test_quarter_rotation():
    mono = load("mono_rotation")
    tor = torsion_from_monodromy(mono.matrix)
    assert tor.determinant == C(2)
    assert tor.value == mpmath.mpf("0.5")
    assert alexander_from_monodromy(mono.matrix) == RatFunc(
        parse_laurent("1"), parse_laurent("1 + t^2"))


def test_single_scalar_monodromy():
    tor = torsion_from_monodromy(M([[2]]))
    assert tor.value == 1 and tor.beta == 0


def test_jordan_block_at_one_escapes_the_hypothesis():
    mono = load("mono_jordan")
    tor = torsion_from_monodromy(mono.matrix)
    assert tor.value == mpmath.inf
    assert tor.outside_hypothesis and not tor.globally_semisimple
    rep = monodromy_order_report(mono)
    assert (rep.beta, rep.i_dim) == (1, 1)
    assert rep.ord_invariant == -2 and rep.neg_beta == -1
    assert rep.strict_inequality and not rep.orders_equal
    assert not rep.semisimple_at_one
    assert rep.equality_matches_semisimplicity
    assert not rep.limit_checked and rep.limit_value is None
    assert alexander_from_monodromy(mono.matrix) == RatFunc(
        parse_laurent("1"), parse_laurent("1 - 2*t + t^2"))


def test_jordan_block_away_from_one_is_still_fine_at_one():
    f = M([[2, 1], [0, 2]])
    assert not is_globally_semisimple(f)
    assert is_semisimple_at_one(f)
    tor = torsion_from_monodromy(f)
    assert tor.value == 1
    assert tor.outside_hypothesis  # flagged even though 1 is not an eigenvalue
    rep = monodromy_order_report(MonodromyInput(2, 1, f, True))
    assert rep.orders_equal and rep.limit_checked and rep.limit_agrees


# -- random families ----------------------------------------------------------------


def test_semisimple_monodromies_reach_equality():
    rng = random.Random(21)
    for dim in (2, 3, 4, 5):
        for ones in range(dim + 1):
            f = random_monodromy(rng, dim, ones)
            rep = monodromy_order_report(MonodromyInput(dim, 1, f, True))
            assert rep.beta == ones
            assert rep.ord_invariant == -ones
            assert rep.orders_equal and rep.semisimple_at_one
            assert rep.limit_checked and rep.limit_agrees


def test_jordan_monodromies_stay_strict():
    rng = random.Random(22)
    for dim in (2, 3, 4):
        for ones in range(2, dim + 1):
            f = random_monodromy(rng, dim, ones, kind="jordan_at_one")
            rep = monodromy_order_report(MonodromyInput(dim, 1, f, True))
            assert rep.beta == ones - 1
            assert rep.ord_invariant == -ones
            assert rep.strict_inequality
            assert not rep.semisimple_at_one
            assert rep.equality_matches_semisimplicity
            assert torsion_from_monodromy(f).value == mpmath.inf


def test_conjugation_invariance():
    p = M([[1, 1], [0, 1]])
    pinv = M([[1, -1], [0, 1]])
    zero = C(0)
    for name in ("mono_rotation", "mono_minus_identity"):
        f = load(name).matrix
        g = p.mul(f, zero).mul(pinv, zero)
        a, b = torsion_from_monodromy(f), torsion_from_monodromy(g)
        assert a.determinant == b.determinant
        assert a.value == b.value
        ra = monodromy_order_report(MonodromyInput(2, 1, f, True))
        rb = monodromy_order_report(MonodromyInput(2, 1, g, True))
        assert (ra.beta, ra.ord_invariant, ra.limit_value) == \
            (rb.beta, rb.ord_invariant, rb.limit_value)


# -- input validation ---------------------------------------------------------------


def test_monodromy_input_validation():
    f = M([[1, 0], [0, 1]])
    with pytest.raises(InputError, match="nonnegative"):
        MonodromyInput(-1, 1, f, True)
    with pytest.raises(InputError, match="order"):
        MonodromyInput(2, 0, f, True)
    with pytest.raises(InputError, match="2x2"):
        MonodromyInput(2, 1, M([[1]]), True)


def test_non_square_matrix_rejected():
    with pytest.raises(InputError, match="square"):
        quotient_I(Matrix(1, 2, [[C(1), C(0)]]))


def test_order_report_requires_the_vanishing_flag():
    mono = MonodromyInput(2, 1, M([[1, 0], [0, 1]]), False)
    with pytest.raises(HypothesisError, match="h0_vanishes"):
        monodromy_order_report(mono)
