import random

import pytest

from torsionlab import corpus
from torsionlab.complexes import (
    BasedComplex,
    alexander_invariant,
    difference_delta,
    difference_unit,
    duality_dimension_report,
    dualize,
    homology,
    reidemeister_torsion,
    specialize_at_one,
)
from torsionlab.errors import HypothesisError, InputError
from torsionlab.laurent import LaurentPoly, RatFunc, parse_laurent
from torsionlab.linalg import Matrix
from torsionlab.scalars import CycloNumber


def L(s, order=1):
    return parse_laurent(s, zeta_order=order)


def mat(rows, ncols=None):
    return Matrix.from_rows(
        [[L(x) if isinstance(x, str) else LaurentPoly.constant(x) for x in r]
         for r in rows],
        ncols=ncols)


def elementary(entry, lo=0):
    p = L(entry) if isinstance(entry, str) else entry
    return BasedComplex(lo, (1, 1), (Matrix(1, 1, [[p]]),))


# -- construction -----------------------------------------------------------------


def test_shape_validation():
    with pytest.raises(InputError):
        BasedComplex(0, (1, 2), (Matrix(1, 1, [[L("t")]]),))
    with pytest.raises(InputError):
        BasedComplex(0, (1, 1), ())
    with pytest.raises(InputError):
        BasedComplex(0, (), ())


def test_square_to_zero_enforced():
    d1 = mat([["t - 1"]])
    d2 = mat([["t"]])
    with pytest.raises(InputError, match="square to zero"):
        BasedComplex(0, (1, 1, 1), (d1, d2))
    # and a legitimate three-term complex is accepted
    ok = BasedComplex(0, (1, 2, 1),
                      (mat([["t - 1", "0"]]), mat([["0"], ["t + 2"]])))
    assert ok.hi == 2


def test_boundary_off_window_is_zero_shaped():
    c = elementary("t - 1")
    assert c.boundary(0).shape == (0, 1)
    assert c.boundary(2).shape == (1, 0)
    assert c.boundary(5).shape == (0, 0)
    assert c.rank(1) == 1 and c.rank(7) == 0


def test_default_and_custom_labels():
    c = elementary("t - 1")
    assert c.labels_at(0) == ("c0.0",)
    custom = BasedComplex(0, (1, 1), (mat([["t - 1"]]),),
                          labels=[["a"], ["b"]])
    assert custom.labels_at(1) == ("b",)
    with pytest.raises(InputError):
        BasedComplex(0, (1, 1), (mat([["t - 1"]]),), labels=[["a", "x"], ["b"]])


def test_direct_sum_window_union():
    a = elementary("t - 1", lo=0)
    b = elementary("t - 2", lo=2)
    s = a.direct_sum(b)
    assert (s.lo, s.hi) == (0, 3)
    assert s.ranks == (1, 1, 1, 1)
    # the gap boundary between the pieces is the zero 1x1 block
    assert s.boundary(2).is_zero()


# -- homology ----------------------------------------------------------------------


def test_homology_of_elementary_complex():
    h = homology(elementary("t - 1"))
    assert h.free_ranks == (0, 0)
    assert [f.to_literal() for f in h.factors(0)] == ["-1 + t"]
    assert h.factors(1) == ()
    assert h.dimension(0) == 1 and h.dimension(1) == 0


def test_homology_zero_boundary_is_free():
    c = BasedComplex(0, (1, 1), (Matrix.zeros(1, 1, LaurentPoly.zero()),))
    h = homology(c)
    assert h.free_ranks == (1, 1)
    assert not h.is_torsion()
    assert h.first_nontorsion_degree() == 0
    assert h.dimension(0) is None


def test_homology_squared_factor():
    h = homology(elementary("(t - 1)^2"))
    assert h.char_poly(0) == L("t^2 - 2*t + 1")
    assert h.max_power_of_t_minus_one(0) == 2
    assert h.order_at_one(0) == 2


def test_homology_strips_unit_content():
    # t*(t - 1) generates the same ideal as t - 1
    h = homology(elementary("t^2 - t"))
    assert [f.to_literal() for f in h.factors(0)] == ["-1 + t"]


def test_homology_invariant_factors_divide_in_order():
    d = mat([["t - 1", "0"], ["0", "(t - 1) * (t - 2)"]])
    h = homology(BasedComplex.from_single_matrix(d))
    fs = h.factors(0)
    assert len(fs) == 2
    assert fs[1].divmod(fs[0])[1].is_zero()
    assert h.dimension(0) == 3


def test_homology_of_wider_complex_against_rank_count():
    # kernel/image bookkeeping across three degrees
    d2 = mat([["t"], ["-1"]])
    d1 = mat([["1", "t"]])
    c = BasedComplex(0, (1, 2, 1), (d1, d2))
    h = homology(c)
    assert h.is_torsion()
    # chain is exact here: d1 surjects, ker d1 = im d2
    assert all(h.dimension(i) == 0 for i in (0, 1, 2))


# -- Alexander invariant -----------------------------------------------------------


def test_alexander_invariant_elementary():
    c = elementary("t - 1")
    assert alexander_invariant(c, "chain") == RatFunc.from_laurent(L("t - 1"))
    assert alexander_invariant(c, "cochain") == RatFunc.one() / L("t - 1")


def test_alexander_invariant_acyclic_is_one():
    assert alexander_invariant(elementary("1")).is_one()


def test_alexander_invariant_needs_torsion():
    c = BasedComplex(0, (1, 1), (Matrix.zeros(1, 1, LaurentPoly.zero()),))
    with pytest.raises(HypothesisError, match="degree 0"):
        alexander_invariant(c)


def test_alexander_invariant_degree_parity():
    # same matrix placed at odd degree inverts the contribution
    even = alexander_invariant(elementary("t - 2", lo=0))
    odd = alexander_invariant(elementary("t - 2", lo=1))
    assert even * odd == RatFunc.one()
    assert even == RatFunc.from_laurent(L("t - 2"))


def test_alexander_invariant_rejects_unknown_convention():
    with pytest.raises(InputError):
        alexander_invariant(elementary("t - 1"), "upside-down")


# -- torsion -----------------------------------------------------------------------


def test_torsion_elementary():
    tau, cert = reidemeister_torsion(elementary("t - 1"))
    assert tau.equals_up_to_unit(RatFunc.from_laurent(L("t - 1")))
    assert cert.pivot_sets == ((), (0,))
    assert tau == cert.replay()


def test_torsion_isomorphism_complex():
    tau, _ = reidemeister_torsion(elementary("1"))
    assert tau.is_one()


def test_torsion_multiplicative_under_direct_sum():
    c = elementary("t - 1").direct_sum(elementary("1"))
    tau, _ = reidemeister_torsion(c)
    assert tau.equals_up_to_unit(RatFunc.from_laurent(L("t - 1")))


def test_torsion_rejects_non_acyclic():
    c = BasedComplex(0, (1, 1), (Matrix.zeros(1, 1, LaurentPoly.zero()),))
    with pytest.raises(HypothesisError, match="degree"):
        reidemeister_torsion(c)


def test_torsion_certificate_blocks_are_square():
    rng = random.Random(5)
    c = corpus.random_complex(rng)
    tau, cert = reidemeister_torsion(c)
    for j, b in enumerate(cert.blocks):
        assert b.nrows == b.ncols == c.ranks[j]
    assert not any(d.is_zero() for d in cert.block_determinants())
    assert cert.replay() == tau


def test_torsion_matches_invariant_on_three_term_exact_complex():
    d2 = mat([["t"], ["-1"]])
    d1 = mat([["1", "t"]])
    c = BasedComplex(0, (1, 2, 1), (d1, d2))
    tau, _ = reidemeister_torsion(c)
    assert tau.is_unit()  # acyclic over the ring already


# -- difference --------------------------------------------------------------------


def test_difference_unit_elementary():
    unit, k = difference_unit(elementary("t - 1"))
    assert unit == CycloNumber.from_rational(1)
    assert k == 0


def test_difference_scales_with_base_rescaling():
    value, _ = difference_delta(elementary("2*t - 2"))
    assert value == 2
    value_half, _ = difference_delta(elementary("t/2 - 1/2"))
    assert value_half == 0.5


def test_difference_delta_acyclic_identity():
    value, k = difference_delta(elementary("1"))
    assert value == 1 and k == 0


def test_difference_tracks_t_power():
    unit, k = difference_unit(elementary("t^3 - t^2"))
    assert k == 2
    assert unit == CycloNumber.from_rational(1)


# -- dualize -----------------------------------------------------------------------


def test_dualize_is_an_involution():
    rng = random.Random(11)
    for _ in range(5):
        c = corpus.random_complex(rng)
        assert dualize(dualize(c)) == c


def test_dualize_window_reflection():
    c = BasedComplex(0, (1, 2, 1),
                     (mat([["t - 1", "0"]]), mat([["0"], ["t + 2"]])))
    d = dualize(c)
    assert (d.lo, d.hi) == (-1, 1)
    assert d.ranks == (1, 2, 1)
    assert d.labels_at(1) == ("c0.0*",)


def test_dualize_conjugates_entries():
    z4 = CycloNumber.zeta(4)
    entry = LaurentPoly.t_minus_one().scale(z4)
    c = elementary(entry)
    d = dualize(c)
    assert d.boundary(1).entry(0, 0) == entry.scale(CycloNumber.from_rational(-1))


def test_dual_of_elementary_has_reciprocal_cochain_invariant():
    c = elementary("t - 1")
    got = alexander_invariant(dualize(c), "cochain")
    assert got == RatFunc.one() / L("t - 1")


def test_duality_product_is_conjugation_quotient():
    # A(dual, cochain) * A(chain) = A / conj(A); equals one when A is
    # conjugation-stable, which the corpus guarantees
    c = elementary("t - 1", lo=1).direct_sum(elementary("t - 2", lo=0))
    a = alexander_invariant(c, "chain")
    prod = alexander_invariant(dualize(c), "cochain") * a
    assert prod == a / a.sigma()
    assert prod.is_one()


# -- specialization at t = 1 -------------------------------------------------------


def test_specialize_away_from_one():
    s = specialize_at_one(elementary("t - 2"))
    assert s.applicable
    minus_one = CycloNumber.from_rational(-1)
    assert s.specialized_torsion == minus_one
    assert s.torsion_at_one == minus_one
    assert s.torsion_matches


def test_specialize_blocked_by_t_minus_one():
    s = specialize_at_one(elementary("t - 1"))
    assert not s.applicable
    assert s.blocking[0][0] == 0
    assert "t - 1" in s.blocking[0][1]
    assert s.torsion_matches is None


def test_specialize_identity_complex():
    s = specialize_at_one(elementary("1"))
    assert s.applicable
    assert s.specialized_torsion == CycloNumber.from_rational(1)


def test_specialize_blocked_by_free_homology():
    c = BasedComplex(0, (1, 1), (Matrix.zeros(1, 1, LaurentPoly.zero()),))
    s = specialize_at_one(c)
    assert not s.applicable
    assert "free rank" in s.blocking[0][1]


def test_specialized_boundaries_are_evaluations():
    s = specialize_at_one(elementary("t^2 - 3*t + 1"))
    assert s.boundaries_at_one[0].entry(0, 0) == CycloNumber.from_rational(-1)


# -- duality dimension report ------------------------------------------------------


def test_duality_report_on_window_outside_zero_three():
    rep = duality_dimension_report(elementary("t - 1", lo=2))
    assert not rep.applicable
    assert "degrees" in rep.reason


def test_duality_report_elementary():
    rep = duality_dimension_report(elementary("t - 1"))
    assert rep.applicable
    assert rep.cohomology_dimensions == (0, 1, 0, 0)
    assert rep.pairing_holds and rep.vanishing_holds


def test_duality_report_free_homology_not_applicable():
    c = BasedComplex(0, (1, 1), (Matrix.zeros(1, 1, LaurentPoly.zero()),))
    rep = duality_dimension_report(c)
    assert not rep.applicable
    assert "free summand" in rep.reason


def test_duality_report_asymmetric_dimensions():
    # homology concentrated in degree 1 makes dim H^2 = 1 with dim H^0 = 0
    c = elementary("t - 2", lo=1).direct_sum(elementary("1", lo=0))
    rep = duality_dimension_report(c)
    assert rep.applicable
    assert rep.cohomology_dimensions == (0, 0, 1, 0)
    assert not rep.pairing_holds
    assert rep.vanishing_holds
