from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from schurlab.detident import polynomial
from schurlab.preserver import (
    InconsistentParameters,
    TestFamily,
    admissible_characterize,
    build_test_matrix,
    fh_predict,
    geometric_family,
    hl_conclusion_check,
    hl_hypothesis_scan,
    is_admissible,
    maclaurin_sign_check,
    power_function,
    power_profile,
    random_family,
)
from schurlab.profile import ProfileTooShort, exp_profile, monomial_profile, polynomial_profile, profile_from_list
from schurlab.psd import is_psd_exact
from schurlab.rng import SplitMix64

F = Fraction


def test_build_test_matrix_examples():
    A = build_test_matrix(0, 1, [F(1, 2), F(1, 3)])
    assert A.to_lists() == [[F(1, 4), F(1, 6)], [F(1, 6), F(1, 9)]]
    assert build_test_matrix(2, 0, [F(1, 2), F(1, 3)]).to_lists() == [[2, 2], [2, 2]]


@given(st.fractions(0, 5, max_denominator=10), st.fractions(0, 5, max_denominator=10))
def test_test_matrix_is_psd(a, t):
    assert is_psd_exact(build_test_matrix(a, t, [F(1, 2), F(1, 3), F(1, 7)]).to_lists()).is_psd


def test_family_validation():
    with pytest.raises(ValueError):
        TestFamily(0, 1, (F(1, 2), F(1, 2)))
    with pytest.raises(ValueError):
        TestFamily(0, 1, (F(3, 2),))
    assert TestFamily(0, 1, (F(3, 2),), relaxed=True).n == 1
    with pytest.raises(ValueError):
        TestFamily(-1, 1, (F(1, 2),))
    assert geometric_family(3).u == (F(1, 2), F(1, 4), F(1, 8))
    fam = random_family(SplitMix64(3), 4)
    assert fam.n == 4 and all(0 < x < 1 for x in fam.u)


def test_admissible_examples():
    assert is_admissible((0, 1), exp_profile(), 2)
    assert not is_admissible((0, 2), exp_profile(), 2)
    x2 = monomial_profile(2)
    assert all(is_admissible(t, x2, 2) for t in combinations(range(6), 2))


def test_characterize_examples():
    cls = admissible_characterize(exp_profile(), 3)
    assert str(cls) == "threshold (0,1,2), sum 3"
    assert cls.admits((0, 1, 2)) and not cls.admits((0, 1, 3))
    assert is_admissible((0, 1, 2), exp_profile(), 3)
    assert not is_admissible((0, 1, 3), exp_profile(), 3)
    two = polynomial_profile([1, 0, 0, 1])
    assert str(admissible_characterize(two, 3)) == "ALL_ADMISSIBLE"
    assert str(admissible_characterize(monomial_profile(2), 2)) == "ALL_ADMISSIBLE"


def test_short_profile_is_undecidable():
    with pytest.raises(ProfileTooShort):
        admissible_characterize(profile_from_list([1, 0]), 3)
    with pytest.raises(ProfileTooShort):
        is_admissible((0, 5), exp_profile(3), 2)


support = st.lists(st.integers(0, 9), max_size=5, unique=True)


@given(support, st.integers(1, 4))
def test_brute_force_matches_characterization(sup, n):
    prof = polynomial_profile([1 if k in sup else 0 for k in range(10)] or [0])
    cls = admissible_characterize(prof, n)
    for tup in combinations(range(7), n):
        assert is_admissible(tup, prof, n) == cls.admits(tup)


def test_conclusion_examples():
    rep = hl_conclusion_check(exp_profile(), 3, 0, 3)
    assert rep.passed and rep.orders == (0, 1, 2)
    rep = hl_conclusion_check(profile_from_list([1, 1, -1, 1]), 3)
    assert not rep.passed and rep.failed_at == 2
    assert hl_conclusion_check(profile_from_list([1, 1, -1]), 2).passed


def test_conclusion_reduced_count():
    rep = hl_conclusion_check(monomial_profile(2), 3)
    assert rep.reduced and rep.passed and rep.orders == (2,)


def test_conclusion_parameter_errors():
    with pytest.raises(InconsistentParameters):
        hl_conclusion_check(exp_profile(), 2, 3, 2)
    with pytest.raises(InconsistentParameters):
        hl_conclusion_check(exp_profile(), 2, 1, 2)


def test_sign_check_examples():
    assert maclaurin_sign_check([1, 1, -1, 1, 1], 2, "unbounded").ok
    bad = maclaurin_sign_check([1, 1, -1, 1, 1], 3, "unbounded")
    assert not bad.ok and bad.offending_index == 2
    assert maclaurin_sign_check([-1, 5, 5], 1).offending_index == 0
    tail = maclaurin_sign_check([1, 1, 1, -1], 2, "unbounded")
    assert not tail.ok and tail.direction == "upper" and tail.offending_index == 3
    assert maclaurin_sign_check([1, 1, 1, -1], 2, "bounded").ok


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=8), st.integers(1, 4))
def test_sign_rule_reversal_symmetry(cs, n):
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        return
    fwd = maclaurin_sign_check(cs, n, "unbounded").ok
    back = maclaurin_sign_check(list(reversed(cs)), n, "unbounded").ok
    assert fwd == back


def test_fh_predict_examples():
    assert not fh_predict(0.5, 3)
    assert fh_predict(2, 5)
    assert fh_predict(3.5, 5)
    assert fh_predict(0.5, 2)


def test_scan_square_root_falsified_at_n3():
    fam = TestFamily(1, 1, (0.2, 0.5, 0.8))
    rep = hl_hypothesis_scan(power_function(0.5), fam, 200, derivs=power_profile(0.5, 1))
    assert rep.violations and not rep.passed
    rep = hl_hypothesis_scan(power_function(0.5), TestFamily(1, 1, (0.2, 0.5)), 200)
    assert not rep.violations


def test_scan_square_is_exact_and_clean():
    rep = hl_hypothesis_scan(polynomial([0, 0, 1]), geometric_family(3, a=1), 50)
    assert rep.method == "exact" and not rep.violations and rep.passed


def test_scan_report_json():
    rep = hl_hypothesis_scan(polynomial([1, 1, -1, 1, 1]), geometric_family(3), 20)
    out = rep.to_json()
    assert out["schema"] == 1 and out["status"] == "violated"
    assert all(isinstance(v["t"], str) for v in out["violations"])


def test_scan_rejects_grid_outside_range():
    with pytest.raises(ValueError):
        hl_hypothesis_scan(polynomial([1]), geometric_family(2), [F(2)])
