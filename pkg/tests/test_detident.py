import math
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from schurlab.detident import (
    DimensionTooLarge,
    cauchy_binet_series,
    cauchy_rhs,
    delta_series,
    det_bareiss,
    det_laplace,
    det_ring,
    entrywise_apply,
    frobenius_kernel,
    geometric,
    phorn_derivative,
    polynomial,
    schlosser_rhs,
    symbolic_vectors,
    tsymm_rhs,
    verify_cauchy,
    verify_frobenius,
    verify_phorn,
    verify_tsymm,
)
from schurlab.profile import profile_from_list
from schurlab.ring import MultiPoly, RingMatrix, TruncSeries, outer
from schurlab.symmetric import moment_matrix, vandermonde

U, V = [1, 2], [1, 3]


def leibniz(rows):
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = (-1) ** sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        total += sign * math.prod(rows[i][perm[i]] for i in range(n))
    return total


def coeffs(s):
    return [Fraction(c) for c in s.coeffs]


def test_det_examples():
    names = ("a", "b", "c", "d")
    a, b, c, d = (MultiPoly.var(i, 4, names) for i in range(4))
    assert det_ring(RingMatrix([[a, b], [c, d]])) == a * d - b * c
    us = [MultiPoly.var(i, 3) for i in range(3)]
    assert det_ring(moment_matrix(us)) == (us[1] - us[0]) * (us[2] - us[0]) * (us[2] - us[1])
    assert det_ring(outer(U, V)) == 0


@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=4, max_size=4))
def test_determinant_engines_agree(rows):
    exact = leibniz(rows)
    fr = [[Fraction(x) for x in r] for r in rows]
    assert det_bareiss(fr) == exact
    assert det_laplace(fr) == exact


def test_dimension_bound(monkeypatch):
    big = RingMatrix([[Fraction(int(i == j)) for j in range(7)] for i in range(7)])
    with pytest.raises(DimensionTooLarge):
        det_ring(big)
    monkeypatch.setenv("SCHURLAB_MAX_N", "8")
    assert det_ring(big) == 1


def test_entrywise_apply_examples():
    img = entrywise_apply(geometric(3), RingMatrix([[Fraction(6)]]), 3)
    assert coeffs(img.entries[0][0]) == [1, 6, 36, 216]
    zero = entrywise_apply(polynomial([0]), outer(U, V), 2)
    assert all(e.is_zero() for r in zero.entries for e in r)
    grid = entrywise_apply(geometric(1), outer(U, V), 1)
    assert [[e.coeffs[1] for e in r] for r in grid.entries] == [[1, 3], [2, 6]]


def test_delta_series_reference():
    assert coeffs(delta_series(geometric(3), 0, U, V, 3)) == [0, 2, 24, 194]


def test_single_monomial_gives_zero_for_n2():
    for k in range(5):
        f = polynomial([0] * k + [3])
        assert delta_series(f, 0, U, V, 8).is_zero()


def test_phorn_derivative_examples():
    prof = geometric(6).profile(6)
    assert phorn_derivative(prof, U, V, 1) == 2
    assert phorn_derivative(prof, U, V, 2) == 48
    assert phorn_derivative(prof, [1, 2, 4], [1, 3, 5], 2) == 0


def test_cauchy_examples():
    assert coeffs(cauchy_rhs(U, V, 3)) == [0, 2, 24, 194]
    assert coeffs(tsymm_rhs(geometric(3), U, V, 3)) == [0, 2, 24, 194]
    rep = verify_cauchy(1, [Fraction(2)], [Fraction(5)], 4)
    assert rep.match and coeffs(rep.lhs) == [10 ** k for k in range(5)]


def test_cauchy_symbolic_n3():
    u, v = symbolic_vectors(3)
    rep = verify_cauchy(3, u, v, 4)
    assert rep.match
    assert all(rep.lhs.coeffs[k].is_zero() for k in range(3))
    assert rep.lhs.coeffs[3] == vandermonde(u) * vandermonde(v)


def test_frobenius_examples():
    rep = verify_frobenius(2, 2, U, V, 2)
    assert rep.match and coeffs(rep.lhs) == [0, -2, -24]
    assert coeffs(schlosser_rhs(2, U, V, 2)) == [0, -2, -24]
    assert verify_frobenius(3, 1, [1, 2, 3], [0, 1, -1], 6).lhs.is_zero()
    assert verify_frobenius(2, 0, U, V, 6).lhs == verify_cauchy(2, U, V, 6).lhs


def test_tsymm_symbolic_n2():
    u, v = symbolic_vectors(2)
    assert verify_tsymm(polynomial([1, -2, 3, 1, 5]), u, v, 4).match


def test_cauchy_binet_examples():
    assert cauchy_binet_series(polynomial([1, 1]), [1, 2, 3], [1, -1, 2], 5).is_zero()
    f = polynomial([0, 0, 0, 7])
    got = cauchy_binet_series(f, [Fraction(2)], [Fraction(3)], 4)
    assert coeffs(got) == [0, 0, 0, 7 * 6 ** 3, 0]


def test_delta_series_rejects_bad_input():
    with pytest.raises(ValueError):
        delta_series(geometric(3), 1, U, V, 3)
    with pytest.raises(ValueError):
        delta_series(geometric(2), 0, U, V, 5)
    with pytest.raises(ValueError):
        delta_series(geometric(3), 0, [1, 2], [1], 3)


vec = st.lists(st.integers(-3, 3), min_size=1, max_size=3, unique=True)
fcoef = st.lists(st.integers(-4, 4), min_size=1, max_size=7)


@given(vec, vec, fcoef)
def test_three_oracles_agree(u, v, cs):
    n = min(len(u), len(v))
    u, v = [Fraction(x) for x in u[:n]], [Fraction(x) for x in v[:n]]
    f = polynomial(cs)
    lhs = delta_series(f, 0, u, v, 8)
    assert lhs == tsymm_rhs(f, u, v, 8) == cauchy_binet_series(f, u, v, 8)
    assert all(lhs.coeffs[k] == 0 for k in range(min(n * (n - 1) // 2, 9)))


@given(vec, vec, fcoef)
def test_phorn_matches_series(u, v, cs):
    n = min(len(u), len(v))
    assert verify_phorn(polynomial(cs), u[:n], v[:n], 8).match


@given(vec, vec, st.lists(st.integers(0, 8), max_size=2, unique=True))
def test_sparse_profile_gives_zero(u, v, support):
    n = min(len(u), len(v))
    u, v = u[:n], v[:n]
    vals = [1 if k in support else 0 for k in range(9)]
    prof = profile_from_list(vals, complete=True)
    if len(support) <= n - 1:
        assert all(phorn_derivative(prof, u, v, M) == 0 for M in range(9))


@given(vec, vec, st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_frobenius_three_way(u, v, c):
    n = min(len(u), len(v), 2)
    assert verify_frobenius(n, c, u[:n], v[:n], 6).match
