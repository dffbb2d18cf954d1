from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from schurlab.ring import (
    CarrierMismatch,
    InexactDivision,
    MultiPoly,
    RingMatrix,
    TruncSeries,
    as_rational,
    divide_exact,
    multinomial,
    outer,
    render_rational,
    series_compose_linear,
    series_mul,
)

u1 = MultiPoly.var(0, 2)
u2 = MultiPoly.var(1, 2)


def test_addition_examples():
    assert (u1 + (-u1)).is_zero()
    assert str((u1 + u2) + u2) == "u1 + 2*u2"
    assert str(u1 * u2 + u1) == "u1*u2 + u1"


def test_multiplication_examples():
    assert (u2 - u1) * (u2 + u1) == u2 ** 2 - u1 ** 2
    p = u1 ** 2 + 3 * u2
    assert p * 1 == p
    assert str((u1 + u2) * (u1 * u2)) == "u1^2*u2 + u1*u2^2"


def test_exact_division_examples():
    assert divide_exact(u2 ** 2 - u1 ** 2, u2 - u1) == u1 + u2
    assert divide_exact(MultiPoly.zero(2), u2 - u1).is_zero()
    assert divide_exact(u1 * u2 ** 2 - u1 ** 2 * u2, u2 - u1) == u1 * u2


def test_inexact_division_raises():
    with pytest.raises(InexactDivision):
        divide_exact(u1 ** 2 + 1, u1 - u2)
    with pytest.raises(ZeroDivisionError):
        divide_exact(u1, MultiPoly.zero(2))


def test_rendering_uses_rationals():
    p = MultiPoly.monomial((2, 0, 1), Fraction(3, 2), names=("u1", "u2", "v3")) + MultiPoly.var(1, 3, names=("u1", "u2", "v3"))
    assert str(p) == "3/2*u1^2*v3 + u2"
    assert render_rational(Fraction(-4, 6)) == "-2/3"


def test_as_rational_rejects_floats():
    assert as_rational("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_series_examples():
    assert str(TruncSeries([1, 1], 2) * TruncSeries([1, -1], 2)) == "1 - t^2 + O(t^3)"
    geo = TruncSeries([1, 1, 1, 1], 3)
    assert [int(c) for c in (geo * geo).coeffs] == [1, 2, 3, 4]
    assert (geo * 0).is_zero()


def test_series_mixed_cutoff_truncates():
    s = TruncSeries([1, 1, 1], 2) + TruncSeries([1, 1, 1, 1, 1], 4)
    assert s.cutoff == 2


def test_series_carrier_mismatch():
    with pytest.raises(CarrierMismatch):
        series_mul(TruncSeries([1, 1], 1), TruncSeries([u1, u2], 1))


def test_compose_linear_examples():
    assert str(series_compose_linear(TruncSeries([1, 1], 1), 6)) == "1 + 6*t + O(t^2)"
    names = ("u1", "v1")
    x = MultiPoly.var(0, 2, names) * MultiPoly.var(1, 2, names)
    got = series_compose_linear(TruncSeries([1, 1, 1, 1], 3), x)
    assert all(got.coeffs[k] == x ** k for k in range(4))


def test_ring_matrix_rejects_mixed_carriers():
    with pytest.raises((CarrierMismatch, TypeError, ValueError)):
        RingMatrix([[Fraction(1), u1], [u2, Fraction(0)]])
    with pytest.raises(ValueError):
        RingMatrix([[Fraction(1), Fraction(2)]])


def test_outer_and_multinomial():
    m = outer([1, 2], [1, 3])
    assert m.to_lists() == [[1, 3], [2, 6]]
    assert multinomial(3, [1, 2]) == 3
    assert multinomial(4, [2, 1, 1]) == 12


small = st.integers(-5, 5)
polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small, max_size=5).map(
    lambda terms: MultiPoly(2, terms)
)


@given(polys, polys, polys)
def test_poly_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(polys, polys)
def test_divide_exact_recovers_factor(p, q):
    if q.is_zero():
        return
    assert divide_exact(p * q, q) == p


@given(polys, st.tuples(small, small))
def test_evaluation_is_a_homomorphism(p, pt):
    q = p * p + p
    assert q.evaluate(pt) == p.evaluate(pt) ** 2 + p.evaluate(pt)


series = st.lists(small, min_size=1, max_size=6).map(lambda c: TruncSeries(c, 5))


@given(series, series)
def test_series_derivative_product_rule(f, g):
    assert (f * g).derivative() == (f.derivative() * g + f * g.derivative())


@given(series, small)
def test_series_evaluate_matches_coefficients(f, x):
    assert f.evaluate(x) == sum(c * x ** k for k, c in enumerate(f.coeffs))
