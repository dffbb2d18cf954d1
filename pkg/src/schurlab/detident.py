"""Determinants over the ring carriers and the determinant expansions of
entrywise-transformed rank-one matrices.

``delta_series`` computes det f[a + t u v^T] directly as a truncated
series in t. ``tsymm_rhs`` builds the same series from Schur polynomials,
and ``cauchy_binet_series`` from minors of two moment matrices, so the
three can be played against each other.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .profile import DerivProfile, ProfileTooShort
from .ring import (
    MultiPoly,
    RingMatrix,
    TruncSeries,
    as_rational,
    carrier_of,
    multinomial,
    one_like,
    outer,
    render,
    series_compose_linear,
    zero_like,
)
from .symmetric import enumerate_partitions_distinct, schur_value, vandermonde

DEFAULT_MAX_N = 6


class DimensionTooLarge(ValueError):
    pass


def max_dimension() -> int:
    env = os.environ.get("SCHURLAB_MAX_N")
    return int(env) if env else DEFAULT_MAX_N


# ---------------------------------------------------------------------------
# Determinants


def det_bareiss(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Fraction-free elimination; exact for rational entries."""
    a = [[as_rational(x) for x in r] for r in rows]
    n = len(a)
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_laplace(rows: Sequence[Sequence]):
    """Cofactor expansion along rows, sharing minors between branches.

    Works over any commutative carrier with ``+``, ``-`` and ``*``.
    """
    n = len(rows)
    if n == 0:
        return Fraction(1)
    zero = zero_like(rows[0][0])
    memo: dict[tuple[int, int], object] = {}

    def minor(r: int, mask: int):
        # determinant of rows r.. restricted to the columns in mask
        if r == n:
            return one_like(rows[0][0])
        key = (r, mask)
        if key in memo:
            return memo[key]
        total = zero
        pos = 0
        for c in range(n):
            if not mask >> c & 1:
                continue
            entry = rows[r][c]
            if entry:
                term = entry * minor(r + 1, mask & ~(1 << c))
                total = total - term if pos & 1 else total + term
            pos += 1
        memo[key] = total
        return total

    return minor(0, (1 << n) - 1)


def det_ring(A: RingMatrix, max_n: int | None = None):
    bound = max_dimension() if max_n is None else max_n
    if A.n > bound:
        raise DimensionTooLarge(f"dimension {A.n} exceeds bound {bound} (SCHURLAB_MAX_N)")
    if A.n == 0:
        return Fraction(1)
    if A.carrier == "rational":
        return det_bareiss(A.entries)
    return det_laplace(A.entries)


# ---------------------------------------------------------------------------
# Series functions


@dataclass(frozen=True)
class SeriesFunction:
    """Taylor coefficients ``f_M`` of a function around ``base_point``.

    With ``complete`` set the function is the polynomial
    ``sum f_M (x - a)^M``; otherwise coefficients past the list are unknown.
    """

    base_point: object
    coeffs: tuple
    complete: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a series function needs at least one coefficient")

    @property
    def cutoff(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int):
        if k < len(self.coeffs):
            return self.coeffs[k]
        if self.complete:
            return zero_like(self.coeffs[0])
        raise ProfileTooShort(f"coefficient f_{k} unavailable (cutoff {self.cutoff})")

    def covers(self, k: int) -> bool:
        return self.complete or k <= self.cutoff

    def derivative_value(self, k: int):
        return math.factorial(k) * self.coeff(k)

    def truncated(self, cutoff: int) -> TruncSeries:
        return TruncSeries([self.coeff(k) for k in range(cutoff + 1)], cutoff)

    def profile(self, order: int | None = None) -> DerivProfile:
        order = self.cutoff if order is None else order
        vals = tuple(self.derivative_value(k) for k in range(order + 1))
        return DerivProfile(self.base_point, vals, complete=self.complete and order >= self.cutoff)

    def evaluate(self, x):
        """Value of the (truncated) Taylor polynomial at ``x``."""
        s = x - self.base_point
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * s + c
        return acc

    @property
    def degree(self) -> int:
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k]:
                return k
        return -1

    def support(self) -> list[int]:
        return [k for k, c in enumerate(self.coeffs) if c]


def geometric(cutoff: int) -> SeriesFunction:
    """1/(1 - x) around 0."""
    return SeriesFunction(Fraction(0), tuple(Fraction(1) for _ in range(cutoff + 1)))


def frobenius_kernel(c, cutoff: int) -> SeriesFunction:
    """(1 - c x)/(1 - x) around 0: f_0 = 1 and f_M = 1 - c afterwards."""
    c = as_rational(c)
    return SeriesFunction(Fraction(0), (Fraction(1),) + tuple(1 - c for _ in range(cutoff)))


def polynomial(coeffs: Sequence, base_point=0) -> SeriesFunction:
    return SeriesFunction(as_rational(base_point), tuple(as_rational(c) for c in coeffs), complete=True)


# ---------------------------------------------------------------------------
# Direct side


def entrywise_apply(f: SeriesFunction, B: RingMatrix, D: int) -> RingMatrix:
    """Entry (j, k) becomes the series of f(a + B_jk t) around t = 0."""
    if D <= 0:
        raise ValueError("cutoff must be positive")
    if not f.covers(D):
        raise ProfileTooShort(f"need f_0..f_{D}, have up to f_{f.cutoff}")
    base = f.truncated(D)
    return B.map(lambda x: series_compose_linear(base, x))


def _check_vectors(u, v):
    if len(u) != len(v):
        raise ValueError(f"u and v must have equal length, got {len(u)} and {len(v)}")
    if not u:
        raise ValueError("empty vectors")


def _scalars(u):
    return [x if isinstance(x, MultiPoly) else as_rational(x) for x in u]


def delta_series(f: SeriesFunction, a, u: Sequence, v: Sequence, D: int) -> TruncSeries:
    """det f[a 1 + t u v^T] through degree D."""
    _check_vectors(u, v)
    if as_rational(a) != as_rational(f.base_point):
        raise ValueError(f"f is expanded around {f.base_point}, not {a}")
    if not f.covers(D):
        raise ProfileTooShort(f"insufficient coefficients: need f_0..f_{D}, have up to f_{f.cutoff}")
    return det_ring(entrywise_apply(f, outer(_scalars(u), _scalars(v)), D))


# ---------------------------------------------------------------------------
# Schur side


def _ring_one(u, v):
    return one_like(u[0] * v[0])


def phorn_derivative(derivs: DerivProfile, u: Sequence, v: Sequence, M: int):
    """M-th t-derivative at 0 of det f[a 1 + t u v^T], via Schur polynomials."""
    _check_vectors(u, v)
    u, v = _scalars(u), _scalars(v)
    n = len(u)
    for k in range(M + 1):
        if not derivs.covers(k):
            raise ProfileTooShort(f"missing derivative of order {k}")
    total = zero_like(_ring_one(u, v))
    if M < n * (n - 1) // 2:
        return total
    vv = vandermonde(u) * vandermonde(v)
    for part in enumerate_partitions_distinct(M, n):
        if not all(derivs.is_nonzero(m) for m in part.parts):
            continue
        prod = 1
        for m in part.parts:
            prod = prod * derivs.value(m)
        term = schur_value(part, u) * schur_value(part, v) * multinomial(M, part.parts)
        total = total + term * prod
    return total * vv


def tsymm_rhs(f: SeriesFunction, u: Sequence, v: Sequence, D: int) -> TruncSeries:
    """V(u)V(v) sum_M t^M sum_m s_m(u)s_m(v) prod_k f_{m_k}, through degree D."""
    _check_vectors(u, v)
    u, v = _scalars(u), _scalars(v)
    n = len(u)
    one = _ring_one(u, v)
    zero = zero_like(one)
    vv = vandermonde(u) * vandermonde(v)
    coeffs = []
    for M in range(D + 1):
        acc = zero
        if M >= n * (n - 1) // 2:
            for part in enumerate_partitions_distinct(M, n):
                prod = 1
                for m in part.parts:
                    c = f.coeff(m)
                    if not c:
                        prod = 0
                        break
                    prod = prod * c
                if prod:
                    acc = acc + schur_value(part, u) * schur_value(part, v) * prod
        coeffs.append(acc * vv)
    return TruncSeries(coeffs, D)


def cauchy_rhs(u: Sequence, v: Sequence, D: int) -> TruncSeries:
    """V(u)V(v) sum over partitions of s_m(u)s_m(v) t^{|m|}."""
    _check_vectors(u, v)
    u, v = _scalars(u), _scalars(v)
    n = len(u)
    zero = zero_like(_ring_one(u, v))
    vv = vandermonde(u) * vandermonde(v)
    coeffs = []
    for M in range(D + 1):
        acc = zero
        for part in enumerate_partitions_distinct(M, n):
            acc = acc + schur_value(part, u) * schur_value(part, v)
        coeffs.append(acc * vv)
    return TruncSeries(coeffs, D)


def schlosser_rhs(c, u: Sequence, v: Sequence, D: int) -> TruncSeries:
    """The regrouped Frobenius form: V(u)V(v)(1-c)^{n-1} times
    (sum over m_0 = 0 of s s) + (1-c)(sum over m_0 > 0 of s s), graded by |m|."""
    _check_vectors(u, v)
    u, v = _scalars(u), _scalars(v)
    c = as_rational(c)
    n = len(u)
    zero = zero_like(_ring_one(u, v))
    vv = vandermonde(u) * vandermonde(v)
    coeffs = []
    for M in range(D + 1):
        with_zero = zero
        without_zero = zero
        for part in enumerate_partitions_distinct(M, n):
            ss = schur_value(part, u) * schur_value(part, v)
            if part.parts[-1] == 0:
                with_zero = with_zero + ss
            else:
                without_zero = without_zero + ss
        coeffs.append(vv * (1 - c) ** (n - 1) * (with_zero + without_zero * (1 - c)))
    return TruncSeries(coeffs, D)


# ---------------------------------------------------------------------------
# Cauchy-Binet side


def cauchy_binet_series(f: SeriesFunction, u: Sequence, v: Sequence, D: int) -> TruncSeries:
    """det f[t u v^T] for polynomial f via f[t u v^T] = U diag(f_m t^m) W^T.

    U and W have rows (1, x, ..., x^deg); Cauchy-Binet sums minor products
    over n-element sets of columns.
    """
    if not f.complete:
        raise ValueError("the Cauchy-Binet route needs a polynomial f")
    _check_vectors(u, v)
    u, v = _scalars(u), _scalars(v)
    n = len(u)
    one = _ring_one(u, v)
    zero = zero_like(one)
    coeffs = [zero] * (D + 1)
    support = f.support()
    for cols in combinations(support, n):
        deg = sum(cols)
        if deg > D:
            continue
        mu = det_ring(RingMatrix([[x ** m if m else one_like(x) for m in cols] for x in u]))
        if not mu:
            continue
        mv = det_ring(RingMatrix([[x ** m if m else one_like(x) for m in cols] for x in v]))
        weight = 1
        for m in cols:
            weight = weight * f.coeffs[m]
        coeffs[deg] = coeffs[deg] + mu * mv * weight
    return TruncSeries(coeffs, D)


# ---------------------------------------------------------------------------
# Reports


@dataclass
class ExpansionReport:
    identity: str
    n: int
    cutoff: int
    lhs: TruncSeries
    rhs: TruncSeries
    first_mismatch_degree: int | None
    vanishing_verified_below: int
    extra: dict = field(default_factory=dict)

    @property
    def match(self) -> bool:
        return self.first_mismatch_degree is None

    def to_json(self) -> dict:
        out = {
            "schema": 1,
            "identity": self.identity,
            "n": self.n,
            "cutoff": self.cutoff,
            "match": self.match,
            "first_mismatch_degree": self.first_mismatch_degree,
            "vanishing_verified_below": self.vanishing_verified_below,
            "lhs_coeffs": [render(c) for c in self.lhs.coeffs],
            "rhs_coeffs": [render(c) for c in self.rhs.coeffs],
        }
        for key, series in self.extra.items():
            out[f"{key}_coeffs"] = [render(c) for c in series.coeffs]
        return out


def first_mismatch(*series: TruncSeries) -> int | None:
    cutoff = min(s.cutoff for s in series)
    for k in range(cutoff + 1):
        ref = series[0].coeffs[k]
        if any(s.coeffs[k] != ref for s in series[1:]):
            return k
    return None


def _vanishing_below(lhs: TruncSeries, n: int) -> int:
    threshold = n * (n - 1) // 2
    for k in range(min(threshold, lhs.cutoff + 1)):
        if lhs.coeffs[k]:
            return k
    return threshold


def _report(identity, n, D, lhs, rhs, **extra) -> ExpansionReport:
    return ExpansionReport(
        identity=identity,
        n=n,
        cutoff=D,
        lhs=lhs,
        rhs=rhs,
        first_mismatch_degree=first_mismatch(lhs, rhs, *extra.values()),
        vanishing_verified_below=_vanishing_below(lhs, n),
        extra=extra,
    )


def verify_tsymm(f: SeriesFunction, u: Sequence, v: Sequence, D: int) -> ExpansionReport:
    lhs = delta_series(f, f.base_point, u, v, D)
    rhs = tsymm_rhs(f, u, v, D)
    return _report("tsymm", len(u), D, lhs, rhs)


def verify_cauchy(n: int, u: Sequence, v: Sequence, D: int) -> ExpansionReport:
    if len(u) != n or len(v) != n:
        raise ValueError(f"u and v must have length {n}")
    lhs = delta_series(geometric(D), 0, u, v, D)
    return _report("cauchy", n, D, lhs, cauchy_rhs(u, v, D))


def verify_frobenius(n: int, c, u: Sequence, v: Sequence, D: int) -> ExpansionReport:
    """Direct determinant vs. the Schur expansion vs. the regrouped form."""
    if len(u) != n or len(v) != n:
        raise ValueError(f"u and v must have length {n}")
    f = frobenius_kernel(c, D)
    lhs = delta_series(f, 0, u, v, D)
    return _report("frobenius", n, D, lhs, tsymm_rhs(f, u, v, D), regrouped=schlosser_rhs(c, u, v, D))


def verify_phorn(f: SeriesFunction, u: Sequence, v: Sequence, D: int) -> ExpansionReport:
    """Compare M! [t^M] delta_series with the closed-form M-th derivative."""
    lhs = delta_series(f, f.base_point, u, v, D)
    profile = f.profile(D)
    scaled = TruncSeries([lhs.coeffs[M] * math.factorial(M) for M in range(D + 1)], D)
    rhs = TruncSeries([phorn_derivative(profile, u, v, M) for M in range(D + 1)], D)
    return _report("phorn", len(u), D, scaled, rhs)


def symbolic_vectors(n: int) -> tuple[list[MultiPoly], list[MultiPoly]]:
    """Independent indeterminates u1..un, v1..vn in one polynomial ring."""
    from .ring import uv_names

    names = uv_names(n)
    u = [MultiPoly.var(i, 2 * n, names) for i in range(n)]
    v = [MultiPoly.var(n + i, 2 * n, names) for i in range(n)]
    return u, v


def is_carrier_scalar(x) -> bool:
    return carrier_of(x) in ("rational", "poly")
