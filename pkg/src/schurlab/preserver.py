"""Necessary conditions for entrywise positivity preservers, tested on the
family a*1 + t*u*u^T of rank-two perturbations.

Scanning a t-grid can only falsify: a clean scan means "no violation on
this grid", never that f preserves positivity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, Union

from .detident import SeriesFunction
from .findiff import finite_diff_derivs
from .profile import (
    DerivProfile,
    ProfileTooShort,
    exp_profile,
    monomial_profile,
    polynomial_profile,
    profile_from_list,
)
from .psd import PsdVerdict, is_psd_exact, is_psd_numeric
from .ring import RingMatrix, as_rational, render_rational

__all__ = [
    "AdmissibleClass",
    "ConclusionReport",
    "DerivProfile",
    "EvaluationFailure",
    "InconsistentParameters",
    "PreserverReport",
    "ProfileTooShort",
    "SignVerdict",
    "TestFamily",
    "admissible_characterize",
    "build_test_matrix",
    "default_grid",
    "exp_profile",
    "fh_predict",
    "finite_diff_derivs",
    "geometric_family",
    "hl_conclusion_check",
    "hl_hypothesis_scan",
    "is_admissible",
    "is_psd_exact",
    "is_psd_numeric",
    "maclaurin_sign_check",
    "monomial_profile",
    "polynomial_profile",
    "profile_from_list",
    "random_family",
]

Number = Union[int, float, Fraction]


class InconsistentParameters(ValueError):
    pass


class EvaluationFailure(RuntimeError):
    pass


def _num(x) -> str | float:
    if isinstance(x, float):
        return x
    return render_rational(x)


# ---------------------------------------------------------------------------
# Test family


@dataclass(frozen=True)
class TestFamily:
    """Base point ``a``, range length ``epsilon`` and the vector ``u``.

    ``relaxed`` lifts the requirement that u lie in (0, 1); such families
    are for exploration and reports flag them as outside the hypotheses.
    """

    __test__ = False  # not a pytest class

    a: Number
    epsilon: Number
    u: tuple
    relaxed: bool = False

    def __post_init__(self):
        u = tuple(self.u)
        object.__setattr__(self, "u", u)
        if not u:
            raise ValueError("u must be nonempty")
        if len(set(u)) != len(u):
            raise ValueError(f"u coordinates must be pairwise distinct: {u}")
        if self.a < 0:
            raise ValueError("a must be >= 0")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be > 0")
        if self.relaxed:
            if any(x <= 0 for x in u):
                raise ValueError("u coordinates must be positive")
        elif any(not 0 < x < 1 for x in u):
            raise ValueError(f"u coordinates must lie in (0, 1): {u}")

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def is_exact(self) -> bool:
        return not any(isinstance(x, float) for x in (self.a, self.epsilon, *self.u))

    def extended(self, extra) -> "TestFamily":
        return TestFamily(self.a, self.epsilon, self.u + (extra,), self.relaxed)

    def to_json(self) -> dict:
        return {
            "a": _num(self.a),
            "epsilon": _num(self.epsilon),
            "u": [_num(x) for x in self.u],
            "n": self.n,
            "relaxed": self.relaxed,
        }


def geometric_family(n: int, a=0, epsilon=1, u0=Fraction(1, 2)) -> TestFamily:
    """u = (u0, u0^2, ..., u0^n)."""
    return TestFamily(a, epsilon, tuple(u0 ** k for k in range(1, n + 1)))


def random_family(rng, n: int, a=0, epsilon=1, denominator: int = 1000) -> TestFamily:
    """Distinct rational u coordinates k/denominator with 0 < k < denominator."""
    ks = rng.distinct_ints(n, 1, denominator - 1)
    return TestFamily(a, epsilon, tuple(Fraction(k, denominator) for k in ks))


def build_test_matrix(a, t, u: Sequence) -> RingMatrix:
    """Entries a + t u_j u_k."""
    if t < 0:
        raise ValueError("t must be >= 0")
    if any(isinstance(x, float) for x in (a, t, *u)):
        a, t = float(a), float(t)
        return RingMatrix([[a + t * float(x) * float(y) for y in u] for x in u])
    a, t = as_rational(a), as_rational(t)
    us = [as_rational(x) for x in u]
    return RingMatrix([[a + t * x * y for y in us] for x in us])


def default_grid(epsilon, size: int = 200, exact: bool = True) -> list:
    """``size`` uniform points on [0, epsilon * (1 - 1e-6)]."""
    if size < 1:
        raise ValueError("grid needs at least one point")
    if exact:
        top = as_rational(epsilon) * (1 - Fraction(1, 10 ** 6))
        return [top * Fraction(i, max(size - 1, 1)) for i in range(size)]
    top = float(epsilon) * (1 - 1e-6)
    return [top * i / max(size - 1, 1) for i in range(size)]


# ---------------------------------------------------------------------------
# Admissible tuples


def _check_strict(l_tuple: Sequence[int], n: int) -> tuple[int, ...]:
    l_tuple = tuple(int(x) for x in l_tuple)
    if len(l_tuple) != n:
        raise ValueError(f"tuple must have length {n}")
    if any(x < 0 for x in l_tuple) or any(a >= b for a, b in zip(l_tuple, l_tuple[1:])):
        raise ValueError(f"tuple must be strictly increasing and non-negative: {l_tuple}")
    return l_tuple


def _bounded_tuples(n: int, budget: int):
    """Non-decreasing n-tuples of non-negative integers with sum <= budget."""

    def rec(prefix, lo, remaining, slots):
        if slots == 0:
            yield tuple(prefix)
            return
        for x in range(lo, remaining // slots + 1):
            prefix.append(x)
            yield from rec(prefix, x, remaining - x, slots - 1)
            prefix.pop()

    yield from rec([], 0, budget, n)


def is_admissible(l_tuple: Sequence[int], profile: DerivProfile, n: int) -> bool:
    """Brute-force admissibility.

    Every tuple of non-negative integers with sum at most sum(l_tuple) must
    repeat an entry, hit a zero derivative, or equal l_tuple as a set.
    Reordering a tuple changes none of the three conditions, so only
    non-decreasing tuples are visited.
    """
    target = _check_strict(l_tuple, n)
    budget = sum(target)
    if not profile.covers(budget):
        raise ProfileTooShort(f"need derivatives through order {budget}")
    target_set = set(target)
    for cand in _bounded_tuples(n, budget):
        if len(set(cand)) < n:
            continue
        if any(not profile.is_nonzero(k) for k in cand):
            continue
        if set(cand) == target_set:
            continue
        return False
    return True


@dataclass(frozen=True)
class AdmissibleClass:
    kind: str  # "ALL_ADMISSIBLE" or "THRESHOLD"
    n: int
    threshold: tuple[int, ...] | None = None

    @property
    def threshold_sum(self) -> int | None:
        return None if self.threshold is None else sum(self.threshold)

    def admits(self, l_tuple: Sequence[int]) -> bool:
        l_tuple = _check_strict(l_tuple, self.n)
        if self.kind == "ALL_ADMISSIBLE":
            return True
        return l_tuple == self.threshold or sum(l_tuple) < self.threshold_sum

    def __str__(self) -> str:
        if self.kind == "ALL_ADMISSIBLE":
            return "ALL_ADMISSIBLE"
        return f"threshold ({','.join(map(str, self.threshold))}), sum {self.threshold_sum}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "threshold": self.threshold, "threshold_sum": self.threshold_sum}


def admissible_characterize(profile: DerivProfile, n: int) -> AdmissibleClass:
    """Everything is admissible when f has fewer than n nonzero derivatives;
    otherwise exactly the lowest nonzero orders m, plus tuples of smaller sum."""
    if n < 1:
        raise ValueError("n must be >= 1")
    orders, exhausted = profile.first_nonzero(n)
    if exhausted:
        return AdmissibleClass("ALL_ADMISSIBLE", n)
    return AdmissibleClass("THRESHOLD", n, tuple(orders))


# ---------------------------------------------------------------------------
# Sign conclusions


@dataclass(frozen=True)
class ConclusionReport:
    orders: tuple[int, ...]
    checked: tuple[int, ...]
    signs: tuple[int, ...]
    verdict: str
    failed_at: int | None
    requested: int
    reduced: bool

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_json(self) -> dict:
        return {
            "orders": list(self.orders),
            "checked_orders": list(self.checked),
            "signs": list(self.signs),
            "verdict": self.verdict,
            "failed_at": self.failed_at,
            "requested_nonzero": self.requested,
            "reduced": self.reduced,
        }


def _sign(profile: DerivProfile, k: int) -> int:
    if not profile.is_nonzero(k):
        return 0
    return 1 if profile.value(k) > 0 else -1


def hl_conclusion_check(profile: DerivProfile, n: int, p: int = 0, q: int | None = None) -> ConclusionReport:
    """Signs of f^(k)(a) for k <= m_{q-1}.

    The orders are m_k = k for k < p, then the lowest q - p nonzero orders
    at or above p. When the profile shows fewer, the check runs on what is
    available and flags the report as reduced.
    """
    q = n if q is None else q
    if n < 1 or not 0 <= p <= q <= n:
        raise InconsistentParameters(f"need 0 <= p <= q <= n with n >= 1, got p={p}, q={q}, n={n}")
    if profile.base_point == 0 and p != 0:
        raise InconsistentParameters("p must be 0 when a = 0")
    orders = list(range(p)) + profile.nonzero_orders(p)[: q - p]
    reduced = len(orders) < q
    top = orders[-1] if orders else -1
    checked = tuple(range(top + 1))
    signs = tuple(_sign(profile, k) for k in checked)
    failed_at = next((k for k, s in zip(checked, signs) if s < 0), None)
    return ConclusionReport(
        orders=tuple(orders),
        checked=checked,
        signs=signs,
        verdict="PASS" if failed_at is None else "FAIL",
        failed_at=failed_at,
        requested=q - p,
        reduced=reduced,
    )


@dataclass(frozen=True)
class SignVerdict:
    ok: bool
    offending_index: int | None
    direction: str | None
    n: int
    domain: str

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "offending_index": self.offending_index,
            "direction": self.direction,
            "n": self.n,
            "domain": self.domain,
        }


def _first_short_negative(coeffs: Sequence, n: int) -> int | None:
    positives = 0
    for i, c in enumerate(coeffs):
        if c < 0 and positives < n:
            return i
        if c > 0:
            positives += 1
    return None


def maclaurin_sign_check(coeffs: Sequence, n: int, domain: str = "bounded") -> SignVerdict:
    """Every negative coefficient needs at least n positive ones below it;
    on an unbounded domain also n positive ones above it, checked by
    running the same rule on x^deg f(1/x)."""
    if domain not in ("bounded", "unbounded"):
        raise ValueError("domain must be 'bounded' or 'unbounded'")
    cs = [as_rational(c) if not isinstance(c, float) else c for c in coeffs]
    bad = _first_short_negative(cs, n)
    if bad is not None:
        return SignVerdict(False, bad, "lower", n, domain)
    if domain == "unbounded":
        deg = max((i for i, c in enumerate(cs) if c), default=-1)
        reversed_cs = cs[: deg + 1][::-1]
        bad = _first_short_negative(reversed_cs, n)
        if bad is not None:
            return SignVerdict(False, deg - bad, "upper", n, domain)
    return SignVerdict(True, None, None, n, domain)


def fh_predict(alpha: float, n: int) -> bool:
    """Whether x^alpha preserves positivity on n x n matrices with positive entries."""
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    if n < 1:
        raise ValueError("n must be >= 1")
    return abs(alpha - round(alpha)) <= 1e-12 or alpha >= n - 2


# ---------------------------------------------------------------------------
# Scanning


@dataclass
class PreserverReport:
    family: TestFamily
    grid: list
    method: str
    violations: list[tuple[object, PsdVerdict]] = field(default_factory=list)
    conclusion: ConclusionReport | None = None
    sign_check: SignVerdict | None = None

    @property
    def certified_on_grid(self) -> bool:
        return not self.violations

    @property
    def passed(self) -> bool:
        return (
            self.certified_on_grid
            and (self.conclusion is None or self.conclusion.passed)
            and (self.sign_check is None or self.sign_check.ok)
        )

    def to_json(self) -> dict:
        conclusion = self.conclusion.to_json() if self.conclusion else None
        return {
            "schema": 1,
            "family": self.family.to_json(),
            "theorem_hypotheses": not self.family.relaxed,
            "method": self.method,
            "grid_size": len(self.grid),
            "status": "certified-on-grid" if self.certified_on_grid else "violated",
            "violations": [
                {"t": _num(t), "min_eig_or_coeff": _num(v.witness_value)} for t, v in self.violations
            ],
            "conclusion": conclusion,
            "sign_check": self.sign_check.to_json() if self.sign_check else None,
            "passed": self.passed,
        }


Evaluator = Union[SeriesFunction, Callable[[float], float]]


def _exact_capable(f, family: TestFamily, grid) -> bool:
    if not isinstance(f, SeriesFunction) or not family.is_exact:
        return False
    if any(isinstance(c, float) for c in f.coeffs) or isinstance(f.base_point, float):
        return False
    return not any(isinstance(t, float) for t in grid)


def hl_hypothesis_scan(
    f: Evaluator,
    family: TestFamily,
    t_grid: Sequence | int | None = None,
    derivs: DerivProfile | None = None,
    p: int = 0,
    q: int | None = None,
    tol: float = 1e-9,
) -> PreserverReport:
    """PSD-check f[a 1 + t u u^T] at every grid point.

    Series functions with rational data go through the exact test; anything
    else is evaluated in floating point. Derivative data, when given or
    derivable from a series, adds the sign conclusion check.
    """
    exact_grid = family.is_exact
    if t_grid is None:
        t_grid = default_grid(family.epsilon, exact=exact_grid)
    elif isinstance(t_grid, int):
        t_grid = default_grid(family.epsilon, t_grid, exact=exact_grid)
    grid = list(t_grid)
    if any(t < 0 or t >= family.epsilon for t in grid):
        raise ValueError("grid points must lie in [0, epsilon)")
    exact = _exact_capable(f, family, grid)
    if isinstance(f, SeriesFunction):
        evaluate = f.evaluate
        if derivs is None:
            derivs = _series_profile(f, family.a)
    else:
        evaluate = f

    report = PreserverReport(family, grid, "exact" if exact else "numeric")
    for t in grid:
        A = build_test_matrix(family.a, t, family.u)
        try:
            if exact:
                image = [[evaluate(x) for x in row] for row in A.entries]
            else:
                image = [[float(evaluate(float(x))) for x in row] for row in A.entries]
        except (ArithmeticError, ValueError, TypeError) as exc:
            raise EvaluationFailure(f"f could not be evaluated at t = {t}: {exc}") from exc
        if not exact and not all(math.isfinite(x) for r in image for x in r):
            raise EvaluationFailure(f"f is not finite on the test matrix at t = {t}")
        verdict = is_psd_exact(image) if exact else is_psd_numeric(image, tol)
        if not verdict.is_psd:
            report.violations.append((t, verdict))
    if derivs is not None:
        report.conclusion = hl_conclusion_check(derivs, family.n, p, q)
    return report


def _series_profile(f: SeriesFunction, a) -> DerivProfile | None:
    if f.base_point == a:
        return f.profile()
    if not f.complete:
        return None
    # rewrite sum c_k (x - b)^k in powers of x, then differentiate at a
    b = as_rational(f.base_point)
    monomial = [Fraction(0)] * len(f.coeffs)
    for k, c in enumerate(f.coeffs):
        for j in range(k + 1):
            monomial[j] += c * math.comb(k, j) * (-b) ** (k - j)
    return polynomial_profile(monomial, a)


def power_function(alpha: float) -> Callable[[float], float]:
    """x -> x**alpha on [0, inf), with 0**alpha = 0 for alpha > 0."""

    def f(x: float) -> float:
        if x < 0:
            raise ValueError(f"x^{alpha} undefined at {x}")
        if x == 0:
            return 1.0 if alpha == 0 else 0.0
        return x ** alpha

    f.__name__ = f"x^{alpha}"
    return f


def power_profile(alpha: float, a, k_max: int = 6) -> DerivProfile:
    """Numerical derivative profile of x^alpha at a (one-sided at 0)."""
    f = power_function(alpha)
    a = float(a)
    if a == 0:
        return finite_diff_derivs(f, 0.0, k_max, left_endpoint=True, domain=(0.0, math.inf))
    return finite_diff_derivs(f, a, k_max, domain=(0.0, math.inf))

