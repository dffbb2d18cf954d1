"""The verification battery behind ``schurlab suite``.

Each check returns a :class:`CheckResult`; the battery is deterministic
given the seed and scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .calculus import (
    SMOOTH_BUILTINS,
    FormalSeriesCalculus,
    NumericCalculus,
    calculus_laws_check,
    random_series,
)
from .detident import (
    SeriesFunction,
    cauchy_binet_series,
    delta_series,
    phorn_derivative,
    polynomial,
    tsymm_rhs,
    verify_cauchy,
    verify_frobenius,
)
from .preserver import (
    admissible_characterize,
    geometric_family,
    hl_hypothesis_scan,
    is_admissible,
    maclaurin_sign_check,
    power_function,
    power_profile,
)
from .profile import DerivProfile, exp_profile, monomial_profile, polynomial_profile
from .rng import ALGORITHM, SplitMix64
from .symmetric import enumerate_partitions_distinct, schur_bialternant, schur_tableaux

SCALES = {
    # case counts per check
    "smoke": {"pairs": 3, "functions": 8, "adm_entry": 5, "series_samples": 12, "schur_total": 8},
    "desk": {"pairs": 20, "functions": 50, "adm_entry": 8, "series_samples": 100, "schur_total": 12},
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "detail": self.detail,
            "failures": self.failures[:10],
        }


def _distinct_vector(rng: SplitMix64, n: int, lo: int = -3, hi: int = 3) -> list[Fraction]:
    return [Fraction(x) for x in rng.distinct_ints(n, lo, hi)]


def random_pair(rng: SplitMix64, n: int):
    return _distinct_vector(rng, n), _distinct_vector(rng, n)


def random_polynomial(rng: SplitMix64, max_degree: int = 6, lo: int = -4, hi: int = 4) -> SeriesFunction:
    deg = rng.randint(0, max_degree)
    return polynomial([rng.randint(lo, hi) for _ in range(deg + 1)])


def random_case(rng: SplitMix64, n_max: int = 4):
    n = rng.randint(1, n_max)
    u, v = random_pair(rng, n)
    return random_polynomial(rng), u, v


def check_cauchy(seed: int, scale: str, D: int = 10) -> CheckResult:
    rng = SplitMix64(seed)
    failures, cases = [], 0
    for n in (2, 3, 4):
        for _ in range(SCALES[scale]["pairs"]):
            u, v = random_pair(rng, n)
            rep = verify_cauchy(n, u, v, D)
            cases += 1
            if not rep.match:
                failures.append({"n": n, "u": str(u), "v": str(v), "degree": rep.first_mismatch_degree})
    ref = verify_cauchy(2, [1, 2], [1, 3], 3)
    ref_ok = [int(c) for c in ref.lhs.coeffs] == [0, 2, 24, 194] and ref.match
    if not ref_ok:
        failures.append({"reference": [str(c) for c in ref.lhs.coeffs]})
    return CheckResult("cauchy", not failures, cases + 1, "delta_series == Schur-sum RHS, D=10", failures)


def check_frobenius(seed: int, scale: str, D: int = 8) -> CheckResult:
    rng = SplitMix64(seed + 1)
    failures, cases = [], 0
    pairs = max(1, SCALES[scale]["pairs"] // 4)
    for n in (2, 3):
        for _ in range(pairs):
            u, v = random_pair(rng, n)
            cauchy = verify_cauchy(n, u, v, D)
            for c in (2, Fraction(1, 2), -1, 0, 1):
                rep = verify_frobenius(n, c, u, v, D)
                cases += 1
                if not rep.match:
                    failures.append({"n": n, "c": str(c), "degree": rep.first_mismatch_degree})
                if c == 0 and rep.lhs != cauchy.lhs:
                    failures.append({"n": n, "c": "0", "reason": "does not reduce to Cauchy"})
                if c == 1 and not rep.lhs.is_zero():
                    failures.append({"n": n, "c": "1", "reason": "nonzero series"})
    return CheckResult("frobenius", not failures, cases, "direct == Schur expansion == regrouped form", failures)


def check_tsymm(seed: int, scale: str, D: int = 10) -> CheckResult:
    rng = SplitMix64(seed + 2)
    failures = []
    count = SCALES[scale]["functions"]
    for i in range(count):
        f, u, v = random_case(rng)
        n = len(u)
        lhs = delta_series(f, 0, u, v, D)
        rhs = tsymm_rhs(f, u, v, D)
        cb = cauchy_binet_series(f, u, v, D)
        if not (lhs == rhs == cb):
            failures.append({"case": i, "n": n, "f": [str(c) for c in f.coeffs]})
        if any(lhs.coeffs[k] for k in range(min(n * (n - 1) // 2, D + 1))):
            failures.append({"case": i, "reason": "low-degree coefficient nonzero"})
    return CheckResult("tsymm", not failures, count, "delta_series == tsymm_rhs == Cauchy-Binet, D=10", failures)


def sparse_profile(rng: SplitMix64, nonzero: int, order: int) -> DerivProfile:
    vals = [Fraction(0)] * (order + 1)
    for k in rng.distinct_ints(nonzero, 0, order):
        vals[k] = Fraction(rng.randint(1, 4) * (1 if rng.below(2) else -1))
    return DerivProfile(Fraction(0), tuple(vals), complete=True)


def check_phorn(seed: int, scale: str, D: int = 10) -> CheckResult:
    rng = SplitMix64(seed + 2)
    failures = []
    count = SCALES[scale]["functions"]
    for i in range(count):
        f, u, v = random_case(rng)
        lhs = delta_series(f, 0, u, v, D)
        profile = f.profile(D)
        for M in range(D + 1):
            if lhs.coeffs[M] * math.factorial(M) != phorn_derivative(profile, u, v, M):
                failures.append({"case": i, "M": M})
                break
    rng = SplitMix64(seed + 3)
    sparse_cases = 0
    for n in (2, 3, 4):
        for _ in range(max(2, count // 10)):
            u, v = random_pair(rng, n)
            prof = sparse_profile(rng, rng.randint(0, n - 1), D)
            sparse_cases += 1
            if any(phorn_derivative(prof, u, v, M) for M in range(D + 1)):
                failures.append({"n": n, "reason": "sparse profile gave nonzero derivative"})
    return CheckResult("phorn", not failures, count + sparse_cases, "M! [t^M] delta == closed form, M <= 10", failures)


def check_schur(seed: int, scale: str) -> CheckResult:
    failures, cases = [], 0
    top = SCALES[scale]["schur_total"]
    for n in range(1, 5):
        # bound both |m| and |m - staircase| by `top`: take the looser one
        for total in range(top + n * (n - 1) // 2 + 1):
            for part in enumerate_partitions_distinct(total, n):
                cases += 1
                if schur_tableaux(part, n).value != schur_bialternant(part, n).value:
                    failures.append({"partition": list(part.parts)})
    return CheckResult("schur", not failures, cases, f"tableaux == bialternant, <= 4 parts, shape size <= {top}", failures)


def admissibility_profiles(order: int = 40) -> dict[str, DerivProfile]:
    profiles = {"exp": exp_profile(order), "all-zero": polynomial_profile([0])}
    for k in range(6):
        profiles[f"monomial:{k}"] = monomial_profile(k)
    profiles["two-term:1+x^3"] = polynomial_profile([1, 0, 0, 1])
    profiles["two-term:x+x^4"] = polynomial_profile([0, 1, 0, 0, 1])
    return profiles


def check_admissible(seed: int, scale: str) -> CheckResult:
    top = SCALES[scale]["adm_entry"]
    failures, cases = [], 0
    for name, prof in admissibility_profiles().items():
        for n in range(1, 5):
            cls = admissible_characterize(prof, n)
            for tup in combinations(range(top + 1), n):
                cases += 1
                if is_admissible(tup, prof, n) != cls.admits(tup):
                    failures.append({"profile": name, "n": n, "tuple": list(tup)})
    return CheckResult("admissible", not failures, cases, f"brute force == characterization, entries <= {top}", failures)


def check_fitzgerald_horn(seed: int, scale: str) -> CheckResult:
    failures = []
    expectations = [(0.5, 3, True), (0.5, 2, False), (1.5, 3, False)]
    for alpha, n, expect_violation in expectations:
        fam = geometric_family(n, a=1, epsilon=1)
        rep = hl_hypothesis_scan(power_function(alpha), fam, 200, derivs=power_profile(alpha, 1))
        if bool(rep.violations) != expect_violation:
            failures.append({"alpha": alpha, "n": n, "violations": len(rep.violations)})
        if alpha == 1.5 and not rep.conclusion.passed:
            failures.append({"alpha": alpha, "n": n, "reason": "conclusion check failed"})
    return CheckResult("fitzgerald-horn", not failures, len(expectations), "x^0.5 violates at n=3 only", failures)


def check_sign_patterns(seed: int, scale: str) -> CheckResult:
    rng = SplitMix64(seed + 4)
    failures, cases = [], 0

    def expect(coeffs, n, domain, ok):
        nonlocal cases
        cases += 1
        if maclaurin_sign_check(coeffs, n, domain).ok != ok:
            failures.append({"coeffs": [str(c) for c in coeffs], "n": n, "domain": domain})

    expect([1, 1, -1, 1, 1], 2, "unbounded", True)
    expect([1, 1, -1, 1, 1], 3, "unbounded", False)
    expect([1, 1, -1, 1, 1], 2, "bounded", True)
    expect([1, 1, 1, -1], 2, "bounded", True)
    expect([1, 1, 1, -1], 2, "unbounded", False)
    for _ in range(SCALES[scale]["pairs"] * 5):
        n = rng.randint(1, 4)
        positives = rng.randint(0, n - 1)
        coeffs = [rng.randint(1, 5) for _ in range(positives)] + [-rng.randint(1, 5)]
        coeffs += [rng.randint(-5, 5) for _ in range(rng.randint(0, 4))]
        expect(coeffs, n, "bounded", False)
        expect(list(reversed(coeffs)), n, "unbounded", False)
    return CheckResult("sign-patterns", not failures, cases, "negative coefficient needs n positives before (and after)", failures)


def check_calculus(seed: int, scale: str) -> CheckResult:
    rng = SplitMix64(seed + 5)
    count = SCALES[scale]["series_samples"]
    formal = FormalSeriesCalculus()
    failures, checked = [], 0
    for _ in range(count):
        f = random_series(rng, rng.randint(1, 8))
        g = random_series(rng, rng.randint(1, 8))
        r = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        shift = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        rep = calculus_laws_check(formal, [f, g], scalars=(r, 1), shifts=(0, shift))
        checked += rep.checked
        failures += [v.__dict__ for v in rep.violations]
    numeric = calculus_laws_check(
        NumericCalculus(tol=1e-8),
        list(SMOOTH_BUILTINS.values()),
        label=lambda fn: next(k for k, v in SMOOTH_BUILTINS.items() if v is fn),
    )
    checked += numeric.checked
    failures += [v.__dict__ for v in numeric.violations]
    return CheckResult("calculus", not failures, checked, "formal exact, numeric within 1e-8", failures)


CHECKS = [
    ("1", check_cauchy),
    ("2", check_frobenius),
    ("3", check_tsymm),
    ("4", check_phorn),
    ("5", check_schur),
    ("6", check_admissible),
    ("7", check_fitzgerald_horn),
    ("8", check_sign_patterns),
    ("9", check_calculus),
]


def run_suite(seed: int, scale: str) -> tuple[list[CheckResult], dict]:
    if scale not in SCALES:
        raise ValueError(f"scale must be one of {sorted(SCALES)}")
    results = [fn(seed, scale) for _, fn in CHECKS]
    report = {
        "schema": 1,
        "command": "suite",
        "seed": seed,
        "scale": scale,
        "prng": ALGORITHM,
        "passed": all(r.passed for r in results),
        "checks": {f"{key}-{r.name}": r.to_json() for (key, _), r in zip(CHECKS, results)},
    }
    return results, report
