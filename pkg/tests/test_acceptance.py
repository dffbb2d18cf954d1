"""Acceptance battery: one test per criterion, each printing a PASS/FAIL line.

Run directly with ``python tests/test_acceptance.py`` or through pytest,
where the lines are repeated in the terminal summary.
"""

import time
from fractions import Fraction

import pytest

from schurlab.cli import main
from schurlab.detident import verify_cauchy, verify_frobenius
from schurlab.preserver import TestFamily, hl_hypothesis_scan, power_function, power_profile
from schurlab.suite import (
    check_admissible,
    check_calculus,
    check_cauchy,
    check_frobenius,
    check_phorn,
    check_schur,
    check_sign_patterns,
    check_tsymm,
)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

SEED = 1
SCALE = "desk"


def report(label, ok, detail, elapsed):
    line = f"{'PASS' if ok else 'FAIL'}  {label:<34} {detail} ({elapsed:.2f} s)"
    print(line)
    ACCEPTANCE_LINES.append(line)


def run_check(label, check, budget):
    start = time.perf_counter()
    res = check(SEED, SCALE)
    elapsed = time.perf_counter() - start
    ok = res.passed and elapsed < budget
    report(label, ok, f"{res.cases} cases, {len(res.failures)} failures", elapsed)
    assert res.passed, res.failures[:5]
    assert elapsed < budget


def test_1_cauchy_identity():
    ref = verify_cauchy(2, [1, 2], [1, 3], 3)
    assert [int(c) for c in ref.lhs.coeffs] == [0, 2, 24, 194]
    run_check("1 Cauchy identity", check_cauchy, 60)


def test_2_frobenius_identity():
    ref = verify_frobenius(2, 2, [1, 2], [1, 3], 2)
    assert [int(c) for c in ref.lhs.coeffs] == [0, -2, -24]
    run_check("2 Frobenius identity", check_frobenius, 30)


def test_3_universal_expansion():
    run_check("3 universal expansion", check_tsymm, 120)


def test_4_derivative_formula():
    run_check("4 derivative formula", check_phorn, 120)


def test_5_schur_dual_construction():
    run_check("5 Schur tableaux vs bialternant", check_schur, 60)


def test_6_admissibility():
    run_check("6 admissibility", check_admissible, 120)


def _scan(alpha, n):
    fam = TestFamily(Fraction(1), Fraction(1), tuple(Fraction(1, 2 ** k) for k in range(1, n + 1)))
    return hl_hypothesis_scan(power_function(alpha), fam, 200, derivs=power_profile(alpha, 1), tol=1e-9)


def test_7_fitzgerald_horn_falsification():
    start = time.perf_counter()
    bad = _scan(0.5, 3)
    small = _scan(0.5, 2)
    smooth = _scan(1.5, 3)
    cli = main(["preserve", "--power", "0.5", "--n", "3", "--a", "1", "--eps", "1", "--grid", "200"])
    elapsed = time.perf_counter() - start
    ok = (
        len(bad.violations) >= 1
        and not small.violations
        and not smooth.violations
        and smooth.conclusion.passed
        and cli == 1
        and elapsed < 10
    )
    report(
        "7 FitzGerald-Horn falsification",
        ok,
        f"x^0.5 n=3: {len(bad.violations)} violations, n=2: {len(small.violations)}, "
        f"x^1.5 n=3: {len(smooth.violations)}",
        elapsed,
    )
    assert ok


def test_8_sign_patterns():
    run_check("8 sign-pattern necessity", check_sign_patterns, 60)


def test_9_calculus_laws():
    run_check("9 calculus laws", check_calculus, 60)


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
