"""``schurlab`` command line.

Exit codes: 0 verified, 1 mismatch or violation found, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .detident import (
    DimensionTooLarge,
    SeriesFunction,
    max_dimension,
    polynomial,
    symbolic_vectors,
    verify_cauchy,
    verify_frobenius,
    verify_phorn,
    verify_tsymm,
)
from .preserver import (
    EvaluationFailure,
    InconsistentParameters,
    TestFamily,
    admissible_characterize,
    geometric_family,
    hl_hypothesis_scan,
    is_admissible,
    maclaurin_sign_check,
    power_function,
    power_profile,
)
from .profile import ProfileTooShort, exp_profile, monomial_profile, profile_from_list
from .ring import InexactDivision, as_rational, render
from .rng import ALGORITHM, SplitMix64
from .suite import SCALES, random_pair, random_polynomial, run_suite
from .symmetric import PartitionTuple, schur_bialternant, schur_tableaux

OK, FOUND, USAGE = 0, 1, 2
MAX_DEGREE = 12
MAX_SYMBOLIC_N = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _rationals(text: str) -> list[Fraction]:
    try:
        return [as_rational(x.strip()) for x in text.split(",") if x.strip() != ""]
    except (ValueError, TypeError, ZeroDivisionError):
        raise UsageError(f"expected comma-separated rationals, got {text!r}")


def _rational(text: str) -> Fraction:
    vals = _rationals(text)
    if len(vals) != 1:
        raise UsageError(f"expected one rational, got {text!r}")
    return vals[0]


def _emit(report: dict, args) -> None:
    report = {"schema": 1, "prng": ALGORITHM, **report}
    if args.json == "-":
        print(json.dumps(report, indent=2, sort_keys=True))
    elif args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")


# ---------------------------------------------------------------------------
# schur


def cmd_schur(args) -> int:
    parts = _ints(args.partition)
    try:
        partition = PartitionTuple(tuple(parts))
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.vars < 1:
        raise UsageError("--vars must be positive")
    if args.method in ("bialternant", "both") and args.vars != len(parts):
        raise UsageError("the bialternant needs --vars equal to the number of parts")
    results = {}
    if args.method in ("tableaux", "both"):
        results["tableaux"] = schur_tableaux(partition, args.vars).value
    if args.method in ("bialternant", "both"):
        try:
            results["bialternant"] = schur_bialternant(partition, args.vars).value
        except InexactDivision as exc:
            print(f"bialternant failed: {exc}", file=sys.stderr)
            return FOUND
    values = list(results.values())
    agree = all(v == values[0] for v in values)
    print(values[0])
    if args.method == "both":
        print("tableaux == bialternant" if agree else f"MISMATCH: bialternant gives {values[1]}")
    _emit(
        {
            "command": "schur",
            "partition": parts,
            "vars": args.vars,
            "results": {k: str(v) for k, v in results.items()},
            "agree": agree,
        },
        args,
    )
    return OK if agree else FOUND


# ---------------------------------------------------------------------------
# verify


def _vectors(args, rng):
    n = args.n
    if args.symbolic:
        if n > MAX_SYMBOLIC_N:
            raise UsageError(f"symbolic runs are limited to n <= {MAX_SYMBOLIC_N}")
        return symbolic_vectors(n)
    if args.u is not None or args.v is not None:
        if args.u is None or args.v is None:
            raise UsageError("give both --u and --v")
        u, v = _rationals(args.u), _rationals(args.v)
        if len(u) != n or len(v) != n:
            raise UsageError(f"--u and --v need exactly {n} entries")
        return u, v
    if not args.random:
        raise UsageError("give --u/--v, --random or --symbolic")
    return random_pair(rng, n)


def cmd_verify(args) -> int:
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    if args.n > max_dimension():
        raise UsageError(f"n = {args.n} exceeds the dimension bound {max_dimension()} (set SCHURLAB_MAX_N)")
    if not 0 <= args.degree <= args.max_degree:
        raise UsageError(f"--degree must lie in [0, {args.max_degree}]")
    rng = SplitMix64(args.seed)
    u, v = _vectors(args, rng)
    D = args.degree
    f = None
    if args.identity in ("tsymm", "phorn"):
        if args.coeffs is not None:
            f = polynomial(_rationals(args.coeffs))
        elif args.random:
            f = random_polynomial(rng)
        else:
            raise UsageError(f"{args.identity} needs --coeffs or --random")
    if args.identity == "cauchy":
        rep = verify_cauchy(args.n, u, v, D)
    elif args.identity == "frobenius":
        if args.c is None:
            raise UsageError("frobenius needs --c")
        rep = verify_frobenius(args.n, _rational(args.c), u, v, D)
    elif args.identity == "tsymm":
        rep = verify_tsymm(f, u, v, D)
    else:
        rep = verify_phorn(f, u, v, D)

    print(f"identity {rep.identity}, n = {rep.n}, degree <= {D}, seed {args.seed} ({ALGORITHM})")
    print(f"u = ({', '.join(map(render, u))}), v = ({', '.join(map(render, v))})")
    if f is not None:
        print(f"f coefficients = ({', '.join(map(render, f.coeffs))})")
    print(f"lhs = {rep.lhs}")
    if rep.match:
        print("match")
    else:
        print(f"MISMATCH at degree {rep.first_mismatch_degree}")
        print(f"rhs = {rep.rhs}")
    body = rep.to_json()
    body.update(
        command="verify",
        seed=args.seed,
        u=[render(x) for x in u],
        v=[render(x) for x in v],
    )
    if f is not None:
        body["f_coeffs"] = [render(c) for c in f.coeffs]
    _emit(body, args)
    return OK if rep.match else FOUND


# ---------------------------------------------------------------------------
# preserve


def _load_series(path: str) -> SeriesFunction:
    try:
        with open(path) as fh:
            data = json.load(fh)
        coeffs = [as_rational(c) if isinstance(c, (str, int)) else float(c) for c in data["coeffs"]]
        base = as_rational(data.get("base_point", 0))
        return SeriesFunction(base, tuple(coeffs), bool(data.get("complete", False)))
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot read series file {path}: {exc}")


def cmd_preserve(args) -> int:
    sources = [x is not None for x in (args.poly, args.power, args.series_file)]
    if sum(sources) != 1:
        raise UsageError("give exactly one of --poly, --power, --series-file")
    n = args.n
    if n < 1 or n > max_dimension():
        raise UsageError(f"--n must lie in [1, {max_dimension()}]")
    a, eps = _rational(args.a), _rational(args.eps)
    q = args.q if args.q is not None else n
    if args.grid < 1:
        raise UsageError("--grid must be positive")
    try:
        if args.u is not None:
            u = _rationals(args.u)
            if len(u) != n:
                raise UsageError(f"--u needs exactly {n} entries")
            family = TestFamily(a, eps, tuple(u), relaxed=args.relaxed)
        else:
            family = geometric_family(n, a, eps, _rational(args.u0))
    except ValueError as exc:
        raise UsageError(str(exc))

    sign = None
    derivs = None
    if args.poly is not None:
        coeffs = _rationals(args.poly)
        if not coeffs:
            raise UsageError("--poly needs at least one coefficient")
        f = polynomial(coeffs)
        sign = maclaurin_sign_check(coeffs, n, "unbounded" if args.unbounded else "bounded")
        label = f"poly {args.poly}"
    elif args.power is not None:
        alpha = float(args.power)
        f = power_function(alpha)
        derivs = power_profile(alpha, a)
        label = f"x^{args.power}"
    else:
        f = _load_series(args.series_file)
        if f.base_point != a and not f.complete:
            raise UsageError("series base point differs from --a and the series is not a polynomial")
        label = f"series {args.series_file}"

    try:
        report = hl_hypothesis_scan(f, family, args.grid, derivs=derivs, p=args.p, q=q, tol=args.tol)
    except InconsistentParameters as exc:
        raise UsageError(str(exc))
    except EvaluationFailure as exc:
        print(f"evaluation failed: {exc}", file=sys.stderr)
        return USAGE
    report.sign_check = sign

    print(f"f = {label}; n = {n}, a = {render(a)}, eps = {render(eps)}, u = ({', '.join(map(render, family.u))})")
    print(f"grid {len(report.grid)} points, {report.method} PSD test")
    if report.violations:
        t, verdict = report.violations[0]
        print(f"VIOLATION: {len(report.violations)} grid points fail; first at t = {float(t):.6g} "
              f"(witness {float(verdict.witness_value):.3e})")
    else:
        print("no violation on the grid")
    if report.conclusion is not None:
        print(f"conclusion check: {'pass' if report.conclusion.passed else 'FAIL'}")
    if sign is not None:
        print(f"sign check ({sign.domain}): {'pass' if sign.ok else 'FAIL'}")
    body = report.to_json()
    body.update(command="preserve", function=label, seed=args.seed)
    _emit(body, args)
    return OK if report.passed else FOUND


# ---------------------------------------------------------------------------
# admissible


def _profile(spec: str, order: int, complete: bool):
    if spec == "exp":
        return exp_profile(order)
    if spec.startswith("monomial:"):
        try:
            k = int(spec.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad monomial profile {spec!r}")
        if k < 0:
            raise UsageError("monomial degree must be >= 0")
        return monomial_profile(k)
    body = spec.split(":", 1)[1] if spec.startswith("list:") else spec
    return profile_from_list(_rationals(body), complete=complete)


def cmd_admissible(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be positive")
    profile = _profile(args.profile, args.order, args.complete)
    try:
        if args.tuple is not None:
            tup = _ints(args.tuple)
            try:
                ok = is_admissible(tup, profile, args.n)
            except ProfileTooShort:
                raise
            except ValueError as exc:
                raise UsageError(str(exc))
            print("admissible" if ok else "not admissible")
            _emit({"command": "admissible", "profile": args.profile, "n": args.n, "tuple": tup, "admissible": ok}, args)
        else:
            cls = admissible_characterize(profile, args.n)
            print(cls)
            _emit({"command": "admissible", "profile": args.profile, "n": args.n, "class": cls.to_json()}, args)
    except ProfileTooShort as exc:
        print(f"undecidable: {exc}", file=sys.stderr)
        return USAGE
    return OK


# ---------------------------------------------------------------------------
# suite


def cmd_suite(args) -> int:
    start = time.perf_counter()
    results, report = run_suite(args.seed, args.scale)
    for (key, r) in zip(report["checks"], results):
        print(f"{'PASS' if r.passed else 'FAIL'}  {key:<20} {r.cases:>6} cases  {r.detail}")
    print(f"{'all pass' if report['passed'] else 'FAILURES'} (seed {args.seed}, {args.scale}, "
          f"{time.perf_counter() - start:.1f} s)")
    _emit(report, args)
    return OK if report["passed"] else FOUND


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="schurlab", description="Exact Schur / determinant identities and preserver checks.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p):
        p.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("schur", help="print a Schur polynomial")
    p.add_argument("--partition", required=True, help="strict partition, e.g. 2,0")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--method", choices=("tableaux", "bialternant", "both"), default="tableaux")
    common(p)
    p.set_defaults(run=cmd_schur)

    p = sub.add_parser("verify", help="check a determinant expansion identity")
    p.add_argument("identity", choices=("cauchy", "frobenius", "tsymm", "phorn"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--u")
    p.add_argument("--v")
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--max-degree", type=int, default=MAX_DEGREE)
    p.add_argument("--c", help="Frobenius parameter")
    p.add_argument("--coeffs", help="polynomial f for tsymm/phorn, c0,c1,...")
    p.add_argument("--random", action="store_true", help="draw u, v (and f) from the seeded PRNG")
    p.add_argument("--symbolic", action="store_true", help="use indeterminate u, v")
    common(p)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("preserve", help="scan the rank-one test family for PSD violations")
    p.add_argument("--poly")
    p.add_argument("--power")
    p.add_argument("--series-file")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--a", default="0")
    p.add_argument("--eps", default="1")
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--u", help="explicit u entries (default: u0^k)")
    p.add_argument("--u0", default="1/2")
    p.add_argument("--relaxed", action="store_true", help="allow u outside (0,1)")
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--q", type=int)
    p.add_argument("--tol", type=float, default=1e-9)
    dom = p.add_mutually_exclusive_group()
    dom.add_argument("--unbounded", action="store_true", help="domain [0, inf) for the sign check")
    dom.add_argument("--bounded", dest="unbounded", action="store_false")
    common(p)
    p.set_defaults(run=cmd_preserve)

    p = sub.add_parser("admissible", help="admissibility of exponent tuples")
    p.add_argument("--profile", required=True, help="exp | monomial:k | list:d0,d1,...")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tuple")
    p.add_argument("--order", type=int, default=40, help="length of built-in profiles")
    p.add_argument("--complete", action="store_true", help="the explicit list is exhaustive")
    common(p)
    p.set_defaults(run=cmd_admissible)

    p = sub.add_parser("suite", help="run the verification battery")
    p.add_argument("--scale", choices=sorted(SCALES), default="smoke")
    common(p)
    p.set_defaults(run=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help()
            return USAGE
        return args.run(args)
    except (UsageError, DimensionTooLarge) as exc:
        print(f"schurlab: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
