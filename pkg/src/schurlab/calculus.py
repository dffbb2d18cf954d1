"""Differential calculi: an algebra of functions with a derivation that
obeys linearity, the product rule and the chain rule for affine inner
maps. Two instances ship: formal power series with d/dt, and float
functions with a finite-difference derivative."""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .findiff import derivative_estimate
from .ring import TruncSeries, series_compose_linear


class DiffCalculus(ABC):
    """Operations the law checker needs; elements are opaque to it."""

    name = "abstract"

    @abstractmethod
    def derive(self, f): ...

    @abstractmethod
    def add(self, f, g): ...

    @abstractmethod
    def scale(self, r, f): ...

    @abstractmethod
    def mul(self, f, g): ...

    @abstractmethod
    def compose_affine(self, f, shift, r):
        """g(x) = f(shift + r x)."""

    @abstractmethod
    def close(self, f, g) -> tuple[bool, str]:
        """Whether f and g agree, plus a short description of the gap."""


class FormalSeriesCalculus(DiffCalculus):
    """Truncated power series in t with the formal derivative.

    Affine composition with a nonzero shift re-expands the truncation as
    a polynomial, so it is exact for the truncation itself.
    """

    name = "formal-series"

    def derive(self, f: TruncSeries) -> TruncSeries:
        return f.derivative()

    def add(self, f, g):
        return f + g

    def scale(self, r, f):
        return f * r

    def mul(self, f, g):
        return f * g

    def compose_affine(self, f: TruncSeries, shift, r) -> TruncSeries:
        if not shift:
            return series_compose_linear(f, r)
        inner = TruncSeries([shift, r], f.cutoff)
        acc = TruncSeries.zero(f.cutoff, f.coeffs[0])
        for c in reversed(f.coeffs):
            acc = acc * inner + c
        return acc

    def close(self, f: TruncSeries, g: TruncSeries):
        d = min(f.cutoff, g.cutoff)
        for k in range(d + 1):
            if f.coeffs[k] != g.coeffs[k]:
                return False, f"coefficient of t^{k}: {f.coeffs[k]} != {g.coeffs[k]}"
        return True, ""


@dataclass
class NumericCalculus(DiffCalculus):
    """Float functions of one real variable; the derivative is a
    high-order central difference. Equality means agreement at
    ``points`` to within ``tol`` absolute."""

    points: Sequence[float] = (-0.9, -0.3, 0.0, 0.4, 1.1)
    tol: float = 1e-8
    step: float = 1e-2
    name: str = field(default="numeric-smooth", init=False)

    def derive(self, f: Callable[[float], float]):
        step = self.step

        def df(x):
            return derivative_estimate(f, x, 1, step)[0]

        return df

    def add(self, f, g):
        return lambda x: f(x) + g(x)

    def scale(self, r, f):
        r = float(r)
        return lambda x: r * f(x)

    def mul(self, f, g):
        return lambda x: f(x) * g(x)

    def compose_affine(self, f, shift, r):
        shift, r = float(shift), float(r)
        return lambda x: f(shift + r * x)

    def close(self, f, g):
        worst, where = 0.0, None
        for x in self.points:
            gap = abs(f(x) - g(x))
            if not gap <= worst:
                worst, where = gap, x
        if worst <= self.tol:
            return True, ""
        return False, f"|difference| = {worst:.3e} at x = {where}"


@dataclass
class LawViolation:
    law: str
    witness: str
    detail: str


@dataclass
class LawReport:
    calculus: str
    checked: int = 0
    violations: list[LawViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "calculus": self.calculus,
            "checked": self.checked,
            "ok": self.ok,
            "violations": [v.__dict__ for v in self.violations],
        }


def calculus_laws_check(
    calc: DiffCalculus,
    samples: Sequence,
    scalars: Sequence = (2, Fraction(-1, 3)),
    shifts: Sequence = (0, Fraction(1, 2)),
    label: Callable | None = None,
) -> LawReport:
    """Check linearity, the product rule and the affine chain rule on every
    pair of samples (and every scalar / shift for the linear laws)."""
    label = label or (lambda f: getattr(f, "__name__", str(f)))
    report = LawReport(calc.name)
    d = calc.derive

    def record(law, witness, result):
        report.checked += 1
        ok, detail = result
        if not ok:
            report.violations.append(LawViolation(law, witness, detail))

    for i, f in enumerate(samples):
        for g in samples[i:]:
            w = f"f={label(f)}, g={label(g)}"
            for r in scalars:
                for s in scalars:
                    lhs = d(calc.add(calc.scale(r, f), calc.scale(s, g)))
                    rhs = calc.add(calc.scale(r, d(f)), calc.scale(s, d(g)))
                    record("linearity", f"{w}, r={r}, s={s}", calc.close(lhs, rhs))
            lhs = d(calc.mul(f, g))
            rhs = calc.add(calc.mul(f, d(g)), calc.mul(d(f), g))
            record("product", w, calc.close(lhs, rhs))
        for shift in shifts:
            for r in scalars:
                lhs = d(calc.compose_affine(f, shift, r))
                rhs = calc.scale(r, calc.compose_affine(d(f), shift, r))
                record("affine-chain", f"f={label(f)}, shift={shift}, r={r}", calc.close(lhs, rhs))
    return report


SMOOTH_BUILTINS: dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "exp": math.exp,
    "atan": math.atan,
    "poly": lambda x: 1 - 2 * x + 0.5 * x ** 3,
}


def random_series(rng, cutoff: int, lo: int = -5, hi: int = 5) -> TruncSeries:
    """Integer-coefficient series drawn from ``rng.randint``."""
    return TruncSeries([rng.randint(lo, hi) for _ in range(cutoff + 1)], cutoff)

