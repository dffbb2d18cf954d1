"""Derivative profiles: the values f^(k)(a), k = 0..K, of a function at a
base point."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ring import as_rational


class ProfileTooShort(ValueError):
    """The profile does not reach the derivative orders a question needs."""


@dataclass(frozen=True)
class DerivProfile:
    """Derivative values at ``base_point``.

    ``complete`` declares every derivative beyond the listed ones to be
    zero (polynomials). Float values count as zero when their magnitude
    is at most ``zero_tol``; ``errors`` optionally carries per-order
    error estimates from a numerical differentiator, which widen that
    band.
    """

    base_point: object
    values: tuple
    complete: bool = False
    zero_tol: float = 1e-8
    errors: tuple | None = None

    def __post_init__(self):
        vals = tuple(self.values)
        if vals and all(isinstance(v, float) for v in vals):
            pass
        else:
            vals = tuple(as_rational(v) for v in vals)
        object.__setattr__(self, "values", vals)
        if self.errors is not None:
            object.__setattr__(self, "errors", tuple(float(e) for e in self.errors))

    @property
    def is_exact(self) -> bool:
        return not any(isinstance(v, float) for v in self.values)

    @property
    def max_order(self) -> int:
        return len(self.values) - 1

    def covers(self, k: int) -> bool:
        return self.complete or k < len(self.values)

    def value(self, k: int):
        if k < len(self.values):
            return self.values[k]
        if self.complete:
            return 0.0 if not self.is_exact else Fraction(0)
        raise ProfileTooShort(f"derivative of order {k} not in profile (max {self.max_order})")

    def is_nonzero(self, k: int) -> bool:
        v = self.value(k)
        if isinstance(v, float):
            band = self.zero_tol
            if self.errors is not None and k < len(self.errors):
                band = max(band, 10 * self.errors[k])
            return abs(v) > band
        return v != 0

    def nonzero_orders(self, start: int = 0) -> list[int]:
        """Orders >= ``start`` with nonzero value, among the listed ones."""
        return [k for k in range(start, len(self.values)) if self.is_nonzero(k)]

    def first_nonzero(self, count: int, start: int = 0) -> tuple[list[int], bool]:
        """The lowest ``count`` nonzero orders at or above ``start``.

        Returns ``(orders, exhausted)`` where ``exhausted`` is True when
        fewer than ``count`` exist and the profile is complete, so the
        short list is the whole story.
        """
        orders = self.nonzero_orders(start)[:count]
        if len(orders) == count:
            return orders, False
        if self.complete:
            return orders, True
        raise ProfileTooShort(
            f"only {len(orders)} nonzero derivatives of order >= {start} among orders "
            f"0..{self.max_order}; cannot tell whether {count} exist"
        )


def exp_profile(order: int = 40) -> DerivProfile:
    """exp at 0: every derivative equals 1."""
    return DerivProfile(Fraction(0), tuple(Fraction(1) for _ in range(order + 1)))


def monomial_profile(k: int, base_point=0) -> DerivProfile:
    """x**k at ``base_point``."""
    coeffs = [0] * k + [1]
    return polynomial_profile(coeffs, base_point)


def polynomial_profile(coeffs: Sequence, base_point=0) -> DerivProfile:
    """Exact derivatives of ``sum c_i x**i`` at ``base_point``."""
    a = as_rational(base_point)
    cs = [as_rational(c) for c in coeffs]
    vals = []
    for j in range(len(cs)):
        s = sum(c * math.comb(i, j) * a ** (i - j) for i, c in enumerate(cs) if i >= j)
        vals.append(s * math.factorial(j))
    return DerivProfile(a, tuple(vals), complete=True)


def profile_from_list(values: Sequence, base_point=0, complete: bool = False) -> DerivProfile:
    return DerivProfile(as_rational(base_point), tuple(as_rational(v) for v in values), complete=complete)
