"""Seeded SplitMix64 generator.

Every randomized input in reports comes from here so that a seed pins
the run down bit for bit, independent of the Python version.
"""

from __future__ import annotations

from fractions import Fraction

ALGORITHM = "splitmix64"
_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection of the biased tail."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        return lo + self.below(hi - lo + 1)

    def distinct_ints(self, count: int, lo: int, hi: int) -> list[int]:
        """``count`` pairwise distinct integers from [lo, hi], in draw order."""
        if hi - lo + 1 < count:
            raise ValueError("range too small for distinct draws")
        pool = list(range(lo, hi + 1))
        out = []
        for _ in range(count):
            out.append(pool.pop(self.below(len(pool))))
        return out

    def uniform(self) -> float:
        """Float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) / float(1 << 53)

    def rational(self, lo: int, hi: int, max_den: int = 6) -> Fraction:
        den = self.randint(1, max_den)
        return Fraction(self.randint(lo * den, hi * den), den)
