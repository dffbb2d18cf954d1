"""Partitions, column-strict tableaux, Schur polynomials and Vandermonde
determinants.

Partitions are stored weakly decreasing, ``(m_{n-1}, ..., m_1, m_0)``.
Tableau rows are stored top to bottom, longest first (English
convention). A shape given bottom-to-top, shortest row first, maps to
this form by reversing the row list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .ring import InexactDivision, MultiPoly, RingMatrix, divide_exact, one_like


@dataclass(frozen=True)
class PartitionTuple:
    parts: tuple[int, ...]
    is_strict: bool = field(init=False)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing, got {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "is_strict", len(set(parts)) == len(parts))

    @classmethod
    def from_increasing(cls, parts: Sequence[int]) -> "PartitionTuple":
        """Build from ``(m_0, m_1, ..., m_{n-1})``."""
        return cls(tuple(reversed(tuple(parts))))

    @property
    def increasing(self) -> tuple[int, ...]:
        return tuple(reversed(self.parts))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def shape(self) -> tuple[int, ...]:
        """Row lengths ``parts - staircase``, longest first, trailing zeros kept."""
        n = len(self.parts)
        rows = tuple(p - (n - 1 - i) for i, p in enumerate(self.parts))
        if any(r < 0 for r in rows):
            raise ValueError(f"{self.parts} lies below the staircase of length {n}")
        return rows


def staircase(n: int) -> PartitionTuple:
    return PartitionTuple(tuple(range(n - 1, -1, -1)))


def enumerate_partitions_distinct(total: int, n: int) -> list[PartitionTuple]:
    """All strictly decreasing ``n``-tuples of non-negative integers summing to ``total``.

    Ordered by decreasing largest part, lexicographically within.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    out: list[PartitionTuple] = []

    def rec(prefix: list[int], remaining: int, slots: int, upper: int):
        if slots == 0:
            if remaining == 0:
                out.append(PartitionTuple(tuple(prefix)))
            return
        k = slots - 1
        for part in range(min(upper, remaining), k - 1, -1):
            rest = remaining - part
            # the other k parts are distinct and below `part`
            if rest < k * (k - 1) // 2 or rest > k * part - k * (k + 1) // 2:
                continue
            prefix.append(part)
            rec(prefix, rest, slots - 1, part - 1)
            prefix.pop()

    if total >= 0:
        rec([], total, n, total)
    return out


# ---------------------------------------------------------------------------
# Tableaux


@dataclass(frozen=True)
class Tableau:
    shape: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        shape = tuple(r for r in self.shape if r)
        rows = tuple(tuple(r) for r in self.rows if r)
        if tuple(len(r) for r in rows) != shape:
            raise ValueError("rows do not match shape")
        for r in rows:
            if any(a > b for a, b in zip(r, r[1:])):
                raise ValueError(f"row {r} is not weakly increasing")
        for upper, lower in zip(rows, rows[1:]):
            if any(lower[c] <= upper[c] for c in range(len(lower))):
                raise ValueError("columns must strictly increase downwards")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "rows", rows)

    def entries(self):
        for r in self.rows:
            yield from r


def enumerate_ssyt(shape: Sequence[int], m: int) -> list[Tableau]:
    """Every column-strict tableau of ``shape`` with entries in ``1..m``.

    Cells are filled column by column, each column top to bottom; the
    output is in lexicographic order of the column-major reading word.
    """
    shape = tuple(int(r) for r in shape if r)
    if any(a < b for a, b in zip(shape, shape[1:])):
        raise ValueError(f"shape must be weakly decreasing, got {shape}")
    if not shape:
        return [Tableau((), ())]
    if len(shape) > m:
        return []
    ncols = shape[0]
    col_heights = [sum(1 for r in shape if r > c) for c in range(ncols)]
    grid = [[0] * r for r in shape]
    out: list[Tableau] = []

    def fill(col: int, row: int):
        if col == ncols:
            out.append(Tableau(shape, tuple(tuple(r) for r in grid)))
            return
        height = col_heights[col]
        lo = 1
        if row > 0:
            lo = grid[row - 1][col] + 1
        if col > 0:
            lo = max(lo, grid[row][col - 1])
        # leave room for the strictly larger cells below in this column
        hi = m - (height - 1 - row)
        for val in range(lo, hi + 1):
            grid[row][col] = val
            if row + 1 < height:
                fill(col, row + 1)
            else:
                fill(col + 1, 0)
        grid[row][col] = 0

    fill(0, 0)
    return out


def tableau_weight(tab: Tableau, num_vars: int) -> MultiPoly:
    exps = [0] * num_vars
    for e in tab.entries():
        if not 1 <= e <= num_vars:
            raise ValueError(f"entry {e} outside 1..{num_vars}")
        exps[e - 1] += 1
    return MultiPoly.monomial(exps)


# ---------------------------------------------------------------------------
# Schur polynomials


@dataclass(frozen=True)
class SchurResult:
    partition: PartitionTuple
    num_vars: int
    value: MultiPoly
    method: str


def _as_partition(m) -> PartitionTuple:
    return m if isinstance(m, PartitionTuple) else PartitionTuple(tuple(m))


@lru_cache(maxsize=4096)
def _schur_tableaux_cached(parts: tuple[int, ...], num_vars: int) -> MultiPoly:
    p = PartitionTuple(parts)
    if not p.is_strict:
        return MultiPoly.zero(num_vars)
    terms: dict[tuple[int, ...], int] = {}
    for tab in enumerate_ssyt(p.shape(), num_vars):
        exps = [0] * num_vars
        for e in tab.entries():
            exps[e - 1] += 1
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + 1
    return MultiPoly(num_vars, terms)


def schur_tableaux(m_tuple, num_vars: int) -> SchurResult:
    """Schur polynomial as a sum of tableau weights (zero for repeated parts)."""
    p = _as_partition(m_tuple)
    if p.is_strict:
        p.shape()
    return SchurResult(p, num_vars, _schur_tableaux_cached(p.parts, num_vars), "tableaux")


def generalized_vandermonde(exponents: Sequence[int], num_vars: int) -> RingMatrix:
    """Matrix with row j equal to ``(u_j^{e_0}, u_j^{e_1}, ...)``."""
    us = [MultiPoly.var(i, num_vars) for i in range(num_vars)]
    return RingMatrix([[u ** e for e in exponents] for u in us])


def schur_bialternant(m_tuple, num_vars: int) -> SchurResult:
    """Schur polynomial as det(u^{m_0} | ... | u^{m_{N-1}}) / V(u)."""
    from .detident import det_ring

    p = _as_partition(m_tuple)
    if num_vars != len(p):
        raise ValueError("bialternant needs as many variables as parts")
    num = det_ring(generalized_vandermonde(p.increasing, num_vars))
    den = vandermonde([MultiPoly.var(i, num_vars) for i in range(num_vars)])
    try:
        value = divide_exact(num, den)
    except InexactDivision as exc:
        raise InexactDivision(f"bialternant for {p.parts} is not a polynomial: {exc}") from exc
    return SchurResult(p, num_vars, value, "bialternant")


def schur_value(m_tuple, point: Sequence):
    """Evaluate the Schur polynomial (tableau form) at a concrete point."""
    p = _as_partition(m_tuple)
    poly = _schur_tableaux_cached(p.parts, len(point))
    if poly.is_zero():
        return 0 * one_like(point[0]) if point else 0
    return poly.evaluate(point)


def vandermonde(u: Sequence):
    """prod_{j<k} (u_k - u_j), and 1 for a single coordinate."""
    if len(u) < 1:
        raise ValueError("vandermonde needs at least one coordinate")
    result = one_like(u[0])
    for k in range(len(u)):
        for j in range(k):
            result = result * (u[k] - u[j])
    return result


def moment_matrix(u: Sequence) -> RingMatrix:
    """Rows ``(1, u_j, ..., u_j^{n-1})``."""
    n = len(u)
    return RingMatrix([[x ** k if k else one_like(x) for k in range(n)] for x in u])
