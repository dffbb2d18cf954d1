"""Positive-semidefiniteness tests: an exact one over Q and a floating
point one built on cyclic Jacobi rotations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import numpy as np

from .detident import det_bareiss
from .ring import RingMatrix, as_rational, render_rational


class NotSymmetric(ValueError):
    pass


@dataclass(frozen=True)
class PsdVerdict:
    is_psd: bool
    certificate: tuple
    method: str
    margin: float

    @property
    def witness_value(self):
        """Most negative char-poly coefficient (exact) or minimum eigenvalue (numeric)."""
        if self.method == "charpoly":
            return min(self.certificate) if self.certificate else Fraction(0)
        return min(self.certificate) if self.certificate else 0.0

    def to_json(self) -> dict:
        if self.method == "charpoly":
            cert = [render_rational(c) for c in self.certificate]
        else:
            cert = [float(c) for c in self.certificate]
        return {"is_psd": self.is_psd, "method": self.method, "certificate": cert}


def _rows(A) -> list[list]:
    if isinstance(A, RingMatrix):
        return [list(r) for r in A.entries]
    return [list(r) for r in A]


def charpoly_coefficients(A) -> list[Fraction]:
    """e_1..e_n with det(xI - A) = sum_k (-1)^k e_k x^(n-k).

    Faddeev-LeVerrier in exact arithmetic.
    """
    rows = [[as_rational(x) for x in r] for r in _rows(A)]
    n = len(rows)
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    m = [[Fraction(0)] * n for _ in range(n)]
    c_prev = Fraction(1)
    e = []
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I ; c_k = -tr(A M_k) / k
        m = [
            [sum(rows[i][l] * m[l][j] for l in range(n)) + c_prev * ident[i][j] for j in range(n)]
            for i in range(n)
        ]
        am_trace = sum(sum(rows[i][l] * m[l][i] for l in range(n)) for i in range(n))
        c_prev = -am_trace / k
        e.append(c_prev * (-1) ** k)
    return e


def principal_minor_sums(A) -> list[Fraction]:
    """e_k as literal sums of k x k principal minors."""
    rows = [[as_rational(x) for x in r] for r in _rows(A)]
    n = len(rows)
    return [
        sum((det_bareiss([[rows[i][j] for j in idx] for i in idx]) for idx in combinations(range(n), k)), Fraction(0))
        for k in range(1, n + 1)
    ]


def is_psd_exact(A, max_n: int = 8) -> PsdVerdict:
    """PSD iff every characteristic-polynomial coefficient e_k is >= 0.

    Sound for real symmetric input: the spectrum is real, and a real-rooted
    polynomial in -x with nonnegative coefficients has no positive roots.
    """
    rows = [[as_rational(x) for x in r] for r in _rows(A)]
    n = len(rows)
    if n > max_n:
        raise ValueError(f"exact PSD check limited to n <= {max_n}")
    if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(i + 1, n)):
        raise NotSymmetric("matrix is not symmetric")
    e = charpoly_coefficients(rows)
    lowest = min(e) if e else Fraction(0)
    return PsdVerdict(all(c >= 0 for c in e), tuple(e), "charpoly", float(lowest))


def jacobi_eigenvalues(A: np.ndarray, rel_tol: float = 1e-13, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi sweeps."""
    a = np.array(A, dtype=float, copy=True)
    n = a.shape[0]
    scale = np.linalg.norm(a)
    if n < 2 or scale == 0.0:
        return np.sort(np.diag(a))
    target = rel_tol * scale
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off < target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
    else:
        raise ArithmeticError("Jacobi iteration did not converge")
    return np.sort(np.diag(a))


def is_psd_numeric(A, tol: float = 1e-9) -> PsdVerdict:
    """PSD iff the minimum eigenvalue is >= -tol * (1 + ||A||_F)."""
    a = np.array(_rows(A), dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    norm = float(np.linalg.norm(a))
    if float(np.max(np.abs(a - a.T), initial=0.0)) > 1e-12 * max(norm, 1.0):
        raise NotSymmetric("matrix is not symmetric")
    a = (a + a.T) / 2
    eig = jacobi_eigenvalues(a)
    lowest = float(eig[0]) if eig.size else 0.0
    threshold = -tol * (1.0 + norm)
    return PsdVerdict(lowest >= threshold, tuple(float(x) for x in eig), "jacobi", lowest - threshold)

