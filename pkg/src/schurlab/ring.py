"""Exact coefficient carriers: rationals, sparse multivariate polynomials,
truncated power series in one variable, and small square matrices over
any of them.

Rationals are :class:`fractions.Fraction`, which is always stored in
lowest terms with a positive denominator. Everything here is immutable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction

Scalar = Union[int, Fraction]


class CarrierMismatch(TypeError):
    """Operands live in different coefficient rings."""


class InexactDivision(ArithmeticError):
    """A polynomial division that was expected to be exact left a remainder."""


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected; converting them silently would smuggle rounding
    error into the exact paths.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def render_rational(x: Fraction) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


# ---------------------------------------------------------------------------
# MultiPoly


def default_names(num_vars: int) -> tuple[str, ...]:
    return tuple(f"u{i + 1}" for i in range(num_vars))


def uv_names(n: int) -> tuple[str, ...]:
    """Names ``u1..un, v1..vn`` for the doubled variable set."""
    return tuple(f"u{i + 1}" for i in range(n)) + tuple(f"v{i + 1}" for i in range(n))


class MultiPoly:
    """Sparse polynomial over Q in ``num_vars`` variables.

    ``terms`` maps exponent tuples to nonzero Fractions. Terms are kept
    sorted in descending lexicographic order of exponents, which is also
    the rendering order.
    """

    __slots__ = ("num_vars", "names", "_terms", "_hash")

    def __init__(
        self,
        num_vars: int,
        terms: Mapping[tuple[int, ...], Scalar] | None = None,
        names: Sequence[str] | None = None,
    ):
        if num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != num_vars:
                raise ValueError(
                    f"exponent vector {exps} has length {len(exps)}, expected {num_vars}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = as_rational(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.num_vars = num_vars
        self.names = tuple(names) if names is not None else default_names(num_vars)
        if len(self.names) != num_vars:
            raise ValueError("names must match num_vars")
        self._terms = dict(sorted(clean.items(), reverse=True))
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, num_vars, terms, names):
        # terms already canonical apart from ordering
        obj = cls.__new__(cls)
        obj.num_vars = num_vars
        obj.names = names
        obj._terms = dict(sorted(terms.items(), reverse=True))
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: Scalar, num_vars: int, names=None) -> "MultiPoly":
        return cls(num_vars, {(0,) * num_vars: c}, names)

    @classmethod
    def zero(cls, num_vars: int, names=None) -> "MultiPoly":
        return cls(num_vars, {}, names)

    @classmethod
    def one(cls, num_vars: int, names=None) -> "MultiPoly":
        return cls.constant(1, num_vars, names)

    @classmethod
    def var(cls, index: int, num_vars: int, names=None) -> "MultiPoly":
        """The variable with 0-based ``index``."""
        e = [0] * num_vars
        e[index] = 1
        return cls(num_vars, {tuple(e): 1}, names)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Scalar = 1, names=None) -> "MultiPoly":
        return cls(len(exps), {tuple(exps): coeff}, names)

    # accessors --------------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return next(iter(self._terms.items()))

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.num_vars)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.num_vars != self.num_vars:
                raise ValueError(
                    f"variable-count mismatch: {self.num_vars} vs {other.num_vars}"
                )
            return other
        if _is_scalar(other):
            return MultiPoly.constant(other, self.num_vars, self.names)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.num_vars, out, self.names)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.num_vars, {e: -c for e, c in self._terms.items()}, self.names)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            c0 = as_rational(other)
            if not c0:
                return MultiPoly.zero(self.num_vars, self.names)
            return MultiPoly._raw(
                self.num_vars, {e: c * c0 for e, c in self._terms.items()}, self.names
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.num_vars, {e: c for e, c in out.items() if c}, self.names)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = MultiPoly.one(self.num_vars, self.names)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            c = as_rational(other)
            if not c:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self * (1 / c)
        return divide_exact(self, other)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.num_vars == other.num_vars and self._terms == other._terms
        if _is_scalar(other):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_vars, tuple(self._terms.items())))
        return self._hash

    # evaluation / substitution ---------------------------------------------

    def evaluate(self, point: Sequence):
        """Substitute ``point[i]`` for variable ``i``.

        Point entries may be rationals, floats or MultiPolys (the result is
        then a MultiPoly in their ring).
        """
        if len(point) != self.num_vars:
            raise ValueError(f"need {self.num_vars} values, got {len(point)}")
        total = None
        for exps, c in self._terms.items():
            term = c
            for x, e in zip(point, exps):
                if e:
                    term = term * (x ** e)
            total = term if total is None else total + term
        if total is None:
            for x in point:
                if isinstance(x, MultiPoly):
                    return MultiPoly.zero(x.num_vars, x.names)
            if any(isinstance(x, float) for x in point):
                return 0.0
            return Fraction(0)
        return total

    def swap_vars(self, i: int, j: int) -> "MultiPoly":
        out = {}
        for e, c in self._terms.items():
            e = list(e)
            e[i], e[j] = e[j], e[i]
            out[tuple(e)] = c
        return MultiPoly._raw(self.num_vars, out, self.names)

    def embed(self, num_vars: int, offset: int = 0, names=None) -> "MultiPoly":
        """Re-home into a ring with more variables, shifting indices by ``offset``."""
        if offset + self.num_vars > num_vars:
            raise ValueError("target ring too small")
        out = {}
        for e, c in self._terms.items():
            full = [0] * num_vars
            full[offset : offset + self.num_vars] = e
            out[tuple(full)] = c
        return MultiPoly(num_vars, out, names)

    def renormalized(self) -> "MultiPoly":
        return MultiPoly(self.num_vars, self._terms, self.names)

    # rendering --------------------------------------------------------------

    def _monomial_str(self, exps) -> str:
        parts = []
        for name, e in zip(self.names, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exps, c in self._terms.items():
            mono = self._monomial_str(exps)
            mag = abs(c)
            if not mono:
                body = render_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{render_rational(mag)}*{mono}"
            pieces.append((c < 0, body))
        neg, body = pieces[0]
        out = ("-" if neg else "") + body
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self.num_vars}, {str(self)!r})"


def poly_add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    if p.num_vars != q.num_vars:
        raise ValueError(f"variable-count mismatch: {p.num_vars} vs {q.num_vars}")
    return p + q


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    if p.num_vars != q.num_vars:
        raise ValueError(f"variable-count mismatch: {p.num_vars} vs {q.num_vars}")
    return p * q


def divide_exact(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Return ``r`` with ``q * r == p``.

    Lex-order leading-term division. When ``q`` really divides ``p`` the
    leading term of every intermediate dividend is divisible by that of
    ``q``, so any failure here means the division is inexact.
    """
    if p.num_vars != q.num_vars:
        raise ValueError(f"variable-count mismatch: {p.num_vars} vs {q.num_vars}")
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lq_exp, lq_c = q.leading_term()
    quotient: dict[tuple[int, ...], Fraction] = {}
    rem = p
    while not rem.is_zero():
        le, lc = rem.leading_term()
        diff = tuple(a - b for a, b in zip(le, lq_exp))
        if any(d < 0 for d in diff):
            raise InexactDivision(f"{q} does not divide {p}")
        c = lc / lq_c
        quotient[diff] = c
        rem = rem - q * MultiPoly._raw(p.num_vars, {diff: c}, p.names)
    return MultiPoly._raw(p.num_vars, quotient, p.names)


poly_divide_exact = divide_exact


# ---------------------------------------------------------------------------
# Carriers


def carrier_of(x) -> str:
    if isinstance(x, bool):
        raise TypeError("bool is not a ring element")
    if isinstance(x, (int, Fraction)):
        return "rational"
    if isinstance(x, MultiPoly):
        return "poly"
    if isinstance(x, float):
        return "float"
    if isinstance(x, TruncSeries):
        return "series"
    raise TypeError(f"unsupported ring element {type(x).__name__}")


def zero_like(x):
    if isinstance(x, MultiPoly):
        return MultiPoly.zero(x.num_vars, x.names)
    if isinstance(x, TruncSeries):
        return TruncSeries.zero(x.cutoff, x.coeffs[0])
    if isinstance(x, float):
        return 0.0
    return Fraction(0)


def one_like(x):
    if isinstance(x, MultiPoly):
        return MultiPoly.one(x.num_vars, x.names)
    if isinstance(x, TruncSeries):
        return TruncSeries.constant(one_like(x.coeffs[0]), x.cutoff)
    if isinstance(x, float):
        return 1.0
    return Fraction(1)


def render(x) -> str:
    if isinstance(x, (int, Fraction)):
        return render_rational(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


# ---------------------------------------------------------------------------
# TruncSeries


def _coeff_carrier(coeffs) -> tuple[str, int | None]:
    kinds = {carrier_of(c) for c in coeffs}
    if kinds - {"rational", "poly"}:
        raise CarrierMismatch(f"series coefficients must be rational or polynomial, got {kinds}")
    if "poly" in kinds:
        nv = {c.num_vars for c in coeffs if isinstance(c, MultiPoly)}
        if len(nv) != 1:
            raise CarrierMismatch("polynomial coefficients over different variable sets")
        return "poly", nv.pop()
    return "rational", None


class TruncSeries:
    """Power series in ``t`` known exactly through degree ``cutoff`` inclusive."""

    __slots__ = ("cutoff", "coeffs", "carrier", "_num_vars", "_names")

    def __init__(self, coeffs: Iterable, cutoff: int | None = None):
        coeffs = list(coeffs)
        if cutoff is None:
            cutoff = len(coeffs) - 1
        if cutoff < 0:
            raise ValueError("cutoff must be >= 0")
        carrier, nv = _coeff_carrier(coeffs) if coeffs else ("rational", None)
        names = None
        if carrier == "poly":
            names = next(c.names for c in coeffs if isinstance(c, MultiPoly))
            zero = MultiPoly.zero(nv, names)
            norm = [c if isinstance(c, MultiPoly) else MultiPoly.constant(c, nv, names) for c in coeffs]
        else:
            zero = Fraction(0)
            norm = [as_rational(c) for c in coeffs]
        norm = norm[: cutoff + 1] + [zero] * (cutoff + 1 - len(norm))
        self.cutoff = cutoff
        self.coeffs = tuple(norm)
        self.carrier = carrier
        self._num_vars = nv
        self._names = names

    @classmethod
    def zero(cls, cutoff: int, like=None) -> "TruncSeries":
        z = zero_like(like) if like is not None else Fraction(0)
        return cls([z] * (cutoff + 1), cutoff)

    @classmethod
    def constant(cls, c, cutoff: int) -> "TruncSeries":
        return cls([c] + [zero_like(c)] * cutoff, cutoff)

    @classmethod
    def variable(cls, cutoff: int) -> "TruncSeries":
        return cls([0, 1], cutoff)

    def _zero_coeff(self):
        return zero_like(self.coeffs[0])

    def _check(self, other: "TruncSeries"):
        if self.carrier != other.carrier or self._num_vars != other._num_vars:
            raise CarrierMismatch(f"{self.carrier} series vs {other.carrier} series")

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            self._check(other)
            return other
        if _is_scalar(other) or isinstance(other, MultiPoly):
            if isinstance(other, MultiPoly) and self.carrier != "poly":
                raise CarrierMismatch("polynomial scalar with rational series")
            return TruncSeries.constant(self._lift(other), self.cutoff)
        return NotImplemented

    def _lift(self, c):
        if self.carrier == "poly" and not isinstance(c, MultiPoly):
            return MultiPoly.constant(c, self._num_vars, self._names)
        return c

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def truncate(self, cutoff: int) -> "TruncSeries":
        if cutoff > self.cutoff:
            raise ValueError("cannot raise the cutoff of a truncated series")
        return TruncSeries(self.coeffs[: cutoff + 1], cutoff)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = min(self.cutoff, other.cutoff)
        return TruncSeries([self.coeffs[k] + other.coeffs[k] for k in range(d + 1)], d)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.cutoff)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if _is_scalar(other) or isinstance(other, MultiPoly):
            if isinstance(other, MultiPoly) and self.carrier != "poly":
                raise CarrierMismatch("polynomial scalar with rational series")
            return TruncSeries([c * other for c in self.coeffs], self.cutoff)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = min(self.cutoff, other.cutoff)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(d + 1):
            acc = None
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    term = a[i] * b[k - i]
                    acc = term if acc is None else acc + term
            out.append(acc if acc is not None else self._zero_coeff())
        return TruncSeries(out, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = TruncSeries.constant(one_like(self.coeffs[0]), self.cutoff)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, TruncSeries):
            return (
                self.cutoff == other.cutoff
                and self.carrier == other.carrier
                and self.coeffs == other.coeffs
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.cutoff, self.coeffs))

    def derivative(self) -> "TruncSeries":
        """Formal d/dt; the cutoff drops by one (a cutoff-0 series maps to 0 at cutoff 0)."""
        if self.cutoff == 0:
            return TruncSeries([self._zero_coeff()], 0)
        return TruncSeries([self.coeffs[k] * k for k in range(1, self.cutoff + 1)], self.cutoff - 1)

    def evaluate(self, x):
        """Horner evaluation of the truncation as a polynomial."""
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def _term_strings(self):
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            tpow = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if isinstance(c, MultiPoly) and len(c) > 1:
                body = f"({c})" + (f"*{tpow}" if tpow else "")
                yield False, body
                continue
            if isinstance(c, MultiPoly):
                (exps, cc), = c.items()
                mono = c._monomial_str(exps)
                neg, mag = cc < 0, abs(cc)
                if mono and tpow:
                    core = mono + "*" + tpow
                else:
                    core = mono or tpow
            else:
                neg, mag = c < 0, abs(c)
                core = tpow
            if not core:
                body = render_rational(mag)
            elif mag == 1:
                body = core
            else:
                body = f"{render_rational(mag)}*{core}"
            yield neg, body

    def __str__(self) -> str:
        out = ""
        for neg, body in self._term_strings():
            if not out:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        tail = f"O(t^{self.cutoff + 1})"
        return f"{out} + {tail}" if out else tail

    def __repr__(self) -> str:
        return f"TruncSeries({str(self)!r})"


def series_mul(s: TruncSeries, t: TruncSeries) -> TruncSeries:
    if not isinstance(s, TruncSeries) or not isinstance(t, TruncSeries):
        raise TypeError("series_mul expects two TruncSeries")
    s._check(t)
    return s * t


def series_compose_linear(f: TruncSeries, scale) -> TruncSeries:
    """Return ``f(scale * t)``, i.e. coefficients ``f_k * scale**k``.

    A polynomial ``scale`` lifts a rational series into the polynomial
    carrier.
    """
    carrier = carrier_of(scale)
    if carrier not in ("rational", "poly"):
        raise CarrierMismatch(f"scale must be rational or polynomial, got {carrier}")
    if carrier == "rational":
        if f.carrier == "rational":
            scale = as_rational(scale)
        power = one_like(f.coeffs[0]) if f.carrier == "poly" else Fraction(1)
    else:
        if f.carrier == "poly" and f._num_vars != scale.num_vars:
            raise CarrierMismatch("scale and series live over different variable sets")
        power = MultiPoly.one(scale.num_vars, scale.names)
    out = []
    for c in f.coeffs:
        out.append(power * c if carrier == "poly" else c * power)
        power = power * scale
    return TruncSeries(out, f.cutoff)


# ---------------------------------------------------------------------------
# RingMatrix


class RingMatrix:
    """Square matrix whose entries share one carrier."""

    __slots__ = ("n", "entries", "carrier")

    def __init__(self, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("RingMatrix must be square")
        kinds = {carrier_of(x) for r in rows for x in r}
        if len(kinds) > 1:
            raise CarrierMismatch(f"mixed carriers in matrix: {sorted(kinds)}")
        carrier = kinds.pop() if kinds else "rational"
        if carrier == "rational":
            rows = [[as_rational(x) for x in r] for r in rows]
        elif carrier == "series":
            cutoffs = {x.cutoff for r in rows for x in r}
            if len(cutoffs) > 1:
                raise CarrierMismatch(f"series entries with different cutoffs {sorted(cutoffs)}")
        elif carrier == "poly":
            if len({x.num_vars for r in rows for x in r}) > 1:
                raise CarrierMismatch("polynomial entries over different variable sets")
        self.n = n
        self.entries = tuple(tuple(r) for r in rows)
        self.carrier = carrier

    def __getitem__(self, idx):
        j, k = idx
        return self.entries[j][k]

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def map(self, fn) -> "RingMatrix":
        return RingMatrix([[fn(x) for x in r] for r in self.entries])

    def transpose(self) -> "RingMatrix":
        return RingMatrix([list(c) for c in zip(*self.entries)])

    def is_symmetric(self) -> bool:
        return all(
            self.entries[j][k] == self.entries[k][j]
            for j in range(self.n)
            for k in range(j + 1, self.n)
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RingMatrix":
        return RingMatrix([[self.entries[j][k] for k in cols] for j in rows])

    def to_lists(self):
        return [list(r) for r in self.entries]

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(render(x) for x in r) + "]" for r in self.entries) + "]"

    __repr__ = __str__


def outer(u: Sequence, v: Sequence) -> RingMatrix:
    if len(u) != len(v):
        raise ValueError("outer product needs equal lengths")
    return RingMatrix([[x * y for y in v] for x in u])


def multinomial(total: int, parts: Sequence[int]) -> int:
    if sum(parts) != total or any(p < 0 for p in parts):
        raise ValueError("parts must be non-negative and sum to total")
    out = math.factorial(total)
    for p in parts:
        out //= math.factorial(p)
    return out
