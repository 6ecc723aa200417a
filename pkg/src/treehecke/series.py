"""Truncated power series and bounded Laurent series over F_{q^2}.

These model the ring of integers of the unramified quadratic extension
of F_q((t)) and its fraction field: exact arithmetic modulo t^m with
explicit precision tracking.  A read outside the tracked window raises
InsufficientPrecision instead of silently returning zero.

Conjugation acts coefficientwise and fixes t.  All values are immutable.
"""

from __future__ import annotations

from .errors import InsufficientPrecision, NonUnit, NotNormOne, TraceNotZero
from .fq import Fq2


class TruncatedSeries:
    """Element of F_{q^2}[t]/(t^m): coefficients c[0..m-1], precision m."""

    __slots__ = ("field", "coeffs", "precision")

    def __init__(self, field: Fq2, coeffs, precision: int):
        if precision < 1:
            raise ValueError("precision must be >= 1")
        coeffs = list(coeffs)[:precision]
        coeffs += [field.zero] * (precision - len(coeffs))
        self.field = field
        self.coeffs = tuple(coeffs)
        self.precision = precision

    @staticmethod
    def from_scalar(field: Fq2, x, precision: int) -> "TruncatedSeries":
        return TruncatedSeries(field, [x], precision)

    @staticmethod
    def one(field: Fq2, precision: int) -> "TruncatedSeries":
        return TruncatedSeries.from_scalar(field, field.one, precision)

    @staticmethod
    def zero(field: Fq2, precision: int) -> "TruncatedSeries":
        return TruncatedSeries(field, [], precision)

    @staticmethod
    def t(field: Fq2, precision: int) -> "TruncatedSeries":
        return TruncatedSeries(field, [field.zero, field.one], precision)

    def _common_precision(self, other: "TruncatedSeries") -> int:
        return min(self.precision, other.precision)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        m = self._common_precision(other)
        F = self.field
        return TruncatedSeries(F, [F.add(a, b) for a, b in zip(self.coeffs[:m], other.coeffs[:m])], m)

    def __neg__(self) -> "TruncatedSeries":
        F = self.field
        return TruncatedSeries(F, [F.neg(a) for a in self.coeffs], self.precision)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        m = self._common_precision(other)
        F = self.field
        out = [F.zero] * m
        for i in range(m):
            a = self.coeffs[i]
            if a == F.zero:
                continue
            for j in range(m - i):
                b = other.coeffs[j]
                if b != F.zero:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return TruncatedSeries(F, out, m)

    def scale(self, x) -> "TruncatedSeries":
        F = self.field
        return TruncatedSeries(F, [F.mul(x, c) for c in self.coeffs], self.precision)

    def conj(self) -> "TruncatedSeries":
        F = self.field
        return TruncatedSeries(F, [F.conj(c) for c in self.coeffs], self.precision)

    def valuation(self) -> int:
        """Index of the first nonzero coefficient; precision if all vanish."""
        for i, c in enumerate(self.coeffs):
            if c != self.field.zero:
                return i
        return self.precision

    def is_zero(self) -> bool:
        return self.valuation() == self.precision

    def invert(self) -> "TruncatedSeries":
        """Multiplicative inverse of a unit (valuation 0)."""
        F = self.field
        if self.valuation() != 0:
            raise NonUnit("series with positive valuation has no inverse")
        m = self.precision
        c0inv = F.inv(self.coeffs[0])
        out = [F.zero] * m
        out[0] = c0inv
        for k in range(1, m):
            s = F.zero
            for j in range(1, k + 1):
                s = F.add(s, F.mul(self.coeffs[j], out[k - j]))
            out[k] = F.neg(F.mul(c0inv, s))
        return TruncatedSeries(F, out, m)

    def __eq__(self, other) -> bool:
        """Equality on the common precision window."""
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        m = self._common_precision(other)
        return self.coeffs[:m] == other.coeffs[:m]

    # Equality compares on the common window, so hashing would be unsound.
    __hash__ = None  # type: ignore[assignment]

    def norm_map(self) -> "TruncatedSeries":
        return self * self.conj()

    def is_norm_one(self) -> bool:
        return self.norm_map() == TruncatedSeries.one(self.field, self.precision)

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c != self.field.zero:
                parts.append(f"{c}*t^{i}" if i else f"{c}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(t^{self.precision})"

    __repr__ = __str__


def series_invert(x: TruncatedSeries) -> TruncatedSeries:
    return x.invert()


def filtration_level(s: TruncatedSeries, cap: int | None = None) -> int:
    """v(s - 1) for a norm-one series, capped at precision - 1.

    This is the depth of s in the norm-one filtration: the level-c
    subgroup consists exactly of the norm-one elements with
    v(s - 1) >= c.
    """
    if not s.is_norm_one():
        raise NotNormOne(f"{s} is not norm-one")
    one = TruncatedSeries.one(s.field, s.precision)
    v = (s - one).valuation()
    limit = s.precision - 1 if cap is None else cap
    return min(v, limit)


class BoundedLaurent:
    """A Laurent series known exactly on a window [floor, floor + len).

    Coefficients outside the window are unknown (below the floor they
    are known to vanish).  Arithmetic tracks the worst-case window of
    the result; reading a coefficient at or beyond the ceiling raises.
    """

    __slots__ = ("field", "floor", "coeffs")

    def __init__(self, field: Fq2, floor: int, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)
        self.floor = floor
        if not self.coeffs:
            raise ValueError("empty precision window")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_pairs(field: Fq2, pairs, window: tuple[int, int]) -> "BoundedLaurent":
        """Exact element with known support, carried on the given window."""
        lo, hi = window
        coeffs = [field.zero] * (hi - lo)
        for e, c in pairs:
            if not (lo <= e < hi):
                raise ValueError(f"support {e} outside window [{lo}, {hi})")
            coeffs[e - lo] = c
        return BoundedLaurent(field, lo, coeffs)

    @staticmethod
    def monomial(field: Fq2, c, exp: int, window: tuple[int, int]) -> "BoundedLaurent":
        return BoundedLaurent.from_pairs(field, [(exp, c)], window)

    @staticmethod
    def zero_on(field: Fq2, window: tuple[int, int]) -> "BoundedLaurent":
        return BoundedLaurent.from_pairs(field, [], window)

    @staticmethod
    def from_series(x: TruncatedSeries) -> "BoundedLaurent":
        return BoundedLaurent(x.field, 0, x.coeffs)

    # -- window bookkeeping ----------------------------------------------

    @property
    def ceil(self) -> int:
        return self.floor + len(self.coeffs)

    def window(self) -> tuple[int, int]:
        return (self.floor, self.ceil)

    def coeff(self, e: int):
        """Coefficient of t^e; errors past the ceiling, zero below the floor."""
        if e >= self.ceil:
            raise InsufficientPrecision(f"coefficient t^{e} outside window [{self.floor}, {self.ceil})")
        if e < self.floor:
            return self.field.zero
        return self.coeffs[e - self.floor]

    def _trim(self) -> "BoundedLaurent":
        """Raise the floor past known leading zeros (value unchanged)."""
        i = 0
        while i < len(self.coeffs) - 1 and self.coeffs[i] == self.field.zero:
            i += 1
        return BoundedLaurent(self.field, self.floor + i, self.coeffs[i:]) if i else self

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "BoundedLaurent") -> "BoundedLaurent":
        F = self.field
        lo = min(self.floor, other.floor)
        hi = min(self.ceil, other.ceil)
        if hi <= lo:
            raise InsufficientPrecision("windows do not overlap in addition")
        return BoundedLaurent(F, lo, [F.add(self.coeff(e), other.coeff(e)) for e in range(lo, hi)])

    def __neg__(self) -> "BoundedLaurent":
        F = self.field
        return BoundedLaurent(F, self.floor, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: "BoundedLaurent") -> "BoundedLaurent":
        return self + (-other)

    def __mul__(self, other: "BoundedLaurent") -> "BoundedLaurent":
        F = self.field
        a, b = self._trim(), other._trim()
        lo = a.floor + b.floor
        hi = min(a.ceil + b.floor, b.ceil + a.floor)
        if hi <= lo:
            raise InsufficientPrecision("empty product window")
        out = [F.zero] * (hi - lo)
        for i, ca in enumerate(a.coeffs):
            if ca == F.zero:
                continue
            ea = a.floor + i
            for j, cb in enumerate(b.coeffs):
                e = ea + b.floor + j
                if e >= hi:
                    break
                if cb != F.zero:
                    out[e - lo] = F.add(out[e - lo], F.mul(ca, cb))
        return BoundedLaurent(F, lo, out)

    def conj(self) -> "BoundedLaurent":
        F = self.field
        return BoundedLaurent(F, self.floor, [F.conj(c) for c in self.coeffs])

    def scale_t(self, k: int) -> "BoundedLaurent":
        """Multiply by t^k (exact; shifts the window)."""
        return BoundedLaurent(self.field, self.floor + k, self.coeffs)

    def valuation(self) -> int:
        """Valuation; requires a nonzero coefficient inside the window."""
        for i, c in enumerate(self.coeffs):
            if c != self.field.zero:
                return self.floor + i
        raise InsufficientPrecision("valuation of an element indistinguishable from 0 on its window")

    def is_zero_on_window(self) -> bool:
        return all(c == self.field.zero for c in self.coeffs)

    def invert(self) -> "BoundedLaurent":
        """Inverse of an element with known valuation."""
        v = self.valuation()
        F = self.field
        unit = self.coeffs[v - self.floor:]
        m = len(unit)
        c0inv = F.inv(unit[0])
        out = [F.zero] * m
        out[0] = c0inv
        for k in range(1, m):
            s = F.zero
            for j in range(1, k + 1):
                s = F.add(s, F.mul(unit[j], out[k - j]))
            out[k] = F.neg(F.mul(c0inv, s))
        return BoundedLaurent(F, -v, out)

    def is_integral(self) -> bool:
        """All known coefficients below t^0 vanish; errors when unknowable."""
        if self.ceil <= 0:
            raise InsufficientPrecision("window ends before t^0; integrality unknowable")
        return all(self.coeff(e) == self.field.zero for e in range(self.floor, 0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoundedLaurent):
            return NotImplemented
        lo = min(self.floor, other.floor)
        hi = min(self.ceil, other.ceil)
        if hi <= lo:
            raise InsufficientPrecision("windows do not overlap in comparison")
        return all(self.coeff(e) == other.coeff(e) for e in range(lo, hi))

    def __hash__(self):
        raise TypeError("BoundedLaurent compares on windows and is unhashable")

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            e = self.floor + i
            if c != self.field.zero:
                parts.append(f"{c}*t^{e}" if e else f"{c}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(t^{self.ceil})"

    __repr__ = __str__


def trace_zero_lift(field: Fq2, residue) -> None:
    """Validate that residue + conj(residue) = 0; raises TraceNotZero."""
    if field.add(residue, field.conj(residue)) != field.zero:
        raise TraceNotZero(f"{residue} has nonzero trace")
