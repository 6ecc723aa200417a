"""Laurent polynomials in a single formal variable q over the integers.

This is the coefficient ring for everything symbolic in the residue
cardinality: Hecke-operator coefficients, torus characters, tallies.
Instances are immutable; arithmetic returns new objects.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import NonIntegralCoefficient, ZeroSubstitution


class LaurentQ:
    """An element of Z[q, q^-1], stored as exponent -> coefficient."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Mapping[int, int] | int = 0):
        if isinstance(coeffs, int):
            coeffs = {0: coeffs} if coeffs else {}
        self.c: dict[int, int] = {e: v for e, v in coeffs.items() if v}

    # -- constructors --------------------------------------------------

    @staticmethod
    def term(coeff: int, exp: int) -> "LaurentQ":
        return LaurentQ({exp: coeff})

    @staticmethod
    def q(exp: int = 1) -> "LaurentQ":
        return LaurentQ({exp: 1})

    @staticmethod
    def from_int_poly(coeffs: list[int]) -> "LaurentQ":
        """coeffs[i] is the coefficient of q^i."""
        return LaurentQ({i: c for i, c in enumerate(coeffs)})

    # -- ring operations ------------------------------------------------

    def __add__(self, other) -> "LaurentQ":
        other = _coerce(other)
        out = dict(self.c)
        for e, v in other.c.items():
            out[e] = out.get(e, 0) + v
        return LaurentQ(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentQ":
        return LaurentQ({e: -v for e, v in self.c.items()})

    def __sub__(self, other) -> "LaurentQ":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "LaurentQ":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "LaurentQ":
        other = _coerce(other)
        out: dict[int, int] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + v1 * v2
        return LaurentQ(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentQ":
        if n < 0:
            raise ValueError("negative powers of a general Laurent polynomial")
        r = LaurentQ(1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        return self.c == other.c

    def __hash__(self) -> int:
        return hash(frozenset(self.c.items()))

    def __bool__(self) -> bool:
        return bool(self.c)

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.c

    def min_exp(self) -> int:
        if not self.c:
            return 0
        return min(self.c)

    def max_exp(self) -> int:
        if not self.c:
            return 0
        return max(self.c)

    def shift(self, k: int) -> "LaurentQ":
        """Multiply by q^k."""
        return LaurentQ({e + k: v for e, v in self.c.items()})

    def eval(self, n: int) -> Fraction:
        """Substitute q := n.  A ring homomorphism for n != 0."""
        if n == 0:
            if self.min_exp() < 0:
                raise ZeroSubstitution("negative exponents at q = 0")
            return Fraction(self.c.get(0, 0))
        total = Fraction(0)
        for e, v in self.c.items():
            total += Fraction(v) * Fraction(n) ** e
        return total

    def eval_int(self, n: int) -> int:
        val = self.eval(n)
        if val.denominator != 1:
            raise NonIntegralCoefficient(f"evaluation at {n} is not an integer: {val}")
        return int(val)

    def divide_exact(self, other: "LaurentQ") -> "LaurentQ":
        """Exact division in Z[q, q^-1]; raises if not divisible."""
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        if self.is_zero():
            return LaurentQ(0)
        # Shift both to ordinary polynomials and long-divide.
        s1, s2 = self.min_exp(), other.min_exp()
        a = [self.c.get(e, 0) for e in range(s1, self.max_exp() + 1)]
        b = [other.c.get(e, 0) for e in range(s2, other.max_exp() + 1)]
        qcoeffs = [0] * (len(a) - len(b) + 1) if len(a) >= len(b) else []
        r = list(a)
        for i in range(len(a) - len(b), -1, -1):
            lead = r[i + len(b) - 1]
            if lead % b[-1] != 0:
                raise NonIntegralCoefficient("not divisible")
            t = lead // b[-1]
            qcoeffs[i] = t
            if t:
                for j, bj in enumerate(b):
                    r[i + j] -= t * bj
        if any(r):
            raise NonIntegralCoefficient("nonzero remainder")
        return LaurentQ({i + s1 - s2: v for i, v in enumerate(qcoeffs)})

    def divisible_by(self, other: "LaurentQ") -> bool:
        try:
            self.divide_exact(other)
            return True
        except NonIntegralCoefficient:
            return False

    def is_int_poly(self) -> bool:
        """True when no negative powers of q occur."""
        return self.min_exp() >= 0 or self.is_zero()

    def __str__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c, reverse=True):
            v = self.c[e]
            if e == 0:
                term = f"{v}"
            else:
                var = "q" if e == 1 else f"q^{e}"
                if v == 1:
                    term = var
                elif v == -1:
                    term = f"-{var}"
                else:
                    term = f"{v}*{var}"
            parts.append(term)
        out = parts[0]
        for t in parts[1:]:
            out += f" + {t}" if not t.startswith("-") else f" - {t[1:]}"
        return out

    __repr__ = __str__

    def to_sorted_items(self) -> list[tuple[int, int]]:
        return sorted(self.c.items())


def _coerce(x) -> LaurentQ:
    if isinstance(x, LaurentQ):
        return x
    if isinstance(x, int):
        return LaurentQ(x)
    raise TypeError(f"cannot coerce {type(x).__name__} into LaurentQ")


ZERO = LaurentQ(0)
ONE = LaurentQ(1)
Q = LaurentQ.q()


def qpoly(*coeffs: int) -> LaurentQ:
    """qpoly(c0, c1, ...) = c0 + c1*q + ..."""
    return LaurentQ.from_int_poly(list(coeffs))


def lagrange_interpolate_int(points: list[tuple[int, int]], degree_bound: int) -> LaurentQ:
    """Integer polynomial through the given (x, y) points.

    Needs len(points) >= degree_bound + 1.  Raises
    InterpolationDegreeExceeded when the fit has degree above the bound
    (which would mean the sample list was too short for the true
    polynomial) and NonIntegralCoefficient when the fit is not integral.
    """
    from .errors import InterpolationDegreeExceeded

    if len(points) < degree_bound + 1:
        raise InterpolationDegreeExceeded(
            f"need {degree_bound + 1} samples for degree bound {degree_bound}, got {len(points)}"
        )
    xs = [x for x, _ in points]
    ys = [y for _, y in points]
    n = len(points)
    # Newton's divided differences over Q, then expand.
    table = [Fraction(y) for y in ys]
    coeffs_newton = [table[0]]
    for level in range(1, n):
        for i in range(n - level):
            table[i] = (table[i + 1] - table[i]) / (xs[i + level] - xs[i])
        coeffs_newton.append(table[0])
    poly = [Fraction(0)] * n
    poly[0] = coeffs_newton[-1]
    for k in range(n - 2, -1, -1):
        # poly <- poly * (x - xs[k]) + coeffs_newton[k]
        new = [Fraction(0)] * n
        for i in range(n - 1):
            new[i + 1] += poly[i]
            new[i] -= poly[i] * xs[k]
        new[0] += coeffs_newton[k]
        poly = new
    out = {}
    for i, c in enumerate(poly):
        if c:
            if c.denominator != 1:
                raise NonIntegralCoefficient(f"non-integer interpolation coefficient {c}")
            out[i] = int(c)
    result = LaurentQ(out)
    if result.max_exp() > degree_bound:
        raise InterpolationDegreeExceeded(
            f"fitted degree {result.max_exp()} exceeds bound {degree_bound}"
        )
    return result
