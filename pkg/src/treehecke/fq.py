"""Exact arithmetic for F_q and its quadratic extension F_{q^2}.

q = p^e with p an odd prime.  F_q is Z/p for e = 1 and a polynomial
quotient Z/p[x]/(f) for a fixed irreducible monic f when e > 1.  The
quadratic extension is presented as F_q[eta]/(eta^2 - ns) for a fixed
non-square ns of F_q, so that conjugation (the q-power Frobenius) is
literally a + b*eta -> a - b*eta.

All values are immutable; operations are pure and safe to share across
tasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Split q = p^e; raises if q is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                raise ValueError(f"{q} is not a prime power")
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"{q} is not a prime power")


def _poly_mul_mod(a: tuple[int, ...], b: tuple[int, ...], mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    e = len(mod) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    # reduce by the monic modulus
    for i in range(len(out) - 1, e - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(e):
                out[i - e + j] = (out[i - e + j] - c * mod[j]) % p
    res = out[:e]
    res += [0] * (e - len(res))
    return tuple(res)


def _find_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree e over Z/p, by coefficient order.

    Irreducibility is checked by trial multiplication: f is reducible iff
    it has a root or a monic factor of degree <= e//2.  Degrees here are
    tiny (e <= 2 in practice), so brute force is fine.
    """

    def monic_polys(d: int) -> Iterator[tuple[int, ...]]:
        for n in range(p**d):
            coeffs = []
            m = n
            for _ in range(d):
                coeffs.append(m % p)
                m //= p
            yield tuple(coeffs) + (1,)

    def divides(g: tuple[int, ...], f: tuple[int, ...]) -> bool:
        r = list(f)
        dg = len(g) - 1
        while len(r) - 1 >= dg and any(r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < dg:
                break
            c = r[-1]
            shift = len(r) - 1 - dg
            for j in range(dg + 1):
                r[shift + j] = (r[shift + j] - c * g[j]) % p
            while r and r[-1] == 0:
                r.pop()
        return not any(r)

    for f in monic_polys(e):
        if f[0] == 0:
            continue
        reducible = False
        for d in range(1, e // 2 + 1):
            for g in monic_polys(d):
                if divides(g, f):
                    reducible = True
                    break
            if reducible:
                break
        if not reducible:
            return f
    raise RuntimeError("no irreducible polynomial found")


class Fq:
    """The field with q = p^e elements.

    Elements are integers in range(q) encoding coefficient vectors in
    base p with respect to the power basis of x in Z/p[x]/(f).  For
    e = 1 an element is just its residue mod p.
    """

    def __init__(self, q: int):
        p, e = factor_prime_power(q)
        if p == 2:
            raise ValueError("even residue characteristic is not supported")
        self.q = q
        self.p = p
        self.e = e
        self.modulus = _find_irreducible(p, e) if e > 1 else (0, 1)

    def __repr__(self) -> str:
        return f"Fq({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Fq) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("Fq", self.q))

    # -- encoding ----------------------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def encode(self, coeffs) -> int:
        a = 0
        for c in reversed(list(coeffs)):
            a = a * self.p + (c % self.p)
        return a

    def elements(self) -> range:
        return range(self.q)

    # -- arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.encode((x + y) % self.p for x, y in zip(ca, cb))

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return self.encode((-x) % self.p for x in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        return self.encode(_poly_mul_mod(self.coeffs(a), self.coeffs(b), self.modulus, self.p))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        r, base = 1, a  # 1 encodes the unit in every presentation
        while n:
            if n & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            n >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverting 0")
        return self.pow(a, self.q - 2)

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        return self.pow(a, (self.q - 1) // 2) == 1

    def find_nonsquare(self) -> int:
        for a in range(1, self.q):
            if not self.is_square(a):
                return a
        raise RuntimeError("no non-square found")

    def from_int(self, n: int) -> int:
        """Image of the rational integer n under Z -> F_q."""
        return n % self.p if self.e == 1 else self.encode((n % self.p,) + (0,) * (self.e - 1))


@dataclass(frozen=True)
class FqParams:
    """Presentation data for the pair F_q within F_{q^2}.

    nonsquare is the fixed non-square of F_q with eta^2 = nonsquare, so
    conjugation sends eta to -eta.
    """

    p: int
    e: int
    q: int
    nonsquare: int

    def __post_init__(self):
        if self.p == 2 or not is_prime(self.p):
            raise ValueError("p must be an odd prime")
        if self.q != self.p**self.e:
            raise ValueError("q must equal p^e")


class Fq2:
    """The quadratic extension F_{q^2} = F_q[eta]/(eta^2 - ns).

    Elements are pairs (a, b) of F_q codes standing for a + b*eta.
    Conjugation (a, b) -> (a, -b) is the q-power Frobenius and fixes
    exactly the F_q-line b = 0.
    """

    def __init__(self, q: int, nonsquare: int | None = None):
        self.base = Fq(q)
        self.q = q
        if nonsquare is None:
            nonsquare = self.base.find_nonsquare()
        if self.base.is_square(nonsquare):
            raise ValueError(f"{nonsquare} is a square in F_{q}")
        self.nonsquare = nonsquare
        self.params = FqParams(p=self.base.p, e=self.base.e, q=q, nonsquare=nonsquare)
        self.zero = (0, 0)
        self.one = (self.base.from_int(1), 0)
        self.eta = (0, self.base.from_int(1))

    def __repr__(self) -> str:
        return f"Fq2({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Fq2) and other.q == self.q and other.nonsquare == self.nonsquare

    def __hash__(self) -> int:
        return hash(("Fq2", self.q, self.nonsquare))

    def elements(self) -> Iterator[tuple[int, int]]:
        for a in self.base.elements():
            for b in self.base.elements():
                yield (a, b)

    def add(self, x, y):
        return (self.base.add(x[0], y[0]), self.base.add(x[1], y[1]))

    def neg(self, x):
        return (self.base.neg(x[0]), self.base.neg(x[1]))

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        F = self.base
        a, b = x
        c, d = y
        # (a + b eta)(c + d eta) = ac + bd*ns + (ad + bc) eta
        re = F.add(F.mul(a, c), F.mul(F.mul(b, d), self.nonsquare))
        im = F.add(F.mul(a, d), F.mul(b, c))
        return (re, im)

    def conj(self, x):
        return (x[0], self.base.neg(x[1]))

    def norm(self, x) -> int:
        """N(x) = x * conj(x), an element of F_q."""
        F = self.base
        a, b = x
        return F.sub(F.mul(a, a), F.mul(self.nonsquare, F.mul(b, b)))

    def trace(self, x) -> int:
        return self.base.add(x[0], x[0])

    def inv(self, x):
        n = self.norm(x)
        if n == 0:
            raise ZeroDivisionError("inverting 0 in Fq2")
        ni = self.base.inv(n)
        c = self.conj(x)
        return (self.base.mul(c[0], ni), self.base.mul(c[1], ni))

    def pow(self, x, n: int):
        if n < 0:
            return self.pow(self.inv(x), -n)
        r = self.one
        base = x
        while n:
            if n & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            n >>= 1
        return r

    def from_int(self, n: int):
        return (self.base.from_int(n), 0)

    def is_zero(self, x) -> bool:
        return x == (0, 0)

    def trace_zero_elements(self) -> Iterator[tuple[int, int]]:
        """All x with x + conj(x) = 0, i.e. the eta-line."""
        for b in self.base.elements():
            yield (0, b)

    def half(self):
        """The element 1/2 (odd characteristic)."""
        return self.from_int((self.base.p + 1) // 2)


@lru_cache(maxsize=None)
def get_fq2(q: int) -> Fq2:
    """Shared construction of F_{q^2} with the default non-square."""
    return Fq2(q)
