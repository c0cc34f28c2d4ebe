"""Concrete coefficient fields for specialization.

Finite fields wrap ``flint.fq_default`` and also expose integer codes plus
addition/multiplication tables so the compiled kernels can work on plain
arrays.  Cyclotomic fields Q(ζ_m) are polynomials modulo Φ_m.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property

import flint
import numpy as np

MAX_TABLE_ORDER = 4096


class FieldError(ValueError):
    pass


class FiniteField:
    """GF(p^d) with integer codes Σ c_k p^k."""

    char0 = False

    def __init__(self, p, d=1):
        if not flint.fmpz(p).is_prime():
            raise FieldError(f"{p} is not prime")
        self.p, self.d = p, d
        self.q = p ** d
        self.ctx = flint.fq_default_ctx(p, d)

    def __repr__(self):
        return f"GF({self.p}^{self.d})" if self.d > 1 else f"GF({self.p})"

    @property
    def name(self):
        return f"F{self.q}"

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has p in its denominator")
            return self.ctx(x.numerator) / self.ctx(x.denominator)
        if isinstance(x, flint.fmpq):
            return self(Fraction(int(x.p), int(x.q)))
        if isinstance(x, flint.fmpz):
            x = int(x)
        return self.ctx(x)

    def zero(self):
        return self.ctx.zero()

    def one(self):
        return self.ctx.one()

    def gen(self):
        return self.ctx.gen()

    def is_zero(self, x):
        return x.is_zero()

    def sqrt(self, x):
        if x.is_zero():
            return x
        if not x.is_square():
            return None
        return x.sqrt()

    def elements(self):
        for k in range(self.q):
            yield self.decode(k)

    def encode(self, x):
        coeffs = [int(c) for c in x.to_list()]
        return sum(c * self.p ** k for k, c in enumerate(coeffs))

    def decode(self, k):
        coeffs = []
        for _ in range(self.d):
            coeffs.append(k % self.p)
            k //= self.p
        g = self.gen()
        out = self.zero()
        for j, c in enumerate(coeffs):
            if c:
                out = out + self.ctx(c) * g ** j
        return out

    def element_order(self, x):
        if x.is_zero():
            raise FieldError("0 has no multiplicative order")
        k, y = 1, x
        while not y.is_one():
            y = y * x
            k += 1
        return k

    def element_of_order(self, m):
        """Deterministic element of exact multiplicative order m, or None."""
        if (self.q - 1) % m:
            return None
        for k in range(1, self.q):
            x = self.decode(k)
            if self.element_order(x) == m:
                return x
        return None

    @cached_property
    def tables(self):
        """(add, mul, neg, inv) lookup tables on integer codes."""
        if self.q > MAX_TABLE_ORDER:
            raise FieldError(f"field of order {self.q} too large for table kernels")
        q = self.q
        els = [self.decode(k) for k in range(q)]
        add = np.zeros((q, q), dtype=np.int32)
        mul = np.zeros((q, q), dtype=np.int32)
        for a in range(q):
            for b in range(a, q):
                add[a, b] = add[b, a] = self.encode(els[a] + els[b])
                mul[a, b] = mul[b, a] = self.encode(els[a] * els[b])
        neg = np.array([self.encode(-x) for x in els], dtype=np.int32)
        inv = np.array([0] + [self.encode(x.inverse()) for x in els[1:]], dtype=np.int32)
        return add, mul, neg, inv

    def fmt(self, x):
        if self.d == 1:
            return str(int(x.to_list()[0]) if x.to_list() else 0)
        return str(x).replace(" ", "")


class CyclotomicField:
    """Q(ζ_m) = Q[z]/Φ_m(z); elements are reduced fmpq_poly."""

    char0 = True

    def __init__(self, m):
        self.m = m
        self.modulus = flint.fmpq_poly(flint.fmpz_poly.cyclotomic(m))
        self.d = self.modulus.degree()
        self.p = 0

    def __repr__(self):
        return f"Q(zeta{self.m})"

    @property
    def name(self):
        return f"Qzeta{self.m}"

    def _red(self, f):
        return f % self.modulus

    def __call__(self, x):
        if isinstance(x, Fraction):
            x = flint.fmpq(x.numerator, x.denominator)
        return CycElt(self, flint.fmpq_poly([x]))

    def zero(self):
        return CycElt(self, flint.fmpq_poly([]))

    def one(self):
        return self(1)

    def gen(self):
        return CycElt(self, self._red(flint.fmpq_poly([0, 1])))

    def is_zero(self, x):
        return x.f.is_zero()

    def sqrt(self, x):
        """Square root among ±ζ^k·(rational square), else None."""
        if x.f.is_zero():
            return x
        z = self.gen()
        zk = self.one()
        for _ in range(2 * self.m):
            y = x * zk.inverse() * zk.inverse()
            if y.f.degree() <= 0:
                c = y.f[0]
                num, den = int(c.p), int(c.q)
                if num > 0:
                    a, b = flint.fmpz(num).sqrtrem(), flint.fmpz(den).sqrtrem()
                    if a[1] == 0 and b[1] == 0:
                        return zk * self(Fraction(int(a[0]), int(b[0])))
            zk = zk * z
        return None

    def element_of_order(self, k):
        if self.m % k:
            return None
        return self.gen() ** (self.m // k)

    def fmt(self, x):
        return str(x.f).replace("x", "z").replace(" ", "")


class CycElt:
    __slots__ = ("F", "f")

    def __init__(self, F, f):
        self.F, self.f = F, f

    def _c(self, o):
        return o if isinstance(o, CycElt) else self.F(o)

    def __add__(self, o):
        return CycElt(self.F, self.f + self._c(o).f)

    __radd__ = __add__

    def __sub__(self, o):
        return CycElt(self.F, self.f - self._c(o).f)

    def __rsub__(self, o):
        return self._c(o) - self

    def __neg__(self):
        return CycElt(self.F, -self.f)

    def __mul__(self, o):
        return CycElt(self.F, self.F._red(self.f * self._c(o).f))

    __rmul__ = __mul__

    def inverse(self):
        if self.f.is_zero():
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = self.f.xgcd(self.F.modulus)
        return CycElt(self.F, self.F._red(s / g[0]))

    def __truediv__(self, o):
        return self * self._c(o).inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.F.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, o):
        return isinstance(o, (CycElt, int, Fraction)) and (self - o).f.is_zero()

    def __hash__(self):
        return hash(str(self.f))

    def is_zero(self):
        return self.f.is_zero()

    def is_one(self):
        return (self - 1).f.is_zero()

    def __repr__(self):
        return self.F.fmt(self)
