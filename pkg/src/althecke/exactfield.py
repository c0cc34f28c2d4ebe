"""Exact coefficients: rational functions in u = sqrt(t) with formal roots.

An :class:`ExtScalar` is a finite sum ``c_S * prod_{h in S} r_h`` where the
``c_S`` are rational functions in ``u`` (FLINT ``fmpq_poly`` quotients) and
each ``r_h`` is a formal square root of the quantum integer ``[h]``.  The
Gaussian unit ``i`` is carried as bit 0 of the subset mask with ``i^2 = -1``,
so a coefficient with mask 0 or 1 is an element of ``Q(i)(u)``.

>>> a = sqrt_bracket(2)
>>> a * a == quantum_int(2)
True
>>> inv(sqrt_bracket(3)) == sqrt_bracket(3) / quantum_int(3)
True
"""
from __future__ import annotations

import contextvars
import re
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache

import flint

P = flint.fmpq_poly
_ZERO_POLY = P([])
_ONE_POLY = P([1])
_X = P([0, 1])

I_BIT = 1

_DEGREE_CAP = contextvars.ContextVar("degree_cap", default=None)


class DegreeCapExceeded(ArithmeticError):
    pass


@contextmanager
def degree_cap(cap):
    """Reject rational functions whose numerator or denominator degree exceeds cap."""
    token = _DEGREE_CAP.set(cap)
    try:
        yield
    finally:
        _DEGREE_CAP.reset(token)


def default_degree_cap(n, e):
    return 4 * n * e


def _check_cap(num, den):
    cap = _DEGREE_CAP.get()
    if cap is not None and max(num.degree(), den.degree()) > cap:
        raise DegreeCapExceeded(f"degree {max(num.degree(), den.degree())} above cap {cap}")


def _monic(num, den):
    lc = den.leading_coefficient()
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


class QF:
    """Reduced quotient num/den of polynomials in u, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduced=False):
        if not isinstance(num, P):
            num = P([num]) if not isinstance(num, (list, tuple)) else P(list(num))
        if den is None:
            den = _ONE_POLY
        elif not isinstance(den, P):
            den = P([den])
        if num == 0:
            self.num, self.den = _ZERO_POLY, _ONE_POLY
            return
        if not reduced:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            g = num.gcd(den)
            if g != 1:
                num, den = num // g, den // g
            num, den = _monic(num, den)
            _check_cap(num, den)
        self.num, self.den = num, den

    # construction helpers
    @staticmethod
    def upow(k):
        if k >= 0:
            return QF(P([0] * k + [1]), _ONE_POLY, True)
        return QF(_ONE_POLY, P([0] * (-k) + [1]), True)

    def is_zero(self):
        return self.num == 0

    def __neg__(self):
        return QF(-self.num, self.den, True)

    def __add__(self, other):
        if not isinstance(other, QF):
            other = QF(other)
        if self.num == 0:
            return other
        if other.num == 0:
            return self
        if self.den == other.den:
            return QF(self.num + other.num, self.den)
        g = self.den.gcd(other.den)
        if g == 1:
            return QF(self.num * other.den + other.num * self.den,
                      self.den * other.den)
        d1, d2 = self.den // g, other.den // g
        return QF(self.num * d2 + other.num * d1, self.den * d2)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, QF):
            other = QF(other)
        return self + (-other)

    def __rsub__(self, other):
        return QF(other) - self

    def __mul__(self, other):
        if not isinstance(other, QF):
            other = QF(other)
        if self.num == 0 or other.num == 0:
            return QF(_ZERO_POLY)
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1 = self.num // g1 if g1 != 1 else self.num
        d2 = other.den // g1 if g1 != 1 else other.den
        n2 = other.num // g2 if g2 != 1 else other.num
        d1 = self.den // g2 if g2 != 1 else self.den
        num, den = n1 * n2, d1 * d2
        _check_cap(num, den)
        return QF(num, den, True)

    __rmul__ = __mul__

    def inv(self):
        if self.num == 0:
            raise ZeroDivisionError("inverse of zero")
        num, den = _monic(self.den, self.num)
        return QF(num, den, True)

    def __truediv__(self, other):
        if not isinstance(other, QF):
            other = QF(other)
        return self * other.inv()

    def __eq__(self, other):
        if not isinstance(other, QF):
            other = QF(other)
        return self.num == other.num and self.den == other.den

    __hash__ = None

    def __repr__(self):
        num = self.num.str(var="u")
        if self.den == 1:
            return num
        return f"({num})/({self.den.str(var='u')})"


QF_ZERO = QF(0)
QF_ONE = QF(1)


@lru_cache(maxsize=None)
def _qint_qf(k):
    if k == 0:
        return QF_ZERO
    if k > 0:
        return QF(P([1 if j % 2 == 0 else 0 for j in range(2 * k - 1)]))
    m = -k
    num = P([-1 if j % 2 == 0 else 0 for j in range(2 * m - 1)])
    return QF(num, P([0] * (2 * m) + [1]))


@lru_cache(maxsize=None)
def _square_of_mask(mask):
    """Product of the squares of the roots named in mask."""
    out = QF_ONE
    sign = 1
    if mask & I_BIT:
        sign = -1
    bit = 2
    m = mask >> 2
    while m:
        if m & 1:
            out = out * _qint_qf(bit)
        m >>= 1
        bit += 1
    return -out if sign < 0 else out


def mask_roots(mask):
    """Indices h of the roots sqrt[h] present in mask (the unit i excluded)."""
    return [h for h in range(2, mask.bit_length()) if mask >> h & 1]


class ExtScalar:
    """Element of Q(i)(u)[sqrt[2], ..., sqrt[n]]."""

    __slots__ = ("c",)

    def __init__(self, comps=None):
        self.c = comps if comps is not None else {}

    @staticmethod
    def of(x):
        if isinstance(x, ExtScalar):
            return x
        if isinstance(x, QF):
            return ExtScalar({0: x} if not x.is_zero() else {})
        if isinstance(x, Fraction):
            x = flint.fmpq(x.numerator, x.denominator)
        if x == 0:
            return ExtScalar()
        return ExtScalar({0: QF(x)})

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __neg__(self):
        return ExtScalar({m: -v for m, v in self.c.items()})

    def __add__(self, other):
        if not isinstance(other, ExtScalar):
            other = ExtScalar.of(other)
        if not other.c:
            return self
        if not self.c:
            return other
        out = dict(self.c)
        for m, v in other.c.items():
            if m in out:
                s = out[m] + v
                if s.num == 0:
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = v
        return ExtScalar(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, ExtScalar):
            other = ExtScalar.of(other)
        return self + (-other)

    def __rsub__(self, other):
        return ExtScalar.of(other) - self

    def __mul__(self, other):
        if not isinstance(other, ExtScalar):
            if isinstance(other, QF):
                if other.num == 0:
                    return ExtScalar()
                return ExtScalar({m: v * other for m, v in self.c.items()})
            other = ExtScalar.of(other)
        if not self.c or not other.c:
            return ExtScalar()
        out = {}
        for m1, v1 in self.c.items():
            for m2, v2 in other.c.items():
                p = v1 * v2
                common = m1 & m2
                if common:
                    p = -p if common == I_BIT else p * _square_of_mask(common)
                m = m1 ^ m2
                if m in out:
                    out[m] = out[m] + p
                else:
                    out[m] = p
        return ExtScalar({m: v for m, v in out.items() if v.num != 0})

    __rmul__ = __mul__

    def conj(self, bit):
        """Negate every component containing the root named by bit."""
        b = 1 << bit if bit else I_BIT
        return ExtScalar({m: (-v if m & b else v) for m, v in self.c.items()})

    def inv(self):
        if not self.c:
            raise ZeroDivisionError("inverse of zero")
        top = 0
        for m in self.c:
            top |= m
        if top == 0:
            return ExtScalar({0: self.c[0].inv()})
        h = top.bit_length() - 1
        conj = self.conj(h if h >= 2 else 0)
        norm = self * conj
        return conj * norm.inv()

    def __truediv__(self, other):
        if not isinstance(other, ExtScalar):
            other = ExtScalar.of(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return ExtScalar.of(other) * self.inv()

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, ExtScalar):
            other = ExtScalar.of(other)
        if self.c.keys() != other.c.keys():
            return False
        return all(v == other.c[m] for m, v in self.c.items())

    __hash__ = None

    def support(self):
        """Set of root indices h >= 2 appearing, plus 'i' if the unit occurs."""
        out = set()
        for m in self.c:
            out.update(mask_roots(m))
            if m & I_BIT:
                out.add("i")
        return out

    def max_degree(self):
        return max((max(v.num.degree(), v.den.degree()) for v in self.c.values()), default=0)

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for m in sorted(self.c):
            tag = ("i*" if m & I_BIT else "") + "".join(f"√[{h}]*" for h in mask_roots(m))
            parts.append(f"{tag}({self.c[m]!r})")
        return " + ".join(parts)

    def to_json(self):
        return scalar_to_json(self)


ZERO = ExtScalar()
ONE = ExtScalar.of(1)
I = ExtScalar({I_BIT: QF_ONE})


def arith(a, b, op):
    a = ExtScalar.of(a)
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    b = ExtScalar.of(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "eq":
        return a == b
    raise ValueError(f"unknown op {op}")


def inv(a):
    return ExtScalar.of(a).inv()


def upow(k):
    """u^k = t^(k/2)."""
    return ExtScalar({0: QF.upow(k)})


def tpow(k):
    return upow(2 * k)


U = upow(1)
T = upow(2)


def quantum_int(k):
    q = _qint_qf(int(k))
    return ExtScalar({0: q}) if q.num != 0 else ZERO


def sqrt_bracket(h):
    """The fixed square root of [h]; negative h use i * u^h * sqrt[-h]."""
    h = int(h)
    if h == 0:
        raise ValueError("[0] = 0 has no invertible square root")
    if h == 1:
        return ONE
    if h > 1:
        return ExtScalar({1 << h: QF_ONE})
    base = I * upow(h)
    return base if h == -1 else base * sqrt_bracket(-h)


def poincare(n):
    out = ONE
    for k in range(1, n + 1):
        out = out * quantum_int(k)
    return out


# ------------------------------------------------------------ serialization

def _poly_terms(poly, imag):
    out = []
    for k, c in enumerate(poly.coeffs()):
        if c != 0:
            out.append((k, Fraction(int(c.p), int(c.q)), imag))
    return out


def _terms_str(terms):
    if not terms:
        return "0"
    bits = []
    for k, c, imag in sorted(terms, key=lambda x: (x[0], x[2])):
        bits.append(f"({c})" + ("*i" if imag else "") + f"*u^{k}")
    return " + ".join(bits)


def scalar_to_json(x):
    """List of {subset, num, den}; num may carry the unit i."""
    out = []
    subsets = sorted({m & ~I_BIT for m in x.c})
    for s in subsets:
        re_, im_ = x.c.get(s), x.c.get(s | I_BIT)
        dens = [v.den for v in (re_, im_) if v is not None]
        den = dens[0]
        for d in dens[1:]:
            den = den * d // den.gcd(d)
        terms = []
        for v, imag in ((re_, False), (im_, True)):
            if v is not None:
                terms += _poly_terms(v.num * (den // v.den), imag)
        out.append({"subset": mask_roots(s), "num": _terms_str(terms),
                    "den": _terms_str(_poly_terms(den, False))})
    return out


_TERM = re.compile(r"^\((-?\d+(?:/\d+)?)\)(\*i)?\*u\^(\d+)$")


def _parse_terms(text):
    re_c, im_c = {}, {}
    text = text.strip()
    if text == "0":
        return P([]), P([])
    for tok in text.split(" + "):
        m = _TERM.match(tok.strip())
        if not m:
            raise ValueError(f"bad term {tok!r}")
        c = Fraction(m.group(1))
        (im_c if m.group(2) else re_c)[int(m.group(3))] = c

    def poly(d):
        if not d:
            return P([])
        return P([flint.fmpq(d.get(k, Fraction(0)).numerator, d.get(k, Fraction(0)).denominator)
                  for k in range(max(d) + 1)])
    return poly(re_c), poly(im_c)


def scalar_from_json(data):
    out = ZERO
    for comp in data:
        mask = 0
        for h in comp["subset"]:
            mask |= 1 << h
        nr, ni = _parse_terms(comp["num"])
        den, _ = _parse_terms(comp["den"])
        part = {}
        if nr != 0:
            part[mask] = QF(nr, den)
        if ni != 0:
            part[mask | I_BIT] = QF(ni, den)
        out = out + ExtScalar(part)
    return out
