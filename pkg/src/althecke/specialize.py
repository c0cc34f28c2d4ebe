"""Specialization t -> ξ of elements of the generic Hecke algebra.

An element is first written in the T_w basis over K; each coefficient is
then evaluated at u = √ξ with the square roots √[h] and √-1 sent to chosen
roots in the target field.  A coefficient is evaluated in lowest terms over
Z[u], so a value exists exactly when the reduced denominator does not vanish
at (p, u0); otherwise :class:`SpecializationPole` is raised.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import _kernels
from . import combinat as cb
from .exactfield import I_BIT, ExtScalar, mask_roots
from .fields import CyclotomicField, FieldError, FiniteField
from .relations import Checker, klr_suite, main_suite, rpsn_suite


class SpecializationPole(ArithmeticError):
    pass


class SpecTarget:
    """A field F with ξ ∈ F of quantum characteristic e and chosen roots."""

    def __init__(self, field, e, xi, label=None):
        self.field, self.e, self.xi = field, e, xi
        self.label = label or field.name
        self._roots = {}
        if self.quantum_char() != e:
            raise FieldError(f"ξ={xi} has quantum characteristic {self.quantum_char()}, not {e}")

    def __repr__(self):
        return f"SpecTarget({self.label}, e={self.e}, xi={self.field.fmt(self.xi)})"

    @property
    def char0(self):
        return self.field.char0

    def F(self, x):
        return self.field(x)

    def zero(self):
        return self.field.zero()

    def one(self):
        return self.field.one()

    def qint(self, k):
        F = self.field
        if k == 0:
            return F.zero()
        if k > 0:
            out, x = F.zero(), F.one()
            for _ in range(k):
                out = out + x
                x = x * self.xi
            return out
        return -(self.xi ** k) * self.qint(-k)

    def tpow(self, k):
        return self.xi ** k

    def quantum_char(self):
        for k in range(1, 10 * (self.e or 1) + 100):
            if self.field.is_zero(self.qint(k)):
                return k
        return None

    @cached_property
    def u0(self):
        r = self.field.sqrt(self.xi)
        if r is None:
            raise FieldError(f"{self.label}: ξ has no square root")
        return r

    def root(self, bit):
        """Image of the square root with the given mask bit."""
        if bit not in self._roots:
            val = self.F(-1) if bit == I_BIT else self.qint(bit.bit_length() - 1)
            r = self.field.sqrt(val)
            if r is None:
                what = "√-1" if bit == I_BIT else f"√[{bit.bit_length() - 1}]"
                raise FieldError(f"{self.label}: {what} does not exist; use a larger extension")
            self._roots[bit] = r
        return self._roots[bit]

    def describe(self):
        return {"field": self.label, "order": getattr(self.field, "q", None), "e": self.e,
                "xi": self.field.fmt(self.xi), "sqrt_xi": self.field.fmt(self.u0)}


def _need_roots(e):
    return [3] if e > 3 else []


def finite_target(p, e, d=None, xi=None):
    """Smallest GF(p^D) (D a multiple of d) holding ξ, √ξ and the roots κ needs."""
    if p == e:
        base = d or 1
    else:
        base = d or next(k for k in range(1, 64) if (p ** k - 1) % e == 0)
    D = base
    while D <= 8 * base:
        F = FiniteField(p, D)
        if F.q > _kernels_max_order():
            break
        if xi is not None:
            x = F(xi)
        elif p == e:
            x = F.one()
        else:
            x = F.element_of_order(e)
        ok = x is not None and F.sqrt(x) is not None
        if ok:
            t = SpecTarget(F, e, x)
            try:
                for h in _need_roots(e):
                    t.root(1 << h)
            except FieldError:
                ok = False
            if ok:
                return t
        D *= 2
    raise FieldError(f"no small extension of GF({p}) works for e={e}")


def _kernels_max_order():
    from .fields import MAX_TABLE_ORDER
    return MAX_TABLE_ORDER


def cyclotomic_target(e, m=None):
    m = m or (e if e % 2 else 2 * e)
    F = CyclotomicField(m)
    xi = F.element_of_order(e)
    if xi is None:
        raise FieldError(f"Q(ζ{m}) has no primitive {e}-th root of unity")
    t = SpecTarget(F, e, xi, label=f"Q(zeta{m})")
    t.u0
    try:
        for h in _need_roots(e):
            t.root(1 << h)
    except FieldError as exc:
        # e = 5: √(1+ξ+ξ²) generates a non-abelian extension, so no Q(ζ_m) works
        raise FieldError(f"{exc}; only roots of the form ζ^k·q are found, use a finite field") from None
    return t


_TARGET = re.compile(r"^\s*(?:F|GF)\(?(\d+)\)?(?::xi=(\d+))?\s*$|^\s*Q\(?zeta(\d*)\)?\s*$", re.I)
_FP = re.compile(r"^\s*fp:(\d+)(?::(\d+))?\s*$")


def parse_target(text, e):
    """'F7', 'F25', 'F7:xi=4', 'fp:7', 'fp:7:2', 'Qzeta', 'Q(zeta6)', 'cyclotomic'."""
    text = text.strip()
    if text.lower() == "cyclotomic":
        return cyclotomic_target(e)
    if text.lower() == "rational":
        raise FieldError("Q has no element of quantum characteristic e >= 3; use a cyclotomic target")
    fp = _FP.match(text)
    if fp:
        p, xi = fp.groups()
        text = f"F{p}" + (f":xi={xi}" if xi else "")
    m = _TARGET.match(text)
    if not m:
        raise ValueError(f"bad target {text!r}")
    q, xi, zm = m.groups()
    if q is None:
        return cyclotomic_target(e, int(zm) if zm else None)
    q = int(q)
    for p in range(2, q + 1):
        if q % p == 0:
            break
    d, x = 0, q
    while x % p == 0:
        x //= p
        d += 1
    if x != 1:
        raise ValueError(f"{q} is not a prime power")
    return finite_target(p, e, d if d > 1 else None, int(xi) if xi else None)


# scalar evaluation -------------------------------------------------------------

def _eval_poly(coeffs, x, F):
    out = F.zero()
    for c in reversed(coeffs):
        out = out * x + F(int(c))
    return out


def specialize_qf(qf, target):
    num, den = qf.num, qf.den
    if num.is_zero():
        return target.zero()
    Nn, dn = num.numer(), num.denom()
    Dn, dd = den.numer(), den.denom()
    cN, cD = Nn.content(), Dn.content()
    c = Fraction(int(cN * dd), int(cD * dn))
    Np = [int(x) // int(cN) for x in Nn.coeffs()]
    Dp = [int(x) // int(cD) for x in Dn.coeffs()]
    F = target.field
    if not F.char0 and c.denominator % F.p == 0:
        raise SpecializationPole(f"coefficient {qf} has {F.p} in its denominator")
    u0 = target.u0
    dv = _eval_poly(Dp, u0, F)
    if F.is_zero(dv):
        raise SpecializationPole(f"denominator of {qf} vanishes at u=√ξ")
    nv = _eval_poly(Np, u0, F)
    if not F.char0 and c.numerator % F.p == 0:
        return F.zero()
    return F(c) * nv / dv


def specialize_scalar(x, target):
    x = ExtScalar.of(x)
    out = target.zero()
    for mask, qf in x.c.items():
        val = specialize_qf(qf, target)
        if mask & I_BIT:
            val = val * target.root(I_BIT)
        for h in mask_roots(mask):
            val = val * target.root(1 << h)
        out = out + val
    return out


# specialized elements ---------------------------------------------------------

class SpecElement:
    """Σ c_w T_w over a target field, stored densely in the order of all_perms."""

    __slots__ = ("n", "target", "vec")

    def __init__(self, n, target, vec):
        self.n, self.target, self.vec = n, target, vec

    @classmethod
    def zero(cls, n, target):
        N = len(cb.all_perms(n))
        if target.char0:
            return cls(n, target, [target.zero() for _ in range(N)])
        return cls(n, target, np.zeros(N, dtype=np.int32))

    @classmethod
    def from_coeffs(cls, n, target, coeffs):
        """coeffs: mapping perm -> field element."""
        out = cls.zero(n, target)
        idx = _perm_index(n)
        F = target.field
        for w, c in coeffs.items():
            if target.char0:
                out.vec[idx[tuple(w)]] = c
            else:
                out.vec[idx[tuple(w)]] = F.encode(c)
        return out

    @classmethod
    def basis(cls, n, target, w):
        return cls.from_coeffs(n, target, {tuple(w): target.one()})

    def _tables(self):
        return self.target.field.tables

    def coeff(self, w):
        k = _perm_index(self.n)[tuple(w)]
        if self.target.char0:
            return self.vec[k]
        return self.target.field.decode(int(self.vec[k]))

    def coeffs(self):
        perms = cb.all_perms(self.n)
        out = {}
        for k, w in enumerate(perms):
            c = self.vec[k]
            if self.target.char0:
                if not c.is_zero():
                    out[w] = c
            elif c:
                out[w] = self.target.field.decode(int(c))
        return out

    def __add__(self, o):
        if self.target.char0:
            return SpecElement(self.n, self.target, [a + b for a, b in zip(self.vec, o.vec)])
        add = self._tables()[0]
        return SpecElement(self.n, self.target, add[self.vec, o.vec])

    def __neg__(self):
        if self.target.char0:
            return SpecElement(self.n, self.target, [-a for a in self.vec])
        return SpecElement(self.n, self.target, self._tables()[2][self.vec])

    def __sub__(self, o):
        return self + (-o)

    def scale(self, s):
        if self.target.char0:
            s = s if hasattr(s, "f") else self.target.F(s)
            return SpecElement(self.n, self.target, [a * s for a in self.vec])
        code = self.target.field.encode(s if not isinstance(s, int) else self.target.F(s))
        return SpecElement(self.n, self.target, self._tables()[1][code, self.vec])

    def __mul__(self, o):
        if not isinstance(o, SpecElement):
            return self.scale(o)
        return tw_product(self, o)

    def __pow__(self, k):
        out = None
        for _ in range(k):
            out = self if out is None else out * self
        return out

    def is_zero(self):
        if self.target.char0:
            return all(a.is_zero() for a in self.vec)
        return not np.any(self.vec)

    def __eq__(self, o):
        return isinstance(o, SpecElement) and (self - o).is_zero()

    __hash__ = None

    def nnz(self):
        if self.target.char0:
            return sum(1 for a in self.vec if not a.is_zero())
        return int(np.count_nonzero(self.vec))

    witness_norm = nnz

    def __str__(self):
        F = self.target.field
        parts = []
        for w, c in self.coeffs().items():
            word = cb.perm_to_str(w).replace(" ", "")
            cs = F.fmt(c)
            if word == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(word)
            else:
                parts.append(f"{cs}{word}" if re.fullmatch(r"\d+", cs) else f"({cs}){word}")
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def _perm_index(n):
    return _PERM_INDEX.setdefault(n, {w: k for k, w in enumerate(cb.all_perms(n))})


_PERM_INDEX = {}


def tw_product(x, y):
    """Product in H(S_n) over the target using T_w T_r = T_{wr} or (ξ-1)T_w + ξT_{wr}."""
    n, target = x.n, x.target
    if not target.char0:
        F = target.field
        vec = _kernels.hecke_mul(x.vec, y.vec, n, F.encode(target.xi), F.tables)
        return SpecElement(n, target, vec.astype(np.int32))
    _perms, R, up, order, parent, gen = _kernels.hecke_tables(n)
    N = len(x.vec)
    xi = target.xi
    xim1 = xi - 1
    zero = target.zero()
    cur = [None] * N
    cur[0] = list(x.vec)
    for k in range(len(order)):
        src, r = cur[parent[k]], gen[k]
        new = [zero] * N
        for v in range(N):
            c = src[v]
            if c.is_zero():
                continue
            t = R[v, r]
            if up[v, r]:
                new[t] = new[t] + c
            else:
                new[v] = new[v] + xim1 * c
                new[t] = new[t] + xi * c
        cur[order[k]] = new
    out = [zero] * N
    for w in range(N):
        b = y.vec[w]
        if b.is_zero():
            continue
        out = [o + b * c for o, c in zip(out, cur[w])]
    return SpecElement(n, target, out)


def specialize_element(h, model, target):
    """Specialize an AlgebraElement of the seminormal model."""
    tw = model.to_tw(h)
    return SpecElement.from_coeffs(model.n, target,
                                   {w: specialize_scalar(c, target) for w, c in tw.coeffs.items()})


def simple_element(n, target, r):
    return SpecElement.basis(n, target, cb.simple(r, n))


def identity(n, target):
    return SpecElement.basis(n, target, tuple(range(1, n + 1)))


# relation checks after specialization -------------------------------------------

class SpecBackend:
    """Relation backend with every generator specialized to the target."""

    def __init__(self, gens, target, family="circ"):
        self.g, self.target = gens, target
        self.n, self.e = gens.n, gens.e
        if target.e != gens.e:
            raise ValueError("target quantum characteristic differs from e")
        self.family = family
        self._idx = gens.realizable()
        self._idx_set = frozenset(self._idx)
        self._cache = {}

    def _spec(self, key, fn):
        if key not in self._cache:
            self._cache[key] = specialize_element(fn(), self.g.model, self.target)
        return self._cache[key]

    def indices(self):
        return self._idx

    def index_set(self):
        return self._idx_set

    def psi(self, r):
        fn = {"circ": self.g.psi_circ, "plus": self.g.psi_plus, "minus": self.g.psi_minus}[self.family]
        return self._spec(("psi", r), lambda: fn(r))

    def y(self, s):
        fn = {"circ": self.g.y_circ, "plus": self.g.y_plus, "minus": self.g.y_minus}[self.family]
        return self._spec(("y", s), lambda: fn(s))

    def e_(self, i):
        return self._spec(("f", tuple(i)), lambda: self.g.f(i))

    def eps(self, a, i):
        j = cb.negate(i, self.e)
        fi = self.e_(i)
        fj = self.e_(j) if j in self._idx_set else self.zero()
        return fi + fj if a % 2 == 0 else fi - fj

    def one(self):
        return identity(self.n, self.target)

    def zero(self):
        return SpecElement.zero(self.n, self.target)

    def const(self, k):
        return self.target.F(k)

    def const_frac(self, p, q):
        return self.target.F(Fraction(p, q))

    def tpow(self, k):
        return self.target.tpow(k)

    def qint(self, k):
        return self.target.qint(k)

    def shift(self, d, r, sign):
        if sign is None:
            return self._spec(("shift", d, r), lambda: self.g.y_shift(d, r))
        return self.y(r).scale(self.tpow(d)) + self.one().scale(self.qint(d) * self.const(sign))


def verify_specialized_klr(gens, target, suites=("klr", "RpSn", "MainRelations")):
    """Undeformed KLR, super and alternating presentations over the target."""
    B = SpecBackend(gens, target)
    reports = []
    for s in suites:
        if s == "klr":
            reports.append(klr_suite(B, "klr", f"klr@{target.label}"))
        elif s == "RpSn":
            reports.append(rpsn_suite(B, "klr", f"RpSn@{target.label}"))
        elif s == "MainRelations":
            reports.append(main_suite(B, "klr", f"MainRelations@{target.label}"))
        else:
            raise ValueError(f"unknown specialized suite {s!r}")
    return reports


def witness_vanishes(diff, model, target):
    """True when an exact difference over K specializes to zero."""
    return specialize_element(diff, model, target).is_zero()


def check_hecke_relations(n, target):
    """Quadratic and braid relations for the specialized T_r (kernel sanity)."""
    ck = Checker(f"hecke@{target.label}")
    one = identity(n, target)
    T = [None] + [simple_element(n, target, r) for r in range(1, n)]
    xi = target.xi
    for r in range(1, n):
        ck.check("quadratic", (r,), T[r] * T[r], T[r].scale(xi - 1) + one.scale(xi))
        if r + 1 < n:
            ck.check("braid", (r,), T[r] * T[r + 1] * T[r], T[r + 1] * T[r] * T[r + 1])
        for s in range(r + 2, n):
            ck.check("commute", (r, s), T[r] * T[s], T[s] * T[r])
    return ck.report
