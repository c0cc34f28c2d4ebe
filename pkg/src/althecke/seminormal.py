"""Seminormal matrix model of the Hecke algebra of S_n over ExtScalar.

The algebra is realized as ``⊕_λ End(V_λ)``: ``B_λ(h)[u, s]`` is the
coefficient of ``f_ut`` in ``h f_st``.  So ``T_r`` has ``-1/[ρ_r(s)]`` on the
diagonal and ``α_r(s)`` in row ``s_r s``.

>>> m = SeminormalModel(3, 3)
>>> T1 = m.T(1)
>>> (T1 - m.scalar(T_)) * (T1 + m.one()) == m.zero()
True
"""
from __future__ import annotations

import json
import os
from functools import cached_property, lru_cache
from pathlib import Path

from . import combinat as cb
from .blockmat import (AlgebraElement, mat_add, mat_diag, mat_identity, mat_mul,
                       mat_trace_product)
from .exactfield import (ONE, ZERO, ExtScalar, inv, quantum_int, scalar_from_json,
                         scalar_to_json, sqrt_bracket, tpow, upow)
from .exactfield import T as T_

CACHE_VERSION = 1


# -------------------------------------------------------- coefficient systems

class CoeffSystem:
    """Scalars α_r(t); ``alpha`` must return ZERO when s_r t is not standard."""

    name = "abstract"
    alternating = False

    def alpha(self, r, t):
        raise NotImplementedError

    def a(self, r, t):
        # tolerant accessor: nonstandard (None) tableaux carry zero
        return ZERO if t is None else self.alpha(r, t)


class AlternatingSystem(CoeffSystem):
    """α_r(t) = t^{ρ/2} √[1+ρ] √[1-ρ] / [ρ] on I_+, and -α_r(t') on I_-."""

    name = "alternating"
    alternating = True

    def __init__(self):
        self._cache = {}

    def alpha(self, r, t):
        key = (r, t)
        if key not in self._cache:
            self._cache[key] = self._compute(r, t)
        return self._cache[key]

    def _compute(self, r, t):
        if t.swap(r) is None:
            return ZERO
        cls = cb.residue_class(cb.residue_sequence(t, None), None)
        if cls == cb.MINUS:
            return -self.alpha(r, t.conjugate)
        rho = t.rho(r)
        return upow(rho) * sqrt_bracket(1 + rho) * sqrt_bracket(1 - rho) * inv(quantum_int(rho))


class RatioSystem(CoeffSystem):
    """α_r(t) = [1+ρ_r(t)]/[ρ_r(t)]; valid but not alternating."""

    name = "ratio"

    def alpha(self, r, t):
        if t.swap(r) is None:
            return ZERO
        rho = t.rho(r)
        return quantum_int(1 + rho) * inv(quantum_int(rho))


class HashConjugateSystem(CoeffSystem):
    """The system {-α_r(t')} carried by the hashed seminormal basis."""

    def __init__(self, base):
        self.base = base
        self.name = f"hash({base.name})"
        self.alternating = base.alternating

    def alpha(self, r, t):
        return -self.base.alpha(r, t.conjugate)


class SignFlippedSystem(CoeffSystem):
    """Fault injection: negate a single α_r(t)."""

    def __init__(self, base, r, t):
        self.base, self.r, self.t = base, r, t
        self.name = f"flip({base.name},{r},{t!r})"
        self.alternating = base.alternating

    def alpha(self, r, t):
        v = self.base.alpha(r, t)
        return -v if (r, t) == (self.r, self.t) else v


ALTERNATING = AlternatingSystem()


def validate_coeff_system(sys, n, e=None):
    """Check conditions (a)-(d) and, if flagged, the alternating condition.

    Returns a list of failures ``(condition, r, k, tableau)``; empty means valid.
    """
    fails = []
    a = sys.a
    for t in cb.all_tableaux(n):
        for r in range(1, n):
            srt = t.swap(r)
            if srt is None and a(r, t).c:
                fails.append(("a", r, None, t))
            for k in range(1, n):
                if abs(r - k) > 1:
                    lhs = a(r, t) * a(k, srt)
                    rhs = a(k, t) * a(r, t.swap(k))
                    if lhs != rhs:
                        fails.append(("b", r, k, t))
            if r < n - 1:
                s1 = t.swap(r)
                s21 = s1.swap(r + 1) if s1 is not None else None
                lhs = a(r, s21) * a(r + 1, s1) * a(r, t)
                s2 = t.swap(r + 1)
                s12 = s2.swap(r) if s2 is not None else None
                rhs = a(r + 1, s12) * a(r, s2) * a(r + 1, t)
                if lhs != rhs:
                    fails.append(("c", r, r + 1, t))
            if srt is not None:
                pt, pv = t.rho(r), srt.rho(r)
                want = (quantum_int(1 + pt) * quantum_int(1 + pv)
                        / (quantum_int(pt) * quantum_int(pv)))
                if a(r, t) * a(r, srt) != want:
                    fails.append(("d", r, None, t))
            if sys.alternating and a(r, t) != -a(r, t.conjugate):
                fails.append(("alt", r, None, t))
    return fails


# ----------------------------------------------------------- T_w elements

class TwElement:
    """Finite combination of T_w over a commutative coefficient ring.

    ``q`` is the value of t in the ring.  Multiplication uses
    T_w T_r = T_{w s_r} when the length goes up, else (q-1) T_w + q T_{w s_r}.
    """

    __slots__ = ("n", "coeffs", "q", "zero")

    def __init__(self, n, coeffs, q, zero):
        self.n, self.q, self.zero = n, q, zero
        self.coeffs = {w: c for w, c in coeffs.items() if c != zero}

    def _like(self, coeffs):
        return TwElement(self.n, coeffs, self.q, self.zero)

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, self.zero) + c
        return self._like(out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, self.zero) - c
        return self._like(out)

    def scale(self, s):
        return self._like({w: c * s for w, c in self.coeffs.items()})

    def times_simple(self, r):
        out = {}
        for w, c in self.coeffs.items():
            ws = list(w)
            ws[r - 1], ws[r] = ws[r], ws[r - 1]
            ws = tuple(ws)
            if w[r - 1] < w[r]:
                out[ws] = out.get(ws, self.zero) + c
            else:
                out[w] = out.get(w, self.zero) + c * (self.q - 1)
                out[ws] = out.get(ws, self.zero) + c * self.q
        return self._like(out)

    def __mul__(self, other):
        total = self._like({})
        for v, c in other.coeffs.items():
            part = self
            for r in cb.reduced_word(v):
                part = part.times_simple(r)
            total = total + part.scale(c)
        return total

    def __eq__(self, other):
        return (self - other).coeffs == {}

    __hash__ = None

    def coefficient(self, w):
        return self.coeffs.get(tuple(w), self.zero)


def tw_basis(n, w, q, zero, one):
    return TwElement(n, {tuple(w): one}, q, zero)


# ------------------------------------------------------------------ the model

def _schur_weight(lam):
    """1/s_λ with s_λ = t^{-n(λ)} ∏ [hook lengths]."""
    conj = cb.conjugate(lam)
    prod = ONE
    for a, row in enumerate(lam):
        for b in range(row):
            prod = prod * quantum_int(row - b + conj[b] - a - 1)
    nlam = sum(k * x for k, x in enumerate(lam))
    return tpow(nlam) * prod.inv()


class SeminormalModel:
    """Seminormal representation of H(S_n) for a coefficient system.

    ``e`` only matters for residue idempotents and M_r inverses.
    """

    def __init__(self, n, e=3, system=None, cache_dir=None):
        self.n, self.e = n, e
        self.system = system or ALTERNATING
        self.shapes = cb.partitions(n)
        self.tabs = {lam: cb.standard_tableaux(lam) for lam in self.shapes}
        self.index = {lam: cb.tableau_index(lam) for lam in self.shapes}
        self.cache_dir = cache_dir if cache_dir is not None else os.environ.get("ALTHECKE_CACHE")
        self._T = {}
        self._tw = None

    # basic elements
    def zero(self):
        return AlgebraElement(self.n)

    def one(self):
        return AlgebraElement(self.n, {lam: mat_identity(len(self.tabs[lam])) for lam in self.shapes})

    def scalar(self, s):
        return self.one().scale(s)

    def diagonal(self, fn):
        """Diagonal element with entry fn(t) at tableau t (ExtScalar or None)."""
        blocks = {}
        for lam in self.shapes:
            vals = [fn(t) for t in self.tabs[lam]]
            blocks[lam] = mat_diag([ZERO if v is None else ExtScalar.of(v) for v in vals])
        return AlgebraElement(self.n, blocks)

    def E(self, s, t):
        """Matrix unit E_st (so F_t = E_tt and f_st = γ_t E_st)."""
        lam = s.shape
        idx = self.index[lam]
        return AlgebraElement(self.n, {lam: {idx[s]: {idx[t]: ONE}}})

    def f(self, s, t):
        return self.E(s, t).scale(self.gamma(t.shape)[t])

    # generators
    def T(self, r):
        if not 1 <= r < self.n:
            raise ValueError(f"T_{r} undefined for n={self.n}")
        if r not in self._T:
            blocks = {}
            for lam in self.shapes:
                idx = self.index[lam]
                m = {}
                for s in self.tabs[lam]:
                    j = idx[s]
                    m.setdefault(j, {})[j] = -inv(quantum_int(s.rho(r)))
                    u = s.swap(r)
                    if u is not None:
                        a = self.system.alpha(r, s)
                        if a.c:
                            m.setdefault(idx[u], {})[j] = a
                blocks[lam] = m
            self._T[r] = AlgebraElement(self.n, blocks)
        return self._T[r]

    def jm(self, k):
        return self.diagonal(lambda t: quantum_int(t.content(k)))

    def m_elem(self, r):
        return self.diagonal(lambda t: tpow(t.content(r)) * quantum_int(1 - t.rho(r)))

    def residue(self, t):
        return cb.residue_sequence(t, self.e)

    def inv_m_on(self, r, i):
        i = tuple(i)
        if i[r - 1] == (i[r] + 1) % self.e:
            raise ValueError("1/M_r is only defined on f_i when i_r != i_{r+1} + 1")
        return self.diagonal(lambda t: tpow(-t.content(r)) * inv(quantum_int(1 - t.rho(r)))
                             if self.residue(t) == i else None)

    def residue_idempotent(self, i):
        i = tuple(i)
        return self.diagonal(lambda t: ONE if self.residue(t) == i else None)

    def f_alpha(self, alpha):
        alpha = tuple(alpha)
        return self.diagonal(lambda t: ONE if cb.content_vector(self.residue(t), self.e) == alpha else None)

    def f_gamma(self, gamma):
        gamma = tuple(gamma)
        return self.diagonal(lambda t: ONE if cb.gamma_of(cb.content_vector(self.residue(t), self.e)) == gamma
                             else None)

    def class_idempotent(self, cls):
        """Sum of f_i over i of the given class (plus/minus)."""
        return self.diagonal(lambda t: ONE if cb.residue_class(self.residue(t), self.e) == cls else None)

    # structure scalars
    @lru_cache(maxsize=None)
    def gamma(self, lam):
        """γ_t for t in Std(λ), anchored at γ_{t^λ} = 1."""
        return _propagate(self.tabs[lam], cb.initial_tableau(lam),
                          lambda r, t, u: self.system.alpha(r, u) / self.system.alpha(r, t))

    @lru_cache(maxsize=None)
    def hash_scale(self, lam):
        """p_s with p_{s_r s}/p_s = -α_r(s')/α_r(s)."""
        sysm = self.system
        return _propagate(self.tabs[lam], cb.initial_tableau(lam),
                          lambda r, t, u: -sysm.alpha(r, t.conjugate) / sysm.alpha(r, t))

    def star(self, h):
        blocks = {}
        for lam, m in h.blocks.items():
            g = [self.gamma(lam)[t] for t in self.tabs[lam]]
            ginv = [x.inv() for x in g]
            out = {}
            for i, row in m.items():
                for j, v in row.items():
                    out.setdefault(j, {})[i] = ginv[j] * v * g[i]
            blocks[lam] = out
        return AlgebraElement(self.n, blocks)

    def hash(self, h):
        blocks = {}
        for lam, m in h.blocks.items():
            lamc = cb.conjugate(lam)
            tabs = self.tabs[lam]
            p = self.hash_scale(lam)
            cidx = self.index[lamc]
            to = [cidx[t.conjugate] for t in tabs]
            ps = [p[t] for t in tabs]
            out = {}
            for i, row in m.items():
                for j, v in row.items():
                    if ps[i] == ONE and ps[j] == ONE:
                        w = v
                    else:
                        w = ps[i] * v / ps[j]
                    out.setdefault(to[i], {})[to[j]] = w
            blocks[lamc] = out
        return AlgebraElement(self.n, blocks)

    # trace and T_w basis
    @cached_property
    def trace_weights(self):
        return {lam: _schur_weight(lam) for lam in self.shapes}

    def tau(self, h):
        tot = ZERO
        for lam, m in h.blocks.items():
            tr = ZERO
            for i, row in m.items():
                if i in row:
                    tr = tr + row[i]
            tot = tot + tr * self.trace_weights[lam]
        return tot

    def tau_product(self, a, b):
        tot = ZERO
        for lam in set(a.blocks) & set(b.blocks):
            tot = tot + mat_trace_product(a.blocks[lam], b.blocks[lam]) * self.trace_weights[lam]
        return tot

    def tw_matrices(self):
        """B(T_w) for all w in S_n, built by right multiplication along reduced words."""
        if self._tw is None:
            self._tw = self._load_tw() or self._build_tw()
        return self._tw

    def T_w(self, w):
        return self.tw_matrices()[tuple(w)]

    def _build_tw(self):
        out = {}
        for w in cb.all_perms(self.n):
            word = cb.reduced_word(w)
            if not word:
                out[w] = self.one()
            else:
                prev = cb.word_to_perm(word[:-1], self.n)
                out[w] = out[prev] * self.T(word[-1])
        self._save_tw(out)
        return out

    def _cache_path(self):
        if not self.cache_dir:
            return None
        key = f"tw_n{self.n}_e{self.e}_{self.system.name}_v{CACHE_VERSION}.json"
        return Path(self.cache_dir) / key

    def _save_tw(self, mats):
        path = self._cache_path()
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        data = {"n": self.n, "e": self.e, "system": self.system.name, "version": CACHE_VERSION,
                "elements": []}
        for w, h in mats.items():
            data["elements"].append({"w": list(w), "entries": [
                [",".join(map(str, lam)), i, j, scalar_to_json(v)] for lam, i, j, v in h.entries()]})
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(data))
        tmp.replace(path)

    def _load_tw(self):
        path = self._cache_path()
        if path is None or not path.exists():
            return None
        data = json.loads(path.read_text())
        if data.get("version") != CACHE_VERSION or data.get("n") != self.n:
            return None
        out = {}
        for item in data["elements"]:
            blocks = {}
            for lam_s, i, j, v in item["entries"]:
                lam = tuple(int(x) for x in lam_s.split(","))
                blocks.setdefault(lam, {}).setdefault(i, {})[j] = scalar_from_json(v)
            out[tuple(item["w"])] = AlgebraElement(self.n, blocks)
        return out

    def to_tw(self, h):
        """Coefficients a_w with h = Σ a_w T_w, via a_w = t^{-ℓ(w)} τ(h T_{w^{-1}})."""
        mats = self.tw_matrices()
        coeffs = {}
        for w in cb.all_perms(self.n):
            a = self.tau_product(h, mats[cb.perm_inverse(w)])
            if a.c:
                coeffs[w] = a * tpow(-cb.perm_length(w))
        return TwElement(self.n, coeffs, T_, ZERO)

    def from_tw(self, x):
        mats = self.tw_matrices()
        out = self.zero()
        for w, c in x.coeffs.items():
            out = out + mats[tuple(w)].scale(c)
        return out

    def tw_element(self, coeffs):
        return TwElement(self.n, {tuple(w): ExtScalar.of(c) for w, c in coeffs.items()}, T_, ZERO)


def _propagate(tabs, anchor, ratio):
    """Spread values over the s_r-graph of tableaux from anchor (value 1).

    ``ratio(r, t, u)`` is value(u)/value(t) for u = s_r t; every edge is
    re-checked so that path dependence raises.
    """
    val = {anchor: ONE}
    todo = [anchor]
    while todo:
        t = todo.pop()
        for r in range(1, t.n):
            u = t.swap(r)
            if u is None:
                continue
            v = val[t] * ratio(r, t, u)
            if u in val:
                if val[u] != v:
                    raise ValueError(f"path dependence at {t!r} -> {u!r}")
            else:
                if not v.c:
                    raise ValueError(f"zero scalar at {u!r}")
                val[u] = v
                todo.append(u)
    if len(val) != len(tabs):
        raise ValueError("tableau graph not connected")
    return val


def build_rep(n, e=3, system=None):
    """Matrices of T_1..T_{n-1} keyed by r."""
    model = SeminormalModel(n, e, system)
    return {r: model.T(r) for r in range(1, n)}


def gamma_scalars(lam, system=None):
    return SeminormalModel(sum(lam), 3, system).gamma(tuple(lam))


def alternating_alpha(r, t):
    return ALTERNATING.alpha(r, t)
