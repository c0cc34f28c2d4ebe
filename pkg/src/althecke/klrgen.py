"""Deformed KLR generators inside the seminormal model.

``psi_plus``/``y_plus`` are the intrinsic generators built from T_r, L_r and
the residue idempotents; ``psi_minus``/``y_minus`` are their hash images and
``psi_circ``/``y_circ`` glue the two along the classes I_+ and I_-.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import cached_property

from . import combinat as cb
from .exactfield import ONE, ExtScalar, inv, quantum_int, sqrt_bracket, tpow, upow
from .relations import RO_TAGS, Checker, klr_suite, main_suite, rpsn_suite
from .seminormal import ALTERNATING, SeminormalModel


def kappa(i, e):
    """Scalar attached to ψ°_2 on f_i; depends only on e."""
    if cb.residue_class(tuple(i), e) == cb.NEITHER:
        raise ValueError(f"κ undefined on {i}: class neither")
    return tpow(-1) if e == 3 else upow(1) * inv(sqrt_bracket(3))


class GeneratorSet:
    """ψ±, y±, ψ°, y°, f_i and ε_a(i) for fixed (n, e).

    ``use_kappa=False`` drops κ from ψ°_2 (used only for fault injection).
    """

    def __init__(self, n, e, system=None, use_kappa=True, model=None):
        if e is None or e < 3:
            raise ValueError("generators need a finite e >= 3")
        self.n, self.e = n, e
        self.model = model or SeminormalModel(n, e, system or ALTERNATING)
        self.use_kappa = use_kappa
        self.by_residue = cb.tableaux_by_residue(n, e)
        self._cache = {}

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    # idempotents
    def f(self, i):
        i = tuple(i)
        return self._memo(("f", i), lambda: self.model.residue_idempotent(i))

    @cached_property
    def f_plus(self):
        return self.model.class_idempotent(cb.PLUS)

    @cached_property
    def f_minus(self):
        return self.model.class_idempotent(cb.MINUS)

    def eps(self, a, i):
        i = tuple(i)
        j = cb.negate(i, self.e)
        return self.f(i) + self.f(j) if a % 2 == 0 else self.f(i) - self.f(j)

    def realizable(self):
        return tuple(self.by_residue)

    # intrinsic generators
    def psi_plus(self, r):
        return self._memo(("psi+", r), lambda: self._psi_plus(r))

    def _psi_plus(self, r):
        m = self.model
        e = self.e
        Tr, Lr = m.T(r), m.jm(r)
        comm = Tr * Lr - Lr * Tr
        out = m.zero()
        for i in self.realizable():
            a, b = i[r - 1], i[r]
            fi = self.f(i)
            hat_a = cb.hat(a, e)
            if a == b:
                out = out + (m.one() + Tr) * m.inv_m_on(r, i).scale(tpow(hat_a))
            elif a == (b + 1) % e:
                out = out + comm * fi.scale(tpow(-hat_a))
            else:
                out = out + comm * m.inv_m_on(r, i)
        return out

    def y_plus(self, s):
        e = self.e

        def entry(t):
            h = cb.hat(t.content(s), e)
            return tpow(-h) * (quantum_int(t.content(s)) - quantum_int(h))
        return self._memo(("y+", s), lambda: self.model.diagonal(entry))

    def psi_minus(self, r):
        return self._memo(("psi-", r), lambda: self.model.hash(self.psi_plus(r)))

    def y_minus(self, s):
        return self._memo(("y-", s), lambda: self.model.hash(self.y_plus(s)))

    # glued generators
    def kappa(self):
        if not self.use_kappa:
            return ONE
        return tpow(-1) if self.e == 3 else upow(1) * inv(sqrt_bracket(3))

    def psi_circ(self, r):
        def build():
            x = self.psi_plus(r) * self.f_plus - self.psi_minus(r) * self.f_minus
            return x.scale(self.kappa()) if r == 2 else x
        return self._memo(("psio", r), build)

    def y_circ(self, s):
        return self._memo(("yo", s), lambda: self.y_plus(s) * self.f_plus - self.y_minus(s) * self.f_minus)

    def y_shift(self, d, r, i=None):
        """⟨d⟩_r: t^d y°_r - [d] on I_+ and + [d] on I_-; optionally times f_i."""
        x = self._memo(("shift", d, r), lambda: self.y_circ(r).scale(tpow(d))
                       - (self.f_plus - self.f_minus).scale(quantum_int(d)))
        return x if i is None else x * self.f(i)

    # Θ on words
    def word_image(self, word):
        return klr_word_image(self, word)


_TOKEN = re.compile(r"^(psi|ψ|y|e|eps|ε)(\d*)(?:\((.*)\))?$")


def parse_token(tok):
    """'psi2' / 'y3' / 'e(012)' / 'e(0,1,2)' / 'eps1(012)' -> (kind, index, seq)."""
    if isinstance(tok, tuple):
        return tok
    m = _TOKEN.match(tok.strip())
    if not m:
        raise ValueError(f"bad token {tok!r}")
    kind, num, seq = m.groups()
    kind = {"ψ": "psi", "ε": "eps"}.get(kind, kind)
    if seq is not None:
        seq = tuple(int(x) for x in (seq.split(",") if "," in seq else list(seq)))
    if kind in ("psi", "y"):
        if not num or seq is not None:
            raise ValueError(f"bad token {tok!r}")
        return (kind, int(num), None)
    if kind == "e":
        return ("e", 0, seq)
    return ("eps", int(num or 0), seq)


def klr_word_image(gens, word):
    """Product of the ° generators / idempotents named by the tokens."""
    out = gens.model.one()
    n, e = gens.n, gens.e
    for tok in word:
        kind, k, seq = parse_token(tok)
        if kind == "psi":
            if not 1 <= k < n:
                raise ValueError(f"psi_{k} out of range for n={n}")
            x = gens.psi_circ(k)
        elif kind == "y":
            if not 1 <= k <= n:
                raise ValueError(f"y_{k} out of range for n={n}")
            x = gens.y_circ(k)
        else:
            if seq is None or len(seq) != n or any(not 0 <= v < e for v in seq):
                raise ValueError(f"bad residue sequence {seq}")
            x = gens.f(seq) if kind == "e" else gens.eps(k, seq)
        out = out * x
    return out


def word_degree(word, e):
    """Degree from deg e(i)=0, deg y=2, deg ψ_r e(i) = -c_{i_r,i_{r+1}}.

    The idempotent to the right of each ψ decides its degree, so words are
    read right to left with the residue sequence updated by each ψ_r.
    """
    toks = [parse_token(t) for t in word]
    seq = None
    deg = 0
    for kind, k, s in reversed(toks):
        if kind in ("e", "eps"):
            seq = s
        elif kind == "y":
            deg += 2
        else:
            if seq is None:
                raise ValueError("ψ needs an idempotent to its right")
            deg -= cb.cartan(seq[k - 1], seq[k], e)
            seq = cb.swap_residues(seq, k)
    return deg


class KBackend:
    """Relation backend over K for one generator family.

    ``family`` is ``"circ"`` (ψ°, y°), ``"plus"`` (ψ⁺, y⁺) or ``"minus"``.
    """

    def __init__(self, gens, family="circ"):
        self.g = gens
        self.n, self.e = gens.n, gens.e
        self.family = family
        self._idx = gens.realizable()
        self._idx_set = frozenset(self._idx)

    def indices(self):
        return self._idx

    def index_set(self):
        return self._idx_set

    def psi(self, r):
        return {"circ": self.g.psi_circ, "plus": self.g.psi_plus, "minus": self.g.psi_minus}[self.family](r)

    def y(self, s):
        return {"circ": self.g.y_circ, "plus": self.g.y_plus, "minus": self.g.y_minus}[self.family](s)

    def e_(self, i):
        return self.g.f(i)

    def eps(self, a, i):
        return self.g.eps(a, i)

    def one(self):
        return self.g.model.one()

    def zero(self):
        return self.g.model.zero()

    def const(self, k):
        return ExtScalar.of(k)

    def const_frac(self, p, q):
        return ExtScalar.of(Fraction(p, q))

    def tpow(self, k):
        return tpow(k)

    def qint(self, k):
        return quantum_int(k)

    def shift(self, d, r, sign):
        key = ("bshift", self.family, d, r, sign)
        if sign is None:
            return self.g.y_shift(d, r)

        def build():
            return self.y(r).scale(tpow(d)) + self.one().scale(quantum_int(d) * sign)
        return self.g._memo(key, build)


_SUITE_MODES = {"HM+": ("plus", "HM+"), "HM-": ("minus", "HM-"), "RO": ("circ", "RO"), "klr": ("circ", "klr")}
SUITES = ("HM+", "HM-", "RO", "klr", "RpSn", "MainRelations", "hash-intertwine") + RO_TAGS


def run_suite(gens, suite, variant="printed"):
    """Evaluate a named relation suite over K."""
    if suite in _SUITE_MODES:
        fam, mode = _SUITE_MODES[suite]
        return klr_suite(KBackend(gens, fam), mode, suite, variant)
    if suite in RO_TAGS:
        return klr_suite(KBackend(gens, "circ"), "RO", variant=variant).filtered(suite)
    if suite == "RpSn":
        return rpsn_suite(KBackend(gens, "circ"), "RO", suite, variant)
    if suite == "MainRelations":
        return main_suite(KBackend(gens, "circ"), "RO", suite, variant)
    if suite == "hash-intertwine":
        return hash_suite(gens)
    raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


def hash_suite(gens):
    """ψ°# = -ψ°, y°# = -y°, f_i# = f_{-i} and ψ±# = ψ∓."""
    m = gens.model
    ck = Checker("hash-intertwine")
    for r in range(1, gens.n):
        ck.check("hash-psi-circ", (r,), m.hash(gens.psi_circ(r)), -gens.psi_circ(r))
        ck.check("hash-psi-minus", (r,), m.hash(gens.psi_minus(r)), gens.psi_plus(r))
    for s in range(1, gens.n + 1):
        ck.check("hash-y-circ", (s,), m.hash(gens.y_circ(s)), -gens.y_circ(s))
        ck.check("hash-y-minus", (s,), m.hash(gens.y_minus(s)), gens.y_plus(s))
    for i in gens.realizable():
        ck.check("hash-idempotent", (i,), m.hash(gens.f(i)), gens.f(cb.negate(i, gens.e)))
    return ck.report
