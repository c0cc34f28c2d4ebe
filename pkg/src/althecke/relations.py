"""Relation suites evaluated against a generator backend.

A backend exposes ``psi(r)``, ``y(s)``, ``e(i)``, ``one()``, ``zero()``,
``tpow(k)``, ``qint(k)``, ``shift(d, r, sign)`` and ``indices()``, and its
elements support ``+ - *``, ``scale``, ``is_zero`` and ``witness_norm``.
``shift(d, r, sign)`` is ``t^d y_r + sign*[d]`` as a global element.

Modes pick which right hand sides are checked:

* ``klr``: the undeformed KLR presentation;
* ``HM+`` / ``HM-``: the graded Hecke presentation for ψ± / y±;
* ``RO``: the deformed presentation for ψ°, y° with the I_+/I_- split.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import combinat as cb

MODES = ("klr", "HM+", "HM-", "RO")

# lemma tags attached to RO instances
RO_TAGS = ("automatic", "psi-one", "simple-psi2", "psi2-intertwine", "mixed", "quadratic", "braid23")


@dataclass
class Instance:
    relation: str
    indices: tuple
    passed: bool
    vacuous: bool
    witness_norm: int
    tag: str = ""
    witness: object = field(default=None, repr=False, compare=False)


@dataclass
class RelationReport:
    suite: str
    instances: list = field(default_factory=list)

    @property
    def total(self):
        return len(self.instances)

    @property
    def passed(self):
        return sum(1 for x in self.instances if x.passed)

    @property
    def vacuous(self):
        return sum(1 for x in self.instances if x.vacuous)

    @property
    def failures(self):
        return [x for x in self.instances if not x.passed]

    @property
    def ok(self):
        return not self.failures

    def filtered(self, tag, suite=None):
        return RelationReport(suite or tag, [x for x in self.instances if x.tag == tag])

    def merge(self, other):
        self.instances.extend(other.instances)
        return self

    def to_json(self):
        return {
            "suite": self.suite,
            "total": self.total,
            "passed": self.passed,
            "vacuous": self.vacuous,
            "failures": [{"relation": f.relation, "indices": _jsonable(f.indices), "witness_norm": f.witness_norm}
                         for f in self.failures],
        }

    def summary(self):
        return (f"{self.suite}: {self.passed}/{self.total} passed "
                f"({self.vacuous} vacuous, {len(self.failures)} failed)")


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return x


class Checker:
    def __init__(self, suite):
        self.report = RelationReport(suite)

    def check(self, relation, indices, lhs, rhs, tag=""):
        diff = lhs - rhs
        ok = diff.is_zero()
        vac = ok and lhs.is_zero() and rhs.is_zero()
        self.report.instances.append(Instance(relation, tuple(indices), ok, vac,
                                              0 if ok else diff.witness_norm(), tag,
                                              None if ok else diff))


# right hand sides -----------------------------------------------------------

def _rho(i, r, e):
    return cb.hat(i[r - 1], e) - cb.hat(i[r], e)


def _deformed(mode, r):
    return mode in ("HM+", "HM-") or (mode == "RO" and r > 2)


def quad_rhs(B, mode, r, i, variant="printed"):
    """ψ_r^2 e(i) in the given mode.

    ``variant='printed'`` uses the shift and ρ conventions exactly as
    displayed; ``'corrected'`` uses ⟨d⟩ with eigenvalue [c_r - î_r + d] and
    ρ(-i) on I_-, which is what hashing the I_+ relations produces.
    """
    e = B.e
    a, b = i[r - 1], i[r]
    fi = B.e_(i)
    if a == b:
        return B.zero()
    fwd, bwd = cb.arrow(a, b, e), cb.arrow(b, a, e)
    if not (fwd or bwd):
        return fi
    y = B.y
    if not _deformed(mode, r):
        return ((y(r) - y(r + 1)) if fwd else (y(r + 1) - y(r))) * fi
    printed = variant == "printed"
    rho = _rho(i, r, e)
    rm = _rho(cb.negate(i, e), r, e)
    sh = B.shift
    cls = cb.residue_class(i, e)
    if mode == "HM+" or (mode == "RO" and cls == cb.PLUS):
        s = -1 if printed else 1
        return ((sh(1 + rho, r, s) - y(r + 1)) if fwd else (sh(1 - rho, r + 1, s) - y(r))) * fi
    if mode == "HM-":
        if printed:
            return ((sh(1 + rho, r + 1, -1) - y(r)) if fwd else (sh(1 - rho, r, -1) - y(r + 1))) * fi
        return ((sh(1 - rm, r + 1, 1) - y(r)) if fwd else (sh(1 + rm, r, 1) - y(r + 1))) * fi
    # RO on I_-
    if printed:
        return ((y(r) - sh(1 + rho, r + 1, 1)) if fwd else (y(r + 1) - sh(1 - rho, r, 1))) * fi
    return ((y(r) - sh(1 - rm, r + 1, -1)) if fwd else (y(r + 1) - sh(1 + rm, r, -1))) * fi


def braid_rhs(B, mode, r, i, variant="printed"):
    """(ψ_rψ_{r+1}ψ_r - ψ_{r+1}ψ_rψ_{r+1}) e(i) in the given mode."""
    e = B.e
    a, b, c = i[r - 1], i[r], i[r + 1]
    fi = B.e_(i)
    if a != c:
        return B.zero()
    fwd = cb.arrow(a, b, e)
    bwd = cb.arrow(b, a, e)
    if not (fwd or bwd):
        return B.zero()
    if not _deformed(mode, r):
        return fi.scale(B.const(-1 if fwd else 1))
    rho = _rho(i, r, e)
    d_minus = 1 - rho if variant == "printed" else 1 + _rho(cb.negate(i, e), r, e)
    cls = cb.residue_class(i, e)
    if mode == "HM+" or (mode == "RO" and cls == cb.PLUS):
        return fi.scale(-B.tpow(1 + rho)) if fwd else fi
    if mode == "HM-":
        return fi.scale(-B.tpow(d_minus)) if bwd else fi
    return fi.scale(B.tpow(d_minus)) if bwd else fi.scale(B.const(-1))


def mixed_y(B, mode, r):
    """The element playing y_r in ψ_r y_{r+1} and y_{r+1} ψ_r."""
    if mode == "RO" and r == 2:
        return B.shift(-B.e, 2, None)
    return B.y(r)


def _tag(mode, r, kind):
    if mode != "RO":
        return ""
    if r == 1:
        return "psi-one"
    if r == 2:
        return {"intertwine": "psi2-intertwine", "mixed": "mixed", "quadratic": "quadratic",
                "braid": "braid23", "far": "simple-psi2"}[kind]
    return "automatic"


# KLR-type suites ---------------------------------------------------------------

def klr_suite(B, mode, suite=None, variant="printed"):
    """All KLR-type relations for realizable i, right hand sides per ``mode``."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode}")
    n, e = B.n, B.e
    ck = Checker(suite or mode)
    idx = B.indices()
    idx_set = set(idx)
    one = B.one()
    psi, y, f = B.psi, B.y, B.e_
    # automatic block
    for i in idx:
        k = 1 if i[0] == 0 else 0
        lhs = (y(1) ** k) * f(i) if k else f(i)
        ck.check("y1-cyclotomic", (i,), lhs, B.zero(), _tag(mode, 0, "") or "automatic")
    for i in idx:
        for j in idx:
            ck.check("idempotent", (i, j), f(i) * f(j), f(i) if i == j else B.zero(),
                     "automatic" if mode == "RO" else "")
    total = B.zero()
    for i in idx:
        total = total + f(i)
    ck.check("idempotent-sum", (), total, one, "automatic" if mode == "RO" else "")
    for r in range(1, n + 1):
        for i in idx:
            ck.check("y-idempotent", (r, i), y(r) * f(i), f(i) * y(r), "automatic" if mode == "RO" else "")
    for r in range(1, n + 1):
        for s in range(r + 1, n + 1):
            ck.check("y-y", (r, s), y(r) * y(s), y(s) * y(r), "automatic" if mode == "RO" else "")
    for r in range(1, n):
        for i in idx:
            j = cb.swap_residues(i, r)
            rhs = f(j) * psi(r) if j in idx_set else B.zero()
            ck.check("psi-idempotent", (r, i), psi(r) * f(i), rhs, _tag(mode, r, "intertwine"))
    for r in range(1, n):
        for i in idx:
            d = 1 if i[r - 1] == i[r] else 0
            Y = mixed_y(B, mode, r)
            fi = f(i)
            j = cb.swap_residues(i, r)
            ck.check("psi-y-next", (r, i), psi(r) * y(r + 1) * fi, (Y * psi(r) + one.scale(B.const(d))) * fi,
                     _tag(mode, r, "mixed"))
            ck.check("y-next-psi", (r, i), y(r + 1) * psi(r) * fi, (psi(r) * Y + one.scale(B.const(d))) * fi,
                     _tag(mode, r, "mixed"))
            del j
    for r in range(1, n):
        for s in range(1, n + 1):
            if s in (r, r + 1):
                continue
            ck.check("psi-y-far", (r, s), psi(r) * y(s), y(s) * psi(r), _tag(mode, r, "far"))
    for r in range(1, n):
        for s in range(r + 2, n):
            t = "simple-psi2" if mode == "RO" and 2 in (r, s) else _tag(mode, min(r, s), "far")
            if mode == "RO" and 1 in (r, s) and 2 not in (r, s):
                t = "psi-one"
            ck.check("psi-psi-far", (r, s), psi(r) * psi(s), psi(s) * psi(r), t)
    for r in range(1, n):
        for i in idx:
            ck.check("quadratic", (r, i), psi(r) * psi(r) * f(i), quad_rhs(B, mode, r, i, variant),
                     _tag(mode, r, "quadratic"))
    for r in range(1, n - 1):
        for i in idx:
            fi = f(i)
            lhs = (psi(r) * psi(r + 1) * psi(r) - psi(r + 1) * psi(r) * psi(r + 1)) * fi
            tag = _tag(mode, r, "braid") if r != 1 else "psi-one"
            ck.check("braid", (r, i), lhs, braid_rhs(B, mode, r, i, variant), tag)
    return ck.report


# ε-suites -----------------------------------------------------------------------

def _rhs_at(B, fn, mode, r, i, variant):
    return fn(B, mode, r, i, variant) if i in B.index_set() else B.zero()


def rpsn_suite(B, mode="klr", suite="RpSn", variant="printed"):
    """Relations for ψ_r, y_s, ε_a(i).

    ``mode='klr'`` checks the undeformed displays; any other mode replaces
    each right hand side by RHS(i) ± RHS(-i) taken from that mode.
    """
    n, e = B.n, B.e
    ck = Checker(suite)
    idx = B.indices()
    idx_set = B.index_set()
    one = B.one()
    psi, y, eps = B.psi, B.y, B.eps
    neg = lambda i: cb.negate(i, e)
    z = B.zero()
    for i in idx:
        lhs = (y(1) * eps(0, i)) if i[0] == 0 else eps(0, i)
        ck.check("y1-cyclotomic", (i,), lhs, z)
    total = z
    for i in idx:
        total = total + eps(0, i).scale(B.const_frac(1, 2))
    ck.check("epsilon-sum", (), total, one)
    for i in idx:
        for j in idx:
            rel = eps(0, i) if (i == j or i == neg(j)) else z
            ck.check("epsilon0-product", (i, j), eps(0, i) * eps(0, j), rel)
    for i in idx:
        for a in (0, 1):
            for b in (0, 1):
                ck.check("epsilon-product", (a, b, i), eps(a, i) * eps(b, i), eps(a + b, i))
            ck.check("epsilon-sign", (a, i), eps(a, i), eps(a, neg(i)).scale(B.const(1 if a == 0 else -1)))
    for r in range(1, n):
        for i in idx:
            for a in (0, 1):
                j = cb.swap_residues(i, r)
                rhs = eps(a, j) * psi(r) if j in idx_set else z
                ck.check("psi-epsilon", (r, a, i), psi(r) * eps(a, i), rhs)
    for r in range(1, n + 1):
        for i in idx:
            for a in (0, 1):
                ck.check("y-epsilon", (r, a, i), y(r) * eps(a, i), eps(a, i) * y(r))
            for s in range(r + 1, n + 1):
                e1 = eps(1, i)
                ck.check("y-y", (r, s, i), y(r) * y(s) * e1, y(s) * y(r) * e1)
    for r in range(1, n):
        Y = mixed_y(B, mode, r)
        for i in idx:
            d = 1 if i[r - 1] == i[r] else 0
            e1 = eps(1, i)
            ck.check("psi-y-next", (r, i), psi(r) * y(r + 1) * e1, (Y * psi(r) + one.scale(B.const(d))) * e1)
            ck.check("y-next-psi", (r, i), y(r + 1) * psi(r) * e1, (psi(r) * Y + one.scale(B.const(d))) * e1)
            for s in range(1, n + 1):
                if s not in (r, r + 1):
                    ck.check("psi-y-far", (r, s, i), psi(r) * y(s) * e1, y(s) * psi(r) * e1)
            for s in range(r + 2, n):
                ck.check("psi-psi-far", (r, s, i), psi(r) * psi(s) * e1, psi(s) * psi(r) * e1)
    for r in range(1, n):
        for i in idx:
            a, b = i[r - 1], i[r]
            lhs = psi(r) * psi(r) * eps(1, i)
            if mode == "klr":
                if a == b:
                    rhs = z
                elif cb.arrow(a, b, e):
                    rhs = (y(r) - y(r + 1)) * eps(0, i)
                elif cb.arrow(b, a, e):
                    rhs = (y(r + 1) - y(r)) * eps(0, i)
                else:
                    rhs = eps(1, i)
            else:
                rhs = quad_rhs(B, mode, r, i, variant) - _rhs_at(B, quad_rhs, mode, r, neg(i), variant)
            ck.check("quadratic", (r, i), lhs, rhs)
    for r in range(1, n - 1):
        for i in idx:
            e0 = eps(0, i)
            lhs = (psi(r) * psi(r + 1) * psi(r) - psi(r + 1) * psi(r) * psi(r + 1)) * e0
            if mode == "klr":
                x, w, v = i[r - 1], i[r], i[r + 1]
                if x == v and cb.arrow(x, w, e):
                    rhs = -eps(1, i)
                elif x == v and cb.arrow(w, x, e):
                    rhs = eps(1, i)
                else:
                    rhs = z
            else:
                rhs = braid_rhs(B, mode, r, i, variant) + _rhs_at(B, braid_rhs, mode, r, neg(i), variant)
            ck.check("braid", (r, i), lhs, rhs)
    return ck.report


def main_suite(B, mode="klr", suite="MainRelations", variant="printed"):
    """Relations for Ψ_r(i) = ψ_r ε_1(i), Y_s(i) = y_s ε_1(i), ε(i) = ε_0(i).

    Kronecker deltas on residue sequences are read up to i ~ -i, the only
    reading compatible with ε(-i) = ε(i) and Y(-i) = -Y(i).
    """
    n, e = B.n, B.e
    ck = Checker(suite)
    idx = B.indices()
    idx_set = B.index_set()
    neg = lambda i: cb.negate(i, e)
    sim = lambda i, j: i == j or i == neg(j)
    psi, y, eps = B.psi, B.y, B.eps
    z = B.zero()
    P = lambda r, i: psi(r) * eps(1, i) if i in idx_set else z
    Y = lambda s, i: y(s) * eps(1, i) if i in idx_set else z
    E = lambda i: eps(0, i) if i in idx_set else z
    one = B.one()
    for i in idx:
        ck.check("epsilon-sign", (i,), E(neg(i)), E(i))
        for r in range(1, n):
            ck.check("Psi-sign", (r, i), P(r, neg(i)), -P(r, i))
        for s in range(1, n + 1):
            ck.check("Y-sign", (s, i), Y(s, neg(i)), -Y(s, i))
        ck.check("Y1-cyclotomic", (i,), Y(1, i) if i[0] == 0 else E(i), z)
    total = z
    for i in idx:
        total = total + E(i).scale(B.const_frac(1, 2))
    ck.check("epsilon-sum", (), total, one)
    for i in idx:
        for j in idx:
            ck.check("epsilon-product", (i, j), E(i) * E(j), E(i) if sim(i, j) else z)
    for i in idx:
        for j in idx:
            for k in idx:
                if not (sim(i, j) or sim(j, k)):
                    continue
                for s in range(1, n + 1):
                    rhs = Y(s, j) if sim(i, j) and sim(j, k) else z
                    ck.check("epsilon-Y-epsilon", (i, s, j, k), E(i) * Y(s, j) * E(k), rhs)
                for r in range(1, n):
                    ok = sim(cb.swap_residues(i, r), j) and sim(j, k)
                    ck.check("epsilon-Psi-epsilon", (i, r, j, k), E(i) * P(r, j) * E(k), P(r, j) if ok else z)
    for i in idx:
        for j in idx:
            if not sim(i, j):
                continue
            for r in range(1, n + 1):
                for s in range(r + 1, n + 1):
                    ck.check("Y-Y", (r, s, i, j), Y(r, i) * Y(s, j), Y(s, i) * Y(r, j))
    for r in range(1, n):
        for i in idx:
            si = cb.swap_residues(i, r)
            d = 1 if i[r - 1] == i[r] else 0
            delta = E(i).scale(B.const(d))
            if mode == "RO" and r == 2:
                sh = mixed_y(B, mode, r)
                ck.check("Psi-Y-next", (r, i), P(r, i) * Y(r + 1, i), sh * E(si) * P(r, i) * eps(1, i) + delta)
                ck.check("Y-next-Psi", (r, i), Y(r + 1, si) * P(r, i), P(r, i) * sh * eps(1, i) + delta)
            else:
                ck.check("Psi-Y-next", (r, i), P(r, i) * Y(r + 1, i), Y(r, si) * P(r, i) + delta)
                ck.check("Y-next-Psi", (r, i), Y(r + 1, si) * P(r, i), P(r, i) * Y(r, i) + delta)
            for s in range(1, n + 1):
                if s not in (r, r + 1):
                    ck.check("Psi-Y-far", (r, s, i), P(r, i) * Y(s, i), Y(s, si) * P(r, i))
            for t in range(r + 2, n):
                ck.check("Psi-Psi-far", (r, t, i), P(r, cb.swap_residues(i, t)) * P(t, i), P(t, si) * P(r, i))
    for r in range(1, n):
        for i in idx:
            si = cb.swap_residues(i, r)
            a, b = i[r - 1], i[r]
            lhs = P(r, si) * P(r, i)
            if mode == "klr":
                if a == b:
                    rhs = z
                elif cb.arrow(a, b, e):
                    rhs = Y(r, i) - Y(r + 1, i)
                elif cb.arrow(b, a, e):
                    rhs = Y(r + 1, i) - Y(r, i)
                else:
                    rhs = E(i)
            else:
                rhs = quad_rhs(B, mode, r, i, variant) + _rhs_at(B, quad_rhs, mode, r, neg(i), variant)
            ck.check("quadratic", (r, i), lhs, rhs)
    for r in range(1, n - 1):
        for i in idx:
            s1 = cb.swap_residues(i, r)
            s21 = cb.swap_residues(s1, r + 1)
            t1 = cb.swap_residues(i, r + 1)
            t21 = cb.swap_residues(t1, r)
            lhs = P(r, s21) * P(r + 1, s1) * P(r, i) - P(r + 1, t21) * P(r, t1) * P(r + 1, i)
            if mode == "klr":
                x, w, v = i[r - 1], i[r], i[r + 1]
                if x == v and cb.arrow(x, w, e):
                    rhs = -E(i)
                elif x == v and cb.arrow(w, x, e):
                    rhs = E(i)
                else:
                    rhs = z
            else:
                rhs = braid_rhs(B, mode, r, i, variant) - _rhs_at(B, braid_rhs, mode, r, neg(i), variant)
            ck.check("braid", (r, i), lhs, rhs)
    return ck.report
