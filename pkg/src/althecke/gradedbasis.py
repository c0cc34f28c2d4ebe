"""Homogeneous cellular bases ψ_st, ψ'_st, the Ψ± bases and trace-form Gram matrices.

Words are token lists understood by :func:`klrgen.klr_word_image`; their
images under Θ (ψ_r -> ψ°_r, y_s -> y°_s, e(i) -> f_i) live in the
seminormal model.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from math import factorial

from . import combinat as cb
from .klrgen import GeneratorSet, klr_word_image
from .specialize import specialize_scalar


@dataclass(frozen=True)
class CellularIndex:
    lam: tuple
    s: cb.StdTableau
    t: cb.StdTableau
    primed: bool
    degree: int
    z2degree: int = 0

    def to_json(self):
        return {"lambda": list(self.lam), "s": self.s.to_json(), "t": self.t.to_json(),
                "primed": self.primed, "degree": self.degree, "z2degree": self.z2degree}


def _check_e(e):
    if e is None or e < 3:
        raise ValueError("cellular words need a finite e >= 3")


def y_word(lam, e, primed=False):
    """y_λ (col_m(t^λ) ≡ 0) or y'_λ (row_m(t_λ) ≡ 0) as y tokens."""
    _check_e(e)
    if primed:
        t = cb.coinitial_tableau(lam)
        return [f"y{m}" for m in range(1, t.n + 1) if t.row(m) % e == 0]
    t = cb.initial_tableau(lam)
    return [f"y{m}" for m in range(1, t.n + 1) if t.col(m) % e == 0]


def d_word(t, primed=False):
    """Reduced word r_1...r_k with t obtained from t^λ (or t_λ) by swapping r_j, r_j+1 in turn."""
    d, dp, w, wp = cb.perms_of(t)
    return list(reversed(wp if primed else w))


def d_length(t, primed=False):
    return len(d_word(t, primed))


def _seq(i):
    return "e(" + ",".join(str(x) for x in i) + ")"


def cellular_element(s, t, e, primed=False):
    """(word, index) for ψ_st or ψ'_st = ψ*_{d(s)} y_λ e(i^λ) ψ_{d(t)}."""
    _check_e(e)
    if s.shape != t.shape:
        raise ValueError(f"shape mismatch {s.shape} vs {t.shape}")
    lam = s.shape
    ref = cb.coinitial_tableau(lam) if primed else cb.initial_tableau(lam)
    word = [f"psi{r}" for r in reversed(d_word(s, primed))]
    word += y_word(lam, e, primed)
    word.append(_seq(cb.residue_sequence(ref, e)))
    word += [f"psi{r}" for r in d_word(t, primed)]
    if primed:
        deg = cb.codegree(s, e) + cb.codegree(t, e)
    else:
        deg = cb.degree(s, e) + cb.degree(t, e)
    return word, CellularIndex(lam, s, t, primed, deg)


def sgn_sign(s, t, e):
    """(-1)^{ℓ(d(s)) + ℓ(d(t)) + deg t^λ}."""
    k = d_length(s) + d_length(t) + cb.degree(cb.initial_tableau(s.shape), e)
    return -1 if k % 2 else 1


def Psi(s, t, e, sign=1):
    """Ψ±_st = ψ_st ± sgn_sign(s,t)·ψ'_{s't'} as [(coefficient, word)], plus its index."""
    w1, idx = cellular_element(s, t, e)
    w2, _ = cellular_element(s.conjugate, t.conjugate, e, primed=True)
    c = sign * sgn_sign(s, t, e)
    idx = CellularIndex(idx.lam, s, t, False, idx.degree, 0 if sign > 0 else 1)
    return [(1, w1), (c, w2)], idx


def theta(gens, combo):
    """Θ of a formal combination [(c, word)]."""
    out = gens.model.zero()
    for c, word in combo:
        x = klr_word_image(gens, word)
        out = out + (x if c == 1 else -x if c == -1 else x.scale(c))
    return out


def plus_pairs(n, e, gamma=None, cls=cb.PLUS):
    """(s, t) with res(s) of the given class (optionally in block γ), in a fixed order."""
    out = []
    for lam in cb.partitions(n):
        tabs = cb.standard_tableaux(lam)
        for s in tabs:
            i = cb.residue_sequence(s, e)
            if cb.residue_class(i, e) != cls:
                continue
            if gamma is not None and cb.gamma_of(cb.content_vector(i, e)) != tuple(gamma):
                continue
            for t in tabs:
                out.append((s, t))
    return out


def basis_indices(n, e, algebra="S"):
    """CellularIndex list of the Ψ± basis (S) or the Ψ+ basis (A)."""
    signs = (1, -1) if algebra == "S" else (1,)
    out = []
    for sign in signs:
        for s, t in plus_pairs(n, e):
            out.append(Psi(s, t, e, sign)[1])
    return out


def qdim_from_indices(indices):
    poly = cb.LaurentPoly()
    for ix in indices:
        poly = poly + cb.monomial(ix.degree)
    return poly


# exact rank ----------------------------------------------------------------------

def exact_rank(rows):
    """Rank of rows given as dicts column -> scalar over an exact field."""
    rows = [dict(r) for r in rows if r]
    rank = 0
    pivots = []
    for r in rows:
        for col, prow in pivots:
            c = r.get(col)
            if c is None:
                continue
            f = c * prow[col].inv() if hasattr(c, "inv") else c / prow[col]
            for k, v in prow.items():
                nv = r[k] - f * v if k in r else -(f * v)
                if nv.is_zero():
                    r.pop(k, None)
                else:
                    r[k] = nv
        if r:
            col = min(r)
            pivots.append((col, r))
            rank += 1
    return rank


def _vector(h):
    return {(lam, i, j): v for lam, i, j, v in h.entries()}


def independence_check(n, e, gens=None):
    """Ranks of Θ({Ψ±_st}) and Θ({Ψ+_st}) for res(s) ∈ I_+."""
    gens = gens or GeneratorSet(n, e)
    pairs = plus_pairs(n, e)
    plus = [_vector(theta(gens, Psi(s, t, e, 1)[0])) for s, t in pairs]
    minus = [_vector(theta(gens, Psi(s, t, e, -1)[0])) for s, t in pairs]
    r_plus = exact_rank(plus)
    r_all = exact_rank(plus + minus)
    return {"n": n, "e": e, "elements": 2 * len(pairs), "rank": r_all, "rank_plus": r_plus,
            "expected": [factorial(n), factorial(n) // 2 if n > 1 else 1],
            "ok": r_all == factorial(n) and r_plus == max(factorial(n) // 2, 1) and len(pairs) * 2 == factorial(n)
            if n > 1 else r_all == 1}


# Gram matrices --------------------------------------------------------------------

def block_idempotents(gens, gamma):
    """(f_+^γ, f_-^γ)."""
    m = gens.model
    plus, minus = m.zero(), m.zero()
    for i in gens.realizable():
        if cb.gamma_of(cb.content_vector(i, gens.e)) != tuple(gamma):
            continue
        cls = cb.residue_class(i, gens.e)
        if cls == cb.PLUS:
            plus = plus + gens.f(i)
        elif cls == cb.MINUS:
            minus = minus + gens.f(i)
    return plus, minus


def tau_gamma(gens, h, gamma):
    """τ(f_+ h) + τ((f_- h)^#), the sgn-invariant trace on the block γ (over K)."""
    m = gens.model
    fp, fm = block_idempotents(gens, gamma)
    return m.tau(fp * h) + m.tau(m.hash(fm * h))


@dataclass
class GramMatrix:
    gamma: tuple
    defect: int
    target: str
    rows: list
    cols: list
    entries: list
    rank: int

    @property
    def size(self):
        return len(self.rows)

    def matched(self):
        """Column index matched to each row via (u', v') = (s, t)."""
        where = {(ix.s, ix.t): k for k, ix in enumerate(self.cols)}
        return [where.get((ix.s.conjugate, ix.t.conjugate)) for ix in self.rows]

    def diagonal_nonzero(self, field):
        return all(c is not None and not field.is_zero(self.entries[r][c])
                   for r, c in enumerate(self.matched()))

    def dominance_violations(self, field):
        """Nonzero entries at (s,t),(u,v) with (u',v') not dominating (s,t)."""
        bad = []
        for r, rx in enumerate(self.rows):
            for c, cx in enumerate(self.cols):
                if field.is_zero(self.entries[r][c]):
                    continue
                if not cb.pair_dominates((cx.s.conjugate, cx.t.conjugate), (rx.s, rx.t)):
                    bad.append((r, c))
        return bad

    @property
    def nonsingular(self):
        return self.rank == self.size and len(self.cols) == self.size

    def to_json(self, field):
        return {"gamma": [list(a) for a in self.gamma], "defect": self.defect, "target": self.target,
                "order": "rows: Ψ+_st with res(s) in I+, partitions in reverse lexicographic order; "
                         "columns: Ψ+_uv with res(u) in I-, same order",
                "rows": [ix.to_json() for ix in self.rows], "cols": [ix.to_json() for ix in self.cols],
                "entries": [[field.fmt(x) for x in row] for row in self.entries],
                "rank": self.rank, "nonsingular": self.nonsingular}

    def to_csv(self, field):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["# rows: Ψ+_st (res(s) in I+); columns: Ψ+_uv (res(u) in I-)"])
        w.writerow(["row"] + [f"{_tab(c.s)}|{_tab(c.t)}" for c in self.cols])
        for rx, row in zip(self.rows, self.entries):
            w.writerow([f"{_tab(rx.s)}|{_tab(rx.t)}"] + [field.fmt(x) for x in row])
        return buf.getvalue()


def _tab(t):
    return "/".join("".join(str(k) for k in row) for row in t.rows)


def field_rank(matrix, field):
    if not matrix:
        return 0
    if field.char0:
        rows = [{k: x for k, x in enumerate(r) if not x.is_zero()} for r in matrix]
        return exact_rank(rows)
    from . import _kernels
    import numpy as np
    M = np.array([[field.encode(x) for x in r] for r in matrix], dtype=np.int32)
    return _kernels.rank_mod(M, field.tables)


def gram_matrix(gamma, n, e, target, gens=None):
    """⟨Ψ+_st, Ψ+_uv⟩_γ = τ_γ(Θ(Ψ+_st)·Θ(Ψ+_vu)), truncated to degree 2·defect(γ)."""
    gens = gens or GeneratorSet(n, e)
    gamma = tuple(tuple(a) for a in gamma)
    dfc = cb.defect(gamma[0])
    rows = plus_pairs(n, e, gamma, cb.PLUS)
    cols = plus_pairs(n, e, gamma, cb.MINUS)
    rimg = [(Psi(s, t, e)[1], theta(gens, Psi(s, t, e)[0])) for s, t in rows]
    cimg = [(Psi(u, v, e)[1], theta(gens, Psi(v, u, e)[0])) for u, v in cols]
    F = target.field
    entries = []
    for rx, a in rimg:
        row = []
        for cx, b in cimg:
            if rx.degree + cx.degree != 2 * dfc:
                row.append(F.zero())
                continue
            row.append(specialize_scalar(tau_gamma(gens, a * b, gamma), target))
        entries.append(row)
    return GramMatrix(gamma, dfc, target.label, [ix for ix, _ in rimg], [ix for ix, _ in cimg],
                      entries, field_rank(entries, F))


def block_report(n, e):
    out = []
    for gamma, parts in cb.blocks(n, e).items():
        alpha = gamma[0]
        size = len(set(gamma))
        dfc = cb.defect(alpha)
        out.append({
            "gamma": [list(a) for a in gamma],
            "defect": dfc,
            "size": size,
            "partitions": [list(p) for p in parts],
            "qdim_S": cb.graded_dim(n, e, "S", gamma).to_json(),
            "qdim_A": cb.graded_dim(n, e, "A", gamma).to_json(),
            "classifier": "indecomposable" if size == 2 or dfc > 0 else "splits into two matrix algebras",
        })
    return out


# emitters --------------------------------------------------------------------------

BASIS_COLUMNS = ("lambda", "s", "t", "primed", "degree", "z2degree")


def basis_rows(n, e, algebra="S"):
    for ix in basis_indices(n, e, algebra):
        yield ("".join(str(p) for p in ix.lam) if max(ix.lam) < 10 else ",".join(map(str, ix.lam)),
               _tab(ix.s), _tab(ix.t), int(ix.primed), ix.degree, ix.z2degree)


def basis_csv(n, e, algebra="S"):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BASIS_COLUMNS)
    for row in basis_rows(n, e, algebra):
        w.writerow(row)
    return buf.getvalue()


def basis_json(n, e, algebra="S"):
    return json.dumps({"n": n, "e": e, "algebra": algebra,
                       "order": "sign (+ then -), partitions in reverse lexicographic order, s then t",
                       "basis": [dict(zip(BASIS_COLUMNS, r)) for r in basis_rows(n, e, algebra)]},
                      indent=2, sort_keys=True)
