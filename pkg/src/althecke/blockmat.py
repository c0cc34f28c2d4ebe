"""Sparse block-diagonal matrices over ExtScalar.

A matrix is a dict ``row -> {col: value}`` holding nonzero entries only.
:class:`AlgebraElement` keeps one such matrix per partition of n.
"""
from __future__ import annotations

from .exactfield import ONE, ZERO, ExtScalar


def mat_add(a, b, sign=1):
    out = {i: dict(row) for i, row in a.items()}
    for i, row in b.items():
        tgt = out.setdefault(i, {})
        for j, v in row.items():
            if sign < 0:
                v = -v
            if j in tgt:
                s = tgt[j] + v
                if s.c:
                    tgt[j] = s
                else:
                    del tgt[j]
            else:
                tgt[j] = v
        if not tgt:
            del out[i]
    return out


def mat_mul(a, b):
    out = {}
    for i, row in a.items():
        acc = {}
        for k, x in row.items():
            brow = b.get(k)
            if not brow:
                continue
            for j, y in brow.items():
                p = x * y
                if j in acc:
                    acc[j] = acc[j] + p
                else:
                    acc[j] = p
        acc = {j: v for j, v in acc.items() if v.c}
        if acc:
            out[i] = acc
    return out


def mat_scale(a, s):
    out = {}
    for i, row in a.items():
        r = {j: v * s for j, v in row.items()}
        r = {j: v for j, v in r.items() if v.c}
        if r:
            out[i] = r
    return out


def mat_transpose(a):
    out = {}
    for i, row in a.items():
        for j, v in row.items():
            out.setdefault(j, {})[i] = v
    return out


def mat_diag(values):
    return {k: {k: v} for k, v in enumerate(values) if v.c}


def mat_identity(d):
    return {k: {k: ONE} for k in range(d)}


def mat_trace_product(a, b):
    """trace(a @ b) without forming the product."""
    tot = ZERO
    for i, row in a.items():
        for j, x in row.items():
            y = b.get(j, {}).get(i)
            if y is not None:
                tot = tot + x * y
    return tot


class AlgebraElement:
    """Element of the semisimple model: one sparse matrix per partition."""

    __slots__ = ("n", "blocks")

    def __init__(self, n, blocks=None):
        self.n = n
        self.blocks = {lam: m for lam, m in (blocks or {}).items() if m}

    def __add__(self, other):
        keys = set(self.blocks) | set(other.blocks)
        return AlgebraElement(self.n, {lam: mat_add(self.blocks.get(lam, {}), other.blocks.get(lam, {}))
                                       for lam in keys})

    def __sub__(self, other):
        keys = set(self.blocks) | set(other.blocks)
        return AlgebraElement(self.n, {lam: mat_add(self.blocks.get(lam, {}), other.blocks.get(lam, {}), -1)
                                       for lam in keys})

    def __neg__(self):
        return self.scale(-ONE)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            keys = set(self.blocks) & set(other.blocks)
            return AlgebraElement(self.n, {lam: mat_mul(self.blocks[lam], other.blocks[lam]) for lam in keys})
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, s):
        s = ExtScalar.of(s)
        if not s.c:
            return AlgebraElement(self.n)
        return AlgebraElement(self.n, {lam: mat_scale(m, s) for lam, m in self.blocks.items()})

    def __pow__(self, k):
        out = None
        for _ in range(k):
            out = self if out is None else out * self
        return out

    def is_zero(self):
        return not self.blocks

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and (self - other).is_zero()

    __hash__ = None

    def entry(self, lam, i, j):
        return self.blocks.get(lam, {}).get(i, {}).get(j, ZERO)

    def entries(self):
        for lam in sorted(self.blocks, reverse=True):
            for i, row in sorted(self.blocks[lam].items()):
                for j, v in sorted(row.items()):
                    yield lam, i, j, v

    def nnz(self):
        return sum(len(r) for m in self.blocks.values() for r in m.values())

    def witness_norm(self):
        """Number of nonzero matrix entries, the size of a failure witness."""
        return self.nnz()

    def map_blocks(self, fn):
        return AlgebraElement(self.n, {lam: fn(lam, m) for lam, m in self.blocks.items()})

    def __repr__(self):
        return f"AlgebraElement(n={self.n}, nnz={self.nnz()})"


def exact_rank(rows):
    """Rank of a list of sparse vectors (dict key -> ExtScalar) by elimination."""
    pivots = {}  # key -> reduced vector with 1 at key
    rank = 0
    for vec in rows:
        v = {k: x for k, x in vec.items() if x.c}
        while v:
            hit = next((k for k in v if k in pivots), None)
            if hit is None:
                break
            c = v[hit]
            for k, x in pivots[hit].items():
                y = v.get(k, ZERO) - c * x
                if y.c:
                    v[k] = y
                else:
                    v.pop(k, None)
        if not v:
            continue
        key = min(v, key=lambda k: (len(v[k].c), k))
        piv = v[key].inv()
        pivots[key] = {k: x * piv for k, x in v.items()}
        # keep existing pivots reduced against the new one
        for other_key, other in pivots.items():
            if other_key != key and key in other:
                c = other[key]
                for k, x in pivots[key].items():
                    y = other.get(k, ZERO) - c * x
                    if y.c:
                        other[k] = y
                    else:
                        other.pop(k, None)
        rank += 1
    return rank
