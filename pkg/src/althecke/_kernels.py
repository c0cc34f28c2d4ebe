"""Finite-field kernels for specialized Hecke algebra arithmetic.

Field elements are integer codes with add/mul lookup tables (see
``FiniteField.tables``).  ``ALTHECKE_BACKEND=numpy`` forces the numpy
implementation; otherwise numba is used when it imports.
"""
from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

from . import combinat as cb

try:  # pragma: no cover - exercised via the backend switch
    from numba import njit
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


def backend():
    want = os.environ.get("ALTHECKE_BACKEND", "numba").lower()
    if want not in ("numba", "numpy"):
        raise ValueError(f"ALTHECKE_BACKEND must be numba or numpy, not {want!r}")
    return "numba" if want == "numba" and _HAVE_NUMBA else "numpy"


@lru_cache(maxsize=None)
def hecke_tables(n):
    """Right multiplication data for the T_w basis of H(S_n).

    Returns (perms, R, up, order, parent, gen): R[k, r-1] is the index of
    w_k s_r, up[k, r-1] says whether the length goes up, and ``order`` lists
    indices by length with w = parent·s_gen.
    """
    perms = cb.all_perms(n)
    index = {w: k for k, w in enumerate(perms)}
    N = len(perms)
    R = np.zeros((N, max(n - 1, 1)), dtype=np.int64)
    up = np.zeros((N, max(n - 1, 1)), dtype=np.bool_)
    for k, w in enumerate(perms):
        for r in range(1, n):
            x = cb.perm_mul(w, cb.simple(r, n))
            R[k, r - 1] = index[x]
            up[k, r - 1] = w[r - 1] < w[r]
    order, parent, gen = [], [], []
    for k, w in enumerate(perms):
        word = cb.reduced_word(w)
        if not word:
            continue
        v = cb.word_to_perm(word[:-1], n)
        order.append(k)
        parent.append(index[v])
        gen.append(word[-1] - 1)
    return (perms, R, up, np.array(order, dtype=np.int64), np.array(parent, dtype=np.int64),
            np.array(gen, dtype=np.int64))


# numpy implementations -------------------------------------------------------

def _rmul_np(vec, r, R, up, xi, xim1, add, mul):
    col = R[:, r]
    u = up[:, r]
    new = np.zeros_like(vec)
    coef = np.where(u, vec, mul[xi, vec])
    new[col] = coef
    down = ~u
    new[down] = add[new[down], mul[xim1, vec[down]]]
    return new


def _hecke_mul_np(a, b, R, up, order, parent, gen, xi, xim1, add, mul):
    N = a.shape[0]
    cur = np.zeros((N, N), dtype=a.dtype)
    cur[0] = a
    for k in range(order.shape[0]):
        cur[order[k]] = _rmul_np(cur[parent[k]], gen[k], R, up, xi, xim1, add, mul)
    out = np.zeros_like(a)
    for w in np.nonzero(b)[0]:
        out = add[out, mul[b[w], cur[w]]]
    return out


def _rank_np(M, add, mul, neg, inv):
    M = M.copy()
    rows, cols = M.shape
    rank = 0
    for c in range(cols):
        piv = None
        for r in range(rank, rows):
            if M[r, c]:
                piv = r
                break
        if piv is None:
            continue
        M[[rank, piv]] = M[[piv, rank]]
        M[rank] = mul[inv[M[rank, c]], M[rank]]
        for r in range(rows):
            if r != rank and M[r, c]:
                M[r] = add[M[r], mul[neg[M[r, c]], M[rank]]]
        rank += 1
        if rank == rows:
            break
    return rank


# numba implementations -------------------------------------------------------

if _HAVE_NUMBA:
    @njit(cache=True)
    def _hecke_mul_nb(a, b, R, up, order, parent, gen, xi, xim1, add, mul):
        N = a.shape[0]
        cur = np.zeros((N, N), dtype=a.dtype)
        cur[0, :] = a
        for k in range(order.shape[0]):
            dst, src, r = order[k], parent[k], gen[k]
            for v in range(N):
                c = cur[src, v]
                if c == 0:
                    continue
                x = R[v, r]
                if up[v, r]:
                    cur[dst, x] = add[cur[dst, x], c]
                else:
                    cur[dst, v] = add[cur[dst, v], mul[xim1, c]]
                    cur[dst, x] = add[cur[dst, x], mul[xi, c]]
        out = np.zeros_like(a)
        for w in range(N):
            bw = b[w]
            if bw == 0:
                continue
            for v in range(N):
                c = cur[w, v]
                if c != 0:
                    out[v] = add[out[v], mul[bw, c]]
        return out

    @njit(cache=True)
    def _rank_nb(M, add, mul, neg, inv):
        M = M.copy()
        rows, cols = M.shape
        rank = 0
        for c in range(cols):
            piv = -1
            for r in range(rank, rows):
                if M[r, c] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(cols):
                    tmp = M[rank, j]
                    M[rank, j] = M[piv, j]
                    M[piv, j] = tmp
            s = inv[M[rank, c]]
            for j in range(cols):
                M[rank, j] = mul[s, M[rank, j]]
            for r in range(rows):
                if r != rank and M[r, c] != 0:
                    f = neg[M[r, c]]
                    for j in range(cols):
                        if M[rank, j] != 0:
                            M[r, j] = add[M[r, j], mul[f, M[rank, j]]]
            rank += 1
            if rank == rows:
                break
        return rank


def hecke_mul(a, b, n, xi, field_tables):
    """Product of two T_w coefficient vectors (integer codes) in H(S_n)."""
    add, mul, _neg, _inv = field_tables
    _perms, R, up, order, parent, gen = hecke_tables(n)
    one = 1
    xim1 = add[xi, _neg[one]]
    a = np.ascontiguousarray(a, dtype=np.int32)
    b = np.ascontiguousarray(b, dtype=np.int32)
    if backend() == "numba":
        return _hecke_mul_nb(a, b, R, up, order, parent, gen, xi, xim1, add, mul)
    return _hecke_mul_np(a, b, R, up, order, parent, gen, xi, xim1, add, mul)


def rank_mod(M, field_tables):
    """Rank of an integer-coded matrix over the finite field."""
    add, mul, neg, inv = field_tables
    M = np.ascontiguousarray(M, dtype=np.int32)
    if M.size == 0:
        return 0
    if backend() == "numba":
        return int(_rank_nb(M, add, mul, neg, inv))
    return int(_rank_np(M, add, mul, neg, inv))
