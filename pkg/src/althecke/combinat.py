"""Partitions, standard tableaux, residues, tableau degrees and blocks.

Residue sequences are plain tuples of integers.  ``e=None`` stands for
e = infinity, in which case residues are contents and nothing wraps.

>>> [t.rows for t in standard_tableaux((2, 1))]
[((1, 2), (3,)), ((1, 3), (2,))]
>>> residue_sequence(standard_tableaux((2, 1))[1], 3)
(0, 2, 1)
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import factorial

PLUS, MINUS, NEITHER = "plus", "minus", "neither"


# ---------------------------------------------------------------- partitions

def check_partition(lam):
    lam = tuple(int(x) for x in lam)
    if any(x <= 0 for x in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"not a partition: {lam}")
    return lam


@lru_cache(maxsize=None)
def partitions(n):
    """All partitions of n, reverse lexicographic: (n) first, (1^n) last."""
    def gen(m, cap):
        if m == 0:
            yield ()
            return
        for k in range(min(m, cap), 0, -1):
            for rest in gen(m - k, k):
                yield (k,) + rest
    return tuple(gen(n, n))


def conjugate(lam):
    lam = check_partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x >= r) for r in range(1, lam[0] + 1))


def dominates(lam, mu):
    """Dominance order on partitions of the same size."""
    if sum(lam) != sum(mu):
        raise ValueError("dominance needs partitions of equal size")
    a = b = 0
    for k in range(max(len(lam), len(mu))):
        a += lam[k] if k < len(lam) else 0
        b += mu[k] if k < len(mu) else 0
        if a < b:
            return False
    return True


def is_e_restricted(mu, e):
    mu = check_partition(mu)
    parts = mu + (0,)
    return all(parts[k] - parts[k + 1] < e for k in range(len(mu)))


def addable_nodes(lam):
    lam = tuple(lam)
    out = []
    for r in range(len(lam) + 1):
        here = lam[r] if r < len(lam) else 0
        if r == 0 or lam[r - 1] > here:
            out.append((r + 1, here + 1))
    return out


def removable_nodes(lam):
    lam = tuple(lam)
    out = []
    for r, x in enumerate(lam):
        below = lam[r + 1] if r + 1 < len(lam) else 0
        if x > below:
            out.append((r + 1, x))
    return out


def residue_of(node, e):
    c = node[1] - node[0]
    return c if e is None else c % e


# ------------------------------------------------------------------ tableaux

@dataclass(frozen=True)
class StdTableau:
    """A standard tableau stored as a tuple of rows."""

    rows: tuple

    @cached_property
    def shape(self):
        return tuple(len(r) for r in self.rows)

    @cached_property
    def n(self):
        return sum(self.shape)

    @cached_property
    def _where(self):
        # entry -> (row, col), 1-based
        pos = [None] * (self.n + 1)
        for a, row in enumerate(self.rows, 1):
            for b, k in enumerate(row, 1):
                pos[k] = (a, b)
        return tuple(pos)

    def node(self, k):
        return self._where[k]

    def row(self, k):
        return self._where[k][0]

    def col(self, k):
        return self._where[k][1]

    def content(self, k):
        a, b = self._where[k]
        return b - a

    @cached_property
    def contents(self):
        return tuple(self.content(k) for k in range(1, self.n + 1))

    def rho(self, r):
        """Axial distance c_r - c_{r+1}."""
        return self.content(r) - self.content(r + 1)

    @cached_property
    def conjugate(self):
        lam = self.shape
        cols = []
        for c in range(lam[0] if lam else 0):
            cols.append(tuple(row[c] for row in self.rows if len(row) > c))
        return StdTableau(tuple(cols))

    def restrict(self, m):
        rows = tuple(tuple(k for k in row if k <= m) for row in self.rows)
        return StdTableau(tuple(r for r in rows if r))

    def swap(self, r):
        """s_r acting on entries; None if the result is not standard."""
        (a1, b1), (a2, b2) = self._where[r], self._where[r + 1]
        if a1 == a2 or b1 == b2:
            return None
        return self.permute({r: r + 1, r + 1: r})

    def permute(self, w):
        """Apply an entry permutation (dict or one-line tuple, 1-based)."""
        if isinstance(w, dict):
            f = lambda k: w.get(k, k)
        else:
            f = lambda k: w[k - 1]
        return StdTableau(tuple(tuple(f(k) for k in row) for row in self.rows))

    @cached_property
    def reading_word(self):
        return tuple(k for row in self.rows for k in row)

    def is_standard(self):
        for row in self.rows:
            if any(a >= b for a, b in zip(row, row[1:])):
                return False
        for r1, r2 in zip(self.rows, self.rows[1:]):
            if len(r2) > len(r1) or any(r1[c] >= r2[c] for c in range(len(r2))):
                return False
        return sorted(self.reading_word) == list(range(1, self.n + 1))

    def __repr__(self):
        return "/".join(",".join(map(str, r)) for r in self.rows) or "()"

    def to_json(self):
        return [list(r) for r in self.rows]


@lru_cache(maxsize=None)
def standard_tableaux(lam):
    """Std(lam), sorted by row-reading word."""
    lam = check_partition(lam)
    n = sum(lam)
    found = []

    def grow(rows, k):
        if k > n:
            found.append(StdTableau(tuple(tuple(r) for r in rows)))
            return
        for r in range(len(lam)):
            if len(rows[r]) < lam[r] and (r == 0 or len(rows[r - 1]) > len(rows[r])):
                rows[r].append(k)
                grow(rows, k + 1)
                rows[r].pop()

    grow([[] for _ in lam], 1)
    found.sort(key=lambda t: t.reading_word)
    return tuple(found)


@lru_cache(maxsize=None)
def tableau_index(lam):
    return {t: k for k, t in enumerate(standard_tableaux(lam))}


@lru_cache(maxsize=None)
def initial_tableau(lam):
    """t^lam: 1..n filled along rows."""
    lam = check_partition(lam)
    rows, k = [], 1
    for x in lam:
        rows.append(tuple(range(k, k + x)))
        k += x
    return StdTableau(tuple(rows))


@lru_cache(maxsize=None)
def coinitial_tableau(lam):
    """t_lam: 1..n filled down columns."""
    return initial_tableau(conjugate(lam)).conjugate


def all_tableaux(n):
    for lam in partitions(n):
        yield from standard_tableaux(lam)


def tableau_dominates(s, t):
    """s dominates t iff shape(s|m) dominates shape(t|m) for every m."""
    return all(dominates(s.restrict(m).shape, t.restrict(m).shape)
               for m in range(1, s.n + 1))


def pair_dominates(uv, st):
    return tableau_dominates(uv[0], st[0]) and tableau_dominates(uv[1], st[1])


# ------------------------------------------------------------------ residues

def residue_sequence(t, e):
    return tuple(c if e is None else c % e for c in t.contents)


def residue_class(i, e):
    if len(i) < 2 or i[0] != 0:
        return NEITHER
    one = 1 if e is None else 1 % e
    if i[1] == one:
        return PLUS
    if i[1] == (-1 if e is None else (-1) % e):
        return MINUS
    return NEITHER


def negate(i, e):
    return tuple(-x if e is None else (-x) % e for x in i)


def swap_residues(i, r):
    """s_r . i, with r 1-based."""
    i = list(i)
    i[r - 1], i[r] = i[r], i[r - 1]
    return tuple(i)


def hat(x, e):
    """Least nonnegative integer lift of a residue."""
    return x if e is None else x % e


def arrow(a, b, e):
    """True when a -> b in the quiver, i.e. b = a + 1."""
    return b == (a + 1 if e is None else (a + 1) % e)


def cartan(a, b, e):
    if a == b:
        return 2
    if arrow(a, b, e) or arrow(b, a, e):
        return -1
    return 0


@lru_cache(maxsize=None)
def tableaux_by_residue(n, e):
    """Map residue sequence -> tuple of standard tableaux realizing it."""
    out = {}
    for t in all_tableaux(n):
        out.setdefault(residue_sequence(t, e), []).append(t)
    return {i: tuple(ts) for i, ts in sorted(out.items())}


def realizable(n, e):
    return tuple(tableaux_by_residue(n, e))


# ------------------------------------------------------------------- degrees

def _d_count(lam, node, e, below):
    i = residue_of(node, e)
    keep = (lambda nd: nd[0] > node[0]) if below else (lambda nd: nd[0] < node[0])
    add = sum(1 for nd in addable_nodes(lam) if keep(nd) and residue_of(nd, e) == i)
    rem = sum(1 for nd in removable_nodes(lam) if keep(nd) and residue_of(nd, e) == i)
    return add - rem


@lru_cache(maxsize=None)
def degrees(t, e):
    """(deg t, codeg t) by the inductive addable/removable node count."""
    deg = codeg = 0
    for m in range(1, t.n + 1):
        lam = t.restrict(m).shape
        node = t.node(m)
        deg += _d_count(lam, node, e, below=True)
        codeg += _d_count(lam, node, e, below=False)
    return deg, codeg


def degree(t, e):
    return degrees(t, e)[0]


def codegree(t, e):
    return degrees(t, e)[1]


# -------------------------------------------------------------------- blocks

def content_vector(i, e):
    """Residue multiplicities (m_0, ..., m_{e-1})."""
    m = [0] * e
    for x in i:
        m[x % e] += 1
    return tuple(m)


def conjugate_content(alpha):
    e = len(alpha)
    return tuple(alpha[(-k) % e] for k in range(e))


def defect(alpha):
    e = len(alpha)
    return (alpha[0] - sum(m * m for m in alpha)
            + sum(alpha[k] * alpha[(k + 1) % e] for k in range(e)))


def gamma_of(alpha):
    """Canonical representative of the pair {alpha, alpha'}."""
    return tuple(sorted({tuple(alpha), conjugate_content(alpha)}))


def block_data(i, e):
    alpha = content_vector(i, e)
    alpha2 = conjugate_content(alpha)
    return alpha, alpha2, gamma_of(alpha), defect(alpha)


def partition_content(lam, e):
    return content_vector(residue_sequence(initial_tableau(lam), e), e)


def blocks(n, e):
    """Map gamma -> partitions whose residue content lies in gamma."""
    out = {}
    for lam in partitions(n):
        out.setdefault(gamma_of(partition_content(lam, e)), []).append(lam)
    return {g: tuple(v) for g, v in sorted(out.items())}


# ------------------------------------------------------------ Laurent series

class LaurentPoly:
    """Integer Laurent polynomial in q, stored as exponent -> coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {int(k): int(v) for k, v in (coeffs or {}).items() if v}

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    def __mul__(self, other):
        out = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentPoly(out)

    def __eq__(self, other):
        if isinstance(other, dict):
            other = LaurentPoly(other)
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def at(self, q):
        return sum(v * Fraction(q) ** k for k, v in self.coeffs.items())

    def to_json(self):
        return {str(k): v for k, v in sorted(self.coeffs.items())}

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, v in sorted(self.coeffs.items()):
            if k == 0:
                terms.append(str(v))
            else:
                qk = "q" if k == 1 else f"q^{k}"
                terms.append(qk if v == 1 else f"{v}*{qk}")
        return " + ".join(terms)


def monomial(k, c=1):
    return LaurentPoly({k: c})


def plus_tableaux(lam, e):
    return tuple(t for t in standard_tableaux(lam)
                 if residue_class(residue_sequence(t, e), e) == PLUS)


def graded_dim(n, e, algebra="S", gamma=None):
    """Graded dimension of the KLR algebra of S_n (or its alternating part)."""
    if algebra not in ("S", "A"):
        raise ValueError("algebra must be 'S' or 'A'")
    total = LaurentPoly()
    for lam in partitions(n):
        tabs = standard_tableaux(lam)
        firsts = tabs if algebra == "S" else plus_tableaux(lam, e)
        for s in firsts:
            if gamma is not None and gamma_of(content_vector(residue_sequence(s, e), e)) != tuple(gamma):
                continue
            for t in tabs:
                total = total + monomial(degree(s, e) + degree(t, e))
    if n == 0:
        return LaurentPoly({0: 1})
    return total


def counting_identity(n, e=3):
    """(sum_lam |Std_+(lam)| |Std(lam)|, n!/2)."""
    lhs = sum(len(plus_tableaux(lam, e)) * len(standard_tableaux(lam))
              for lam in partitions(n))
    return lhs, Fraction(factorial(n), 2)


# -------------------------------------------------------------- permutations

def perm_length(w):
    return sum(1 for a, b in combinations(w, 2) if a > b)


def perm_mul(v, w):
    """Composition v∘w of one-line permutations."""
    return tuple(v[x - 1] for x in w)


def perm_inverse(w):
    out = [0] * len(w)
    for k, x in enumerate(w, 1):
        out[x - 1] = k
    return tuple(out)


def simple(r, n):
    w = list(range(1, n + 1))
    w[r - 1], w[r] = w[r], w[r - 1]
    return tuple(w)


def word_to_perm(word, n):
    w = tuple(range(1, n + 1))
    for r in word:
        w = perm_mul(w, simple(r, n))
    return w


@lru_cache(maxsize=None)
def reduced_word(w):
    """Lexicographically least reduced word for w = s_{r1}...s_{rk}."""
    w = tuple(w)
    word = []
    while True:
        # left descents r: w^{-1}(r) > w^{-1}(r+1)
        inv = perm_inverse(w)
        for r in range(1, len(w)):
            if inv[r - 1] > inv[r]:
                word.append(r)
                w = perm_mul(simple(r, len(w)), w)
                break
        else:
            return tuple(word)


def perm_to_str(w):
    word = reduced_word(w)
    return " ".join(f"s{r}" for r in word) if word else "1"


def perm_from_str(text, n):
    text = text.strip()
    if text in ("", "1", "e"):
        return tuple(range(1, n + 1))
    return word_to_perm([int(tok[1:]) for tok in text.split()], n)


@lru_cache(maxsize=None)
def all_perms(n):
    """S_n sorted by length, then by reduced word."""
    from itertools import permutations
    ws = list(permutations(range(1, n + 1)))
    ws.sort(key=lambda w: (perm_length(w), reduced_word(w)))
    return tuple(ws)


def tableau_perm(t, ref):
    """The permutation d with t = d . ref."""
    d = [0] * t.n
    for row_t, row_r in zip(t.rows, ref.rows):
        for a, b in zip(row_t, row_r):
            d[b - 1] = a
    return tuple(d)


def perms_of(t):
    """(d(t), d'(t), reduced word of d(t), reduced word of d'(t))."""
    d = tableau_perm(t, initial_tableau(t.shape))
    dp = tableau_perm(t, coinitial_tableau(t.shape))
    return d, dp, reduced_word(d), reduced_word(dp)
