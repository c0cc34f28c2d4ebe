from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from althecke import combinat as cb
from althecke.exactfield import I, ONE, ZERO, inv, quantum_int, sqrt_bracket, tpow, upow
from althecke.seminormal import (ALTERNATING, HashConjugateSystem, RatioSystem, SeminormalModel,
                                 SignFlippedSystem, alternating_alpha, build_rep, gamma_scalars,
                                 validate_coeff_system)

t = tpow(1)
T_A = cb.StdTableau(((1, 2), (3,)))


@pytest.fixture(scope="module")
def models():
    cache = {}

    def get(n, e=3):
        if (n, e) not in cache:
            cache[n, e] = SeminormalModel(n, e)
        return cache[n, e]
    return get


def test_alternating_alpha_example():
    a = alternating_alpha(2, T_A)
    assert a == I * upow(1) * sqrt_bracket(3) / quantum_int(2)
    assert alternating_alpha(1, T_A) == ZERO
    b = alternating_alpha(2, T_A.swap(2))
    # α_2(t)^2 = -α_2(s_2 t) α_2(t) = -t[3]/[2]^2
    assert a * a == -t * quantum_int(3) / (quantum_int(2) * quantum_int(2))
    assert a * b == -(a * a)


@pytest.mark.parametrize("n", range(1, 6))
def test_alternating_system_valid(n):
    assert validate_coeff_system(ALTERNATING, n) == []


def test_other_systems():
    assert validate_coeff_system(HashConjugateSystem(ALTERNATING), 4) == []
    assert validate_coeff_system(RatioSystem(), 4) == []


def test_sign_flip_detected():
    s = cb.standard_tableaux((2, 1))[0]
    fails = validate_coeff_system(SignFlippedSystem(ALTERNATING, 2, s), 3)
    assert {f[0] for f in fails} >= {"d"}
    assert all(f[3] in (s, s.swap(2), s.conjugate) for f in fails)


def test_n2_blocks(models):
    T1 = build_rep(2)[1]
    assert T1.blocks[(2,)] == {0: {0: t}}
    assert T1.blocks[(1, 1)] == {0: {0: -ONE}}


@pytest.mark.parametrize("n, e", [(n, e) for n in range(2, 6) for e in (3, 4, 5)])
def test_hecke_relations(models, n, e):
    m = models(n, e)
    one = m.one()
    for r in range(1, n):
        Tr = m.T(r)
        assert (Tr - one.scale(t)) * (Tr + one) == m.zero()
        if r + 1 < n:
            Ts = m.T(r + 1)
            assert Tr * Ts * Tr == Ts * Tr * Ts
        for k in range(r + 2, n):
            assert Tr * m.T(k) == m.T(k) * Tr


@pytest.mark.parametrize("n", range(1, 9))
def test_artin_wedderburn(n):
    assert sum(len(cb.standard_tableaux(lam)) ** 2 for lam in cb.partitions(n)) == factorial(n)


def test_jm_examples(models):
    m = models(3)
    assert m.jm(1) == m.zero()
    L3 = m.jm(3)
    j = m.index[(2, 1)][T_A]
    assert L3.entry((2, 1), j, j) == quantum_int(-1) == -tpow(-1)


def test_jm_separation(models):
    for n in range(2, 7):
        keys = [tuple(quantum_int(c) for c in s.contents) for s in cb.all_tableaux(n)]
        for a in range(len(keys)):
            for b in range(a):
                assert keys[a] != keys[b]


def test_m_elem_inverse(models):
    m = models(4)
    for i in cb.realizable(4, 3):
        for r in range(1, 4):
            if i[r - 1] == (i[r] + 1) % 3:
                with pytest.raises(ValueError):
                    m.inv_m_on(r, i)
                continue
            assert m.m_elem(r) * m.inv_m_on(r, i) == m.residue_idempotent(i)


def test_residue_idempotents(models):
    m = models(3)
    f = m.residue_idempotent((0, 1, 2))
    picked = {(lam, i) for lam, i, j, v in f.entries()}
    assert picked == {((3,), 0), ((2, 1), 0)}
    assert m.residue_idempotent((0, 0, 0)).is_zero()
    m4 = models(4)
    seqs = cb.realizable(4, 3)
    total = m4.zero()
    for i in seqs:
        fi = m4.residue_idempotent(i)
        total = total + fi
        for j in seqs:
            want = fi if i == j else m4.zero()
            assert fi * m4.residue_idempotent(j) == want
    assert total == m4.one()


@pytest.mark.parametrize("n", [3, 4])
def test_seminormal_product_law(models, n):
    m = models(n)
    for lam in cb.partitions(n):
        tabs = cb.standard_tableaux(lam)
        g = m.gamma(lam)
        for s in tabs:
            for t_ in tabs:
                for u in tabs:
                    for v in tabs:
                        want = m.f(s, v).scale(g[t_]) if t_ == u else m.zero()
                        assert m.f(s, t_) * m.f(u, v) == want


def test_gamma_scalars():
    g = gamma_scalars((2, 1))
    s, u = cb.standard_tableaux((2, 1))
    assert g[s] == ONE
    assert g[u] / g[s] == alternating_alpha(2, u) / alternating_alpha(2, s)
    for n in range(2, 6):
        m = SeminormalModel(n)
        for lam in m.shapes:
            assert all(not x.is_zero() for x in m.gamma(lam).values())


def test_star(models):
    m = models(4)
    for r in range(1, 4):
        assert m.star(m.T(r)) == m.T(r)
    s, u = cb.standard_tableaux((2, 1))
    m3 = models(3)
    assert m3.star(m3.f(s, u)) == m3.f(u, s)


@pytest.mark.parametrize("n, e", [(n, e) for n in range(2, 6) for e in (3, 4, 5)])
def test_hash_generators(models, n, e):
    m = models(n, e)
    for r in range(1, n):
        assert m.hash(m.T(r)) == -m.T(r) + m.one().scale(t - ONE)
    for i in cb.realizable(n, e):
        assert m.hash(m.residue_idempotent(i)) == m.residue_idempotent(cb.negate(i, e))


def test_hash_jm_eigenvalues(models):
    m = models(4)
    for k in range(1, 5):
        h = m.hash(m.jm(k))
        for lam in m.shapes:
            for s in m.tabs[lam]:
                j = m.index[lam][s]
                assert h.entry(lam, j, j) == quantum_int(s.conjugate.content(k))


def test_hashed_basis_is_seminormal(models):
    # g_st = (f_{s't'})^# carries the system {-α_r(s')}
    m = models(4)
    hs = HashConjugateSystem(ALTERNATING)

    def g(s, u):
        return m.hash(m.f(s.conjugate, u.conjugate))
    for lam in m.shapes:
        tabs = m.tabs[lam]
        for s in tabs:
            for u in tabs[:2]:
                for r in range(1, 4):
                    v = s.swap(r)
                    want = g(s, u).scale(-inv(quantum_int(s.rho(r))))
                    if v is not None:
                        want = want + g(v, u).scale(hs.alpha(r, s))
                    assert m.T(r) * g(s, u) == want


def test_tw_basis(models):
    m = models(4)
    assert m.to_tw(m.one()).coeffs == {(1, 2, 3, 4): ONE}
    for w in cb.all_perms(4):
        want = ONE if w == (1, 2, 3, 4) else ZERO
        assert m.tau(m.T_w(w)) == want


def _element(m, coeffs):
    return m.from_tw(m.tw_element(dict(zip(cb.all_perms(m.n), coeffs))))


coeff_lists = st.lists(st.integers(-2, 2), min_size=24, max_size=24)


@settings(max_examples=30, deadline=None)
@given(coeff_lists, coeff_lists)
def test_trace_symmetric(a, b):
    m = SeminormalModel(4)
    x, y = _element(m, a), _element(m, b)
    assert m.tau(x * y) == m.tau(y * x)


@settings(max_examples=30, deadline=None)
@given(coeff_lists, coeff_lists)
def test_involutions(a, b):
    m = SeminormalModel(4)
    x, y = _element(m, a), _element(m, b)
    assert m.hash(m.hash(x)) == x
    assert m.star(m.star(x)) == x
    assert m.hash(m.star(x)) == m.star(m.hash(x))
    assert m.star(x * y) == m.star(y) * m.star(x)
    assert m.hash(x * y) == m.hash(x) * m.hash(y)


@settings(max_examples=30, deadline=None)
@given(coeff_lists)
def test_tw_roundtrip(a):
    m = SeminormalModel(4)
    x = _element(m, a)
    assert m.from_tw(m.to_tw(x)) == x


@settings(max_examples=20, deadline=None)
@given(coeff_lists)
def test_block_idempotent_central(a):
    m = SeminormalModel(4)
    x = _element(m, a)
    for gamma in cb.blocks(4, 3):
        fg = m.f_gamma(gamma)
        assert fg * x == x * fg


def test_bimodule_eigenspaces(models):
    # E_st is pinned down by left/right JM eigenvalues
    m = models(4)
    tabs = cb.all_tableaux(4)
    for s in tabs:
        for u in tabs:
            if s.shape != u.shape:
                continue
            E = m.E(s, u)
            for k in range(1, 5):
                assert m.jm(k) * E == E.scale(quantum_int(s.content(k)))
                assert E * m.jm(k) == E.scale(quantum_int(u.content(k)))


def test_tw_cache(tmp_path):
    m = SeminormalModel(3, 3, cache_dir=str(tmp_path))
    mats = m.tw_matrices()
    assert list(tmp_path.iterdir())
    again = SeminormalModel(3, 3, cache_dir=str(tmp_path)).tw_matrices()
    assert again == mats
