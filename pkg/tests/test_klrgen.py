import pytest

from althecke import combinat as cb
from althecke.exactfield import I, ONE, inv, quantum_int, sqrt_bracket, tpow, upow
from althecke.gradedbasis import exact_rank
from althecke.klrgen import (SUITES, GeneratorSet, kappa, klr_word_image, parse_token, run_suite,
                             word_degree)
from althecke.relations import RO_TAGS
from althecke.seminormal import ALTERNATING, SignFlippedSystem

S_A = cb.StdTableau(((1, 2), (3,)))
GRID = [(3, 3), (4, 3), (4, 4), (4, 5), (5, 3), (5, 4)]


def test_kappa():
    assert kappa((0, 1, 2), 3) == tpow(-1) == upow(-2)
    assert kappa((0, 1, 2, 3), 5) == upow(1) / sqrt_bracket(3)
    assert kappa((0, 4, 3), 5) == kappa((0, 1, 2), 5)
    assert kappa((0, 1), 4) * inv(kappa((0, 1), 4)) == ONE
    with pytest.raises(ValueError):
        kappa((0, 0, 1), 3)


@pytest.mark.parametrize("n, e", [(n, e) for n in (2, 3, 4, 5) for e in (3, 4)])
def test_vanishing_generators(gens_cache, n, e):
    G = gens_cache(n, e)
    z = G.model.zero()
    assert G.psi_plus(1) == z and G.psi_minus(1) == z
    assert G.y_plus(1) == z and G.y_circ(1) == z
    assert G.y_circ(2) == z


def test_y_plus_eigenvalues(gens_cache):
    G = gens_cache(4, 3)
    m = G.model
    for s in range(1, 5):
        y = G.y_plus(s)
        for lam in m.shapes:
            for v in m.tabs[lam]:
                j = m.index[lam][v]
                c = v.content(s)
                assert y.entry(lam, j, j) == quantum_int(c - cb.hat(c, 3))


@pytest.mark.parametrize("e", [3, 4, 5])
def test_psi_circ_2_beta(gens_cache, e):
    G = gens_cache(3, e)
    m = G.model
    col = list((G.psi_circ(2) * m.E(S_A, S_A)).entries())
    u = m.index[(2, 1)][S_A.swap(2)]
    assert col == [((2, 1), u, 0, G.kappa() * (-I * sqrt_bracket(3) / upow(1)))]
    sq = G.psi_circ(2) * G.psi_circ(2) * m.E(S_A, S_A)
    want = tpow(-3) * quantum_int(3) if e == 3 else ONE
    assert sq == m.E(S_A, S_A).scale(want)


@pytest.mark.parametrize("n, e", [(n, e) for n in (3, 4, 5) for e in (3, 4)])
def test_y_order(gens_cache, n, e):
    G = gens_cache(n, e)
    m = G.model
    for i in G.realizable():
        if cb.residue_class(i, e) != cb.PLUS:
            continue
        y3 = G.y_circ(3) - m.one().scale(quantum_int(-e))
        fi = G.f(i)
        if cb.arrow(i[1], i[2], e):
            assert y3 * G.y_circ(3) * fi == m.zero()
        else:
            assert y3 * fi == m.zero()


@pytest.mark.parametrize("n, e", [(n, e) for n in (3, 4, 5) for e in (3, 4)])
def test_psi2_intertwines(gens_cache, n, e):
    G = gens_cache(n, e)
    for i in G.realizable():
        j = cb.swap_residues(i, 2)
        fj = G.f(j) if j in G.by_residue else G.model.zero()
        assert G.psi_circ(2) * G.f(i) == fj * G.psi_circ(2)


def test_eps(gens_cache):
    G = gens_cache(4, 3)
    z = G.model.zero()
    for i in G.realizable():
        e0, e1 = G.eps(0, i), G.eps(1, i)
        assert e0 * e0 == e0
        assert e1 * e1 == e0 and e0 * e1 == e1
        j = cb.negate(i, 3)
        assert e1 == -G.eps(1, j)
    # i = -i forces ε_1(i) = 0
    assert G.eps(1, (0, 0, 0, 0)) == z


def test_hash_of_minus(gens_cache):
    G = gens_cache(4, 4)
    for r in range(1, 4):
        assert G.model.hash(G.psi_minus(r)) == G.psi_plus(r)


def test_word_image():
    G = GeneratorSet(3, 3)
    assert klr_word_image(G, ["e(012)"]) == G.f((0, 1, 2))
    assert klr_word_image(G, ["psi2", "e(0,1,2)"]) == G.psi_circ(2) * G.f((0, 1, 2))
    with pytest.raises(ValueError):
        klr_word_image(G, ["psi3"])
    with pytest.raises(ValueError):
        klr_word_image(G, ["e(01)"])
    with pytest.raises(ValueError):
        parse_token("z2")


def test_quadratic_display_over_k():
    # over K the e = 3 quadratic relations carry the deformation shift
    G = GeneratorSet(3, 3)
    m = G.model
    f, g = G.f((0, 1, 2)), G.f((0, 2, 1))
    psi2 = G.psi_circ(2)
    assert psi2 * psi2 * f == (G.y_circ(2) - G.y_circ(3)) * f
    assert psi2 * psi2 * g == (G.y_circ(3) - G.y_circ(2)) * g
    assert not (G.y_circ(3) * f).is_zero()


def test_word_degree():
    assert word_degree(["e(012)"], 3) == 0
    assert word_degree(["y3", "e(012)"], 3) == 2
    assert word_degree(["e(021)", "psi2", "e(012)"], 3) == 1
    assert word_degree(["psi2", "e(0,1,3)"], 5) == 0
    assert word_degree(["psi1", "e(0,0)"], 3) == -2
    with pytest.raises(ValueError):
        word_degree(["psi2"], 3)


def _span_dim(G, max_len):
    gens = [G.psi_circ(r) for r in range(1, G.n)] + [G.y_circ(s) for s in range(1, G.n + 1)]
    gens += [G.f(i) for i in G.realizable()]
    vec = lambda h: {(lam, i, j): v for lam, i, j, v in h.entries()}
    layer = [G.model.one()]
    rows = [vec(layer[0])]
    rank = 1
    for _ in range(max_len):
        new = []
        for a in layer:
            for g in gens:
                h = a * g
                if h.is_zero():
                    continue
                r2 = exact_rank(rows + [vec(h)])
                if r2 > rank:
                    rows.append(vec(h))
                    rank = r2
                    new.append(h)
        if not new:
            break
        layer = new
    return rank


@pytest.mark.parametrize("n", [2, 3, 4])
def test_generation(n):
    G = GeneratorSet(n, 3)
    want = sum(len(cb.standard_tableaux(lam)) ** 2 for lam in cb.partitions(n))
    assert _span_dim(G, 12) == want


@pytest.mark.parametrize("n, e", GRID)
def test_hash_intertwine(gens_cache, n, e):
    rep = run_suite(gens_cache(n, e), "hash-intertwine")
    assert rep.ok and rep.passed > rep.vacuous


def test_ro_n3(gens_cache):
    for variant in ("printed", "corrected"):
        rep = run_suite(gens_cache(3, 3), "RO", variant)
        assert rep.ok
        assert rep.total > rep.vacuous


@pytest.mark.parametrize("suite", ["HM+", "HM-", "klr", "RpSn", "MainRelations"])
def test_other_suites_n3(gens_cache, suite):
    rep = run_suite(gens_cache(3, 3), suite, "corrected")
    if suite == "klr":
        # the undeformed relations only hold after specialization
        assert not rep.ok
    else:
        assert rep.ok, rep.summary()


def test_tag_filter(gens_cache):
    full = run_suite(gens_cache(4, 3), "RO")
    parts = [run_suite(gens_cache(4, 3), tag) for tag in RO_TAGS]
    assert sum(p.total for p in parts) == full.total
    assert set(RO_TAGS) <= set(SUITES)
    with pytest.raises(ValueError):
        run_suite(gens_cache(3, 3), "nope")


def test_report_json(gens_cache):
    rep = run_suite(gens_cache(4, 3), "RO", "corrected")
    data = rep.to_json()
    assert data["total"] == rep.total and data["passed"] == rep.passed
    assert len(data["failures"]) == len(rep.failures)
    for f in rep.failures:
        assert f.witness_norm > 0 and not f.witness.is_zero()


def test_drop_kappa_breaks_quadratic():
    rep = run_suite(GeneratorSet(3, 3, use_kappa=False), "RO")
    bad = rep.failures
    assert bad and all(x.tag == "quadratic" for x in bad)
    assert all(x.witness_norm > 0 for x in bad)


def test_sign_flip_breaks_suites():
    s = cb.standard_tableaux((2, 1))[0]
    G = GeneratorSet(3, 3, system=SignFlippedSystem(ALTERNATING, 2, s))
    assert run_suite(G, "RO").failures
    assert run_suite(G, "HM+").failures
