import pytest
from hypothesis import given, settings, strategies as st

from althecke import combinat as cb
from althecke import specialize as sp
from althecke.exactfield import I_BIT, inv, quantum_int
from althecke.fields import FieldError
from althecke.gradedbasis import cellular_element, field_rank, theta
from althecke.klrgen import GeneratorSet, run_suite


@pytest.fixture(scope="module")
def f3():
    return sp.parse_target("F3", 3)


def test_scalar_examples(f3):
    F = f3.field
    assert F.is_zero(sp.specialize_scalar(quantum_int(3), f3))
    assert sp.specialize_scalar(inv(quantum_int(2)), f3) == F(2)
    with pytest.raises(sp.SpecializationPole):
        sp.specialize_scalar(inv(quantum_int(3)), f3)


@pytest.mark.parametrize("text, e, label", [
    ("F3", 3, "F3"), ("F7", 3, "F7"), ("F5", 3, "F25"), ("fp:7", 4, "F49"), ("F3", 4, "F9"),
    ("F11", 5, "F121"), ("F7:xi=2", 3, "F7"), ("Qzeta", 3, "Q(zeta3)"), ("Q(zeta8)", 4, "Q(zeta8)"),
    ("cyclotomic", 4, "Q(zeta8)"),
])
def test_parse_target(text, e, label):
    tgt = sp.parse_target(text, e)
    assert tgt.label == label
    assert tgt.quantum_char() == e
    assert tgt.field.is_zero(tgt.u0 * tgt.u0 - tgt.xi) if not tgt.char0 else (tgt.u0 * tgt.u0 - tgt.xi).is_zero()


def test_parse_target_rejects():
    with pytest.raises(FieldError):
        sp.parse_target("rational", 3)
    with pytest.raises(FieldError):
        sp.parse_target("F7:xi=1", 3)
    with pytest.raises(ValueError):
        sp.parse_target("F6", 3)
    with pytest.raises(ValueError):
        sp.parse_target("banana", 3)
    with pytest.raises(FieldError):
        sp.parse_target("cyclotomic", 5)


@pytest.mark.parametrize("text, e", [("F3", 3), ("F7", 3), ("F5", 4), ("Qzeta", 3), ("Qzeta", 4)])
def test_hecke_relations_specialized(text, e):
    tgt = sp.parse_target(text, e)
    assert sp.check_hecke_relations(4, tgt).ok


def test_group_algebra_case(f3):
    T1 = sp.simple_element(3, f3, 1)
    assert T1 * T1 == sp.identity(3, f3)
    assert str(sp.identity(3, f3)) == "1"


def test_generic_quadratic():
    tgt = sp.parse_target("F7", 3)
    T2 = sp.simple_element(3, tgt, 2)
    one = sp.identity(3, tgt)
    assert T2 * T2 == T2.scale(tgt.xi - tgt.one()) + one.scale(tgt.xi)
    assert not (T2 * T2 == one)


def test_identity_specializes(f3):
    G = GeneratorSet(3, 3)
    assert sp.specialize_element(G.model.one(), G.model, f3) == sp.identity(3, f3)


def test_example_values(f3):
    G = GeneratorSet(3, 3)
    S = lambda h: sp.specialize_element(h, G.model, f3)
    d = G.f((0, 1, 2)) - G.f((0, 2, 1))
    assert str(S(G.f((0, 1, 2)) + G.f((0, 2, 1)))) == "1"
    assert str(S(G.y_plus(3) * d)) == "1 + s1s2 + s2s1"
    assert str(S(G.y_circ(3) * d)) == "1 + s1s2 + s2s1"
    Psi = S(G.psi_circ(2) * d)
    assert (Psi ** 3).is_zero()


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("text", ["F3", "Qzeta"])
def test_generators_integral_e3(n, text):
    G = GeneratorSet(n, 3)
    tgt = sp.parse_target(text, 3)
    m = G.model
    elems = [G.psi_circ(r) for r in range(1, n)] + [G.y_circ(s) for s in range(1, n + 1)]
    elems += [G.f(i) for i in G.realizable()]
    for h in elems:
        for c in m.to_tw(h).coeffs.values():
            # square-root-free: no √[h] and no √-1
            assert set(c.c) <= {0}
        sp.specialize_element(h, m, tgt)


def test_dimension_match(f3):
    for n in (3, 4):
        G = GeneratorSet(n, 3)
        vecs = []
        for lam in cb.partitions(n):
            tabs = cb.standard_tableaux(lam)
            for s in tabs:
                for t in tabs:
                    word, _ = cellular_element(s, t, 3)
                    h = sp.specialize_element(theta(G, [(1, word)]), G.model, f3)
                    vecs.append([h.coeff(w) for w in cb.all_perms(n)])
        assert field_rank(vecs, f3.field) == len(vecs) == len(cb.all_perms(n))


WORDS3 = ["psi2", "y3", "e(012)", "e(021)", "y2", "psi1"]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(WORDS3), max_size=4), st.lists(st.sampled_from(WORDS3), max_size=4),
       st.sampled_from(["F3", "F7", "Qzeta"]))
def test_ring_map(a, b, text):
    G = _gens(3)
    tgt = sp.parse_target(text, 3)
    x, y = G.word_image(a), G.word_image(b)
    S = lambda h: sp.specialize_element(h, G.model, tgt)
    assert S(x * y) == S(x) * S(y)
    assert S(x + y) == S(x) + S(y)


WORDS4 = ["psi2", "psi3", "y3", "y4", "e(0120)", "e(0210)", "e(0122)", "e(0211)"]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from(WORDS4), max_size=4), st.lists(st.sampled_from(WORDS4), max_size=4))
def test_ring_map_n4(a, b):
    G = _gens(4)
    tgt = sp.parse_target("F7", 3)
    x, y = G.word_image(a), G.word_image(b)
    S = lambda h: sp.specialize_element(h, G.model, tgt)
    assert S(x * y) == S(x) * S(y)


_GENS = {}


def _gens(n):
    if n not in _GENS:
        _GENS[n] = GeneratorSet(n, 3)
    return _GENS[n]


@pytest.mark.parametrize("n, e, text", [(3, 3, "F3"), (3, 3, "Qzeta"), (4, 3, "F7"), (4, 4, "F5"),
                                        (4, 4, "Q(zeta8)"), (4, 5, "F11")])
def test_verify_specialized(n, e, text):
    G = GeneratorSet(n, e)
    reps = sp.verify_specialized_klr(G, sp.parse_target(text, e))
    assert [r.suite.split("@")[0] for r in reps] == ["klr", "RpSn", "MainRelations"]
    for r in reps:
        assert r.ok, r.summary()


def test_target_mismatch():
    with pytest.raises(ValueError):
        sp.SpecBackend(GeneratorSet(3, 3), sp.parse_target("F5", 4))


@pytest.mark.parametrize("e, text", [(3, "F3"), (4, "F5")])
def test_far_commutation_witnesses_vanish(e, text):
    # the n = 4 failures over K are deformations that die at ξ
    G = GeneratorSet(4, e)
    tgt = sp.parse_target(text, e)
    rep = run_suite(G, "RO", "corrected")
    assert rep.failures
    for x in rep.failures:
        assert x.relation == "psi-y-far"
        assert sp.witness_vanishes(x.witness, G.model, tgt)


def test_root_images():
    tgt = sp.parse_target("F7", 4)
    F = tgt.field
    r3 = tgt.root(1 << 3)
    assert r3 * r3 == tgt.qint(3)
    i = tgt.root(I_BIT)
    assert i * i == F(-1)


def test_spec_element_json_like():
    tgt = sp.parse_target("F3", 3)
    x = sp.simple_element(3, tgt, 1) + sp.simple_element(3, tgt, 2).scale(2)
    assert x.nnz() == 2
    assert str(x) == "s1 + 2s2" or str(x) == "2s2 + s1"
