import json

import pytest

from althecke import combinat as cb
from althecke import gradedbasis as gb
from althecke.klrgen import GeneratorSet
from althecke.specialize import parse_target

T_A, T_B = cb.standard_tableaux((2, 1))
S_ROW = cb.standard_tableaux((3,))[0]


def test_y_word_examples():
    assert gb.y_word((3,), 3) == ["y3"]
    assert gb.y_word((2, 1), 3) == []
    assert gb.y_word((1, 1, 1), 3, primed=True) == ["y3"]
    with pytest.raises(ValueError):
        gb.y_word((3,), None)


def test_cellular_element_examples():
    word, ix = gb.cellular_element(T_A, T_B, 3)
    assert word == ["e(0,1,2)", "psi2"] and ix.degree == 1
    word, ix = gb.cellular_element(S_ROW, S_ROW, 3)
    assert word == ["y3", "e(0,1,2)"] and ix.degree == 2
    word, ix = gb.cellular_element(T_A, T_A, 3, primed=True)
    assert word == ["psi2", "e(0,2,1)", "psi2"]
    with pytest.raises(ValueError):
        gb.cellular_element(T_A, S_ROW, 3)


def test_sgn_sign_examples():
    assert gb.sgn_sign(T_A, T_A, 3) == 1
    assert gb.sgn_sign(S_ROW, S_ROW, 3) == -1
    for n in (3, 4):
        for lam in cb.partitions(n):
            tabs = cb.standard_tableaux(lam)
            for s in tabs:
                for t in tabs:
                    assert gb.sgn_sign(s, t, 3) == gb.sgn_sign(t, s, 3)


def test_psi_plus_n3():
    G = GeneratorSet(3, 3)
    assert len(gb.plus_pairs(3, 3)) == 3
    combo, ix = gb.Psi(T_A, T_A, 3)
    assert gb.theta(G, combo) == G.f((0, 1, 2)) + G.f((0, 2, 1)) == G.model.one()
    assert ix.z2degree == 0 and gb.Psi(T_A, T_A, 3, -1)[1].z2degree == 1


@pytest.mark.parametrize("n, e", [(3, 3), (4, 3), (4, 4)])
def test_eps_maps_plus_to_minus(n, e):
    G = GeneratorSet(n, e)
    for s, t in gb.plus_pairs(n, e):
        i = cb.residue_sequence(s, e)
        plus = gb.theta(G, gb.Psi(s, t, e, 1)[0])
        minus = gb.theta(G, gb.Psi(s, t, e, -1)[0])
        assert G.eps(1, i) * plus == minus


@pytest.mark.parametrize("n, e, want", [(2, 3, (2, 1)), (3, 3, (6, 3)), (4, 3, (24, 12)), (4, 4, (24, 12))])
def test_independence(n, e, want):
    rep = gb.independence_check(n, e)
    assert (rep["rank"], rep["rank_plus"]) == want
    assert rep["ok"]


@pytest.mark.parametrize("n, e", [(3, 3), (4, 3), (4, 4)])
def test_psi_idempotents(n, e):
    G = GeneratorSet(n, e)
    seqs = G.realizable()
    for lam in cb.partitions(n):
        tabs = cb.standard_tableaux(lam)
        for s in tabs:
            for t in tabs:
                word, _ = gb.cellular_element(s, t, e)
                h = gb.theta(G, [(1, word)])
                for i in seqs:
                    left = G.f(i) * h
                    want = h if cb.residue_sequence(s, e) == i else G.model.zero()
                    assert left == want
                    right = h * G.f(i)
                    want = h if cb.residue_sequence(t, e) == i else G.model.zero()
                    assert right == want


@pytest.mark.parametrize("n", [3, 4])
def test_sgn_image(n):
    G = GeneratorSet(n, 3)
    m = G.model
    for lam in cb.partitions(n):
        tabs = cb.standard_tableaux(lam)
        for s in tabs:
            for t in tabs:
                w1, _ = gb.cellular_element(s, t, 3)
                w2, _ = gb.cellular_element(s.conjugate, t.conjugate, 3, primed=True)
                lhs = m.hash(gb.theta(G, [(1, w1)]))
                rhs = gb.theta(G, [(gb.sgn_sign(s, t, 3), w2)])
                assert lhs == rhs


@pytest.mark.parametrize("e", [3, 4, 5])
def test_qdim_cross_check(e):
    for n in range(2, 7):
        assert gb.qdim_from_indices(gb.basis_indices(n, e, "A")) == cb.graded_dim(n, e, "A")
        assert gb.qdim_from_indices(gb.basis_indices(n, e, "S")) == cb.graded_dim(n, e, "S")


def test_block_report_examples():
    (b,) = gb.block_report(3, 3)
    assert (b["defect"], b["size"], b["classifier"]) == (1, 1, "indecomposable")
    (b,) = gb.block_report(1, 4)
    assert (b["defect"], b["size"], b["classifier"]) == (0, 1, "splits into two matrix algebras")
    (b,) = gb.block_report(2, 3)
    assert b["size"] == 2 and b["classifier"] == "indecomposable"
    assert b["gamma"] == [[1, 0, 1], [1, 1, 0]]


@pytest.mark.parametrize("text", ["F5", "F7", "Qzeta"])
def test_gram_n3(text):
    tgt = parse_target(text, 3)
    (gamma,) = cb.blocks(3, 3)
    g = gb.gram_matrix(gamma, 3, 3, tgt)
    F = tgt.field
    assert g.size == 3 and g.defect == 1
    assert g.diagonal_nonzero(F)
    assert g.dominance_violations(F) == []
    assert g.nonsingular
    # matched entries come from both halves of Ψ+, so they are ±2c with c != 0
    for r, c in enumerate(g.matched()):
        half = g.entries[r][c] / F(2)
        assert not F.is_zero(half)


def test_gram_emitters():
    tgt = parse_target("F7", 3)
    (gamma,) = cb.blocks(3, 3)
    g = gb.gram_matrix(gamma, 3, 3, tgt)
    data = g.to_json(tgt.field)
    assert data["rank"] == 3 and data["nonsingular"]
    assert json.loads(json.dumps(data)) == data
    lines = g.to_csv(tgt.field).strip().splitlines()
    assert lines[0].startswith("#") and len(lines) == 5


@pytest.mark.slow
@pytest.mark.parametrize("e, text", [(3, "F7"), (4, "F5")])
def test_gram_n4(e, text):
    tgt = parse_target(text, e)
    G = GeneratorSet(4, e)
    for gamma in cb.blocks(4, e):
        g = gb.gram_matrix(gamma, 4, e, tgt, G)
        if not g.rows:
            continue
        assert g.nonsingular
        assert g.diagonal_nonzero(tgt.field)
        assert g.dominance_violations(tgt.field) == []


def test_basis_emitters_deterministic():
    a, b = gb.basis_csv(4, 3, "A"), gb.basis_csv(4, 3, "A")
    assert a == b
    assert a.splitlines()[0] == ",".join(gb.BASIS_COLUMNS)
    assert len(a.splitlines()) == 13
    data = json.loads(gb.basis_json(3, 3, "S"))
    assert len(data["basis"]) == 6
    assert sorted(r["degree"] for r in data["basis"]) == [0, 0, 1, 1, 2, 2]


def test_exact_rank():
    from althecke.exactfield import ExtScalar
    one = ExtScalar.of(1)
    rows = [{0: one, 1: one}, {0: one}, {1: one}, {}]
    assert gb.exact_rank(rows) == 2
