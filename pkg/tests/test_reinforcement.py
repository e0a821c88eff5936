import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from preinforce.domination import gamma_p
from preinforce.exceptions import BudgetExhausted, PreconditionError, SizeGuardError
from preinforce.family import build_block
from preinforce.graph_core import enumerate_trees, from_edge_list, path_graph, random_tree, star
from preinforce.reinforcement import r_p, r_p_by_definition, r_p_by_eta, witness_edges_from_eta
from preinforce.verifier import figure1_tree
from strategies import connected_graphs

P4 = path_graph(4)


def check_witness(G, res):
    if res.value == 0:
        assert res.witness_edges == ()
        return
    assert len(res.witness_edges) == res.value
    assert all(not G.has_edge(u, v) for u, v in res.witness_edges)
    assert gamma_p(G.add_edges(res.witness_edges), res.p).value < res.gamma


def test_definition_examples():
    res = r_p_by_definition(P4, 2)
    assert res.value == 1 and res.method == "definition"
    check_witness(P4, res)
    assert gamma_p(P4.add_edges([(0, 3)]), 2).value == 2
    conv = r_p_by_definition(star(3), 3)
    assert conv.value == 0 and conv.method == "convention"
    assert r_p_by_definition(star(3), 2).value == 2


def test_definition_guards():
    with pytest.raises(SizeGuardError):
        r_p_by_definition(path_graph(12), 2)
    with pytest.raises(BudgetExhausted):
        r_p_by_definition(star(3), 2, budget=1)
    with pytest.raises(ValueError):
        r_p_by_definition(P4, 2, budget=-1)


def test_eta_examples():
    F2 = build_block("F", 3)[0]
    res = r_p_by_eta(F2, 3)
    assert res.value == 4 and res.witness_verified
    check_witness(F2, res)
    assert r_p_by_eta(path_graph(7), 3).value == 1
    with pytest.raises(PreconditionError):
        r_p_by_eta(star(3), 3)


def test_dispatcher_examples():
    assert r_p(from_edge_list(1, []), 4).value == 0
    F3 = build_block("F", 4)[0]
    assert F3.n == 9 and r_p(F3, 4).value == 5
    double = build_block("double_star", 3)[0]
    assert double.n == 8 and r_p(double, 3).value == 4
    assert r_p(P4, 2, method="definition").value == 1
    with pytest.raises(ValueError):
        r_p(P4, 2, method="bogus")


def test_figure1_tree_value():
    # the tree in the fixture has r_2 = 2: an explicit pair of edges lowers gamma_2
    T = figure1_tree()
    res = r_p(T, 2)
    assert res.value == 2 and res.gamma == 17 and res.witness_verified
    H = T.add_edges(res.witness_edges)
    assert gamma_p(H, 2, method="exhaustive", guard=24).value == 16


@given(connected_graphs(2, 7, 3), st.integers(1, 3))
def test_definition_matches_brute_force(G, p):
    a = oracles.adjacency(G.n, G.edges)
    want = oracles.reinforcement(a, p, limit=4)
    try:
        got = r_p_by_definition(G, p, budget=4)
    except BudgetExhausted:
        assert want is None
        return
    assert got.value == want
    check_witness(G, got)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_routes_agree_on_small_trees(p):
    for n in range(1, 10):
        for T in enumerate_trees(n):
            a = r_p_by_definition(T, p, budget=0)
            b = r_p(T, p)
            assert a.value == b.value
            check_witness(T, a)
            check_witness(T, b)


@given(connected_graphs(4, 8, 3), st.integers(1, 3))
def test_routes_agree_on_graphs(G, p):
    if gamma_p(G, p).value <= p:
        assert r_p(G, p).method == "convention"
        return
    assert r_p_by_definition(G, p, budget=0).value == r_p_by_eta(G, p).value


@given(st.integers(2, 40), st.integers(0, 10**6), st.sampled_from([2, 3, 4]))
def test_trees_never_exceed_p_plus_one(n, seed, p):
    assert r_p(random_tree(n, seed), p).value <= p + 1


def test_witness_construction_covers_deficits():
    B = witness_edges_from_eta(P4, 2, frozenset({0, 2}))
    assert B == ((0, 3),)
