import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from preinforce.domination import all_minimum_p_dominating_sets, gamma_p, is_p_dominating, private_neighbors
from preinforce.exceptions import PreconditionError, SizeGuardError
from preinforce.family import (
    ConstructionTrace,
    Step,
    TraceError,
    applicable_steps,
    apply_operation,
    build_block,
    generate_member,
    initial_tree,
    join_with_edge,
    layer_partition,
    recognize,
    recognize_exhaustive,
    replay_trace,
)
from preinforce.graph_core import canonical_code, enumerate_trees, from_edge_list, path_graph, star
from preinforce.reinforcement import r_p


def code(G):
    return canonical_code(G)


def test_blocks():
    F2, A = build_block("F", 3)
    assert F2.n == 7 and len(A) == 5 and 0 in A
    assert gamma_p(F2, 3).witness == A
    Ft, B = build_block("Ft", 3, 3)
    assert Ft.n == 13 and len(B) == 9
    middles = set(Ft.adjacency[0])
    assert middles <= B and len(B - middles) == 6 and all(Ft.degree(v) == 1 for v in B - middles)
    K, L = build_block("star", 3)
    assert code(K) == code(star(3)) and L == {1, 2, 3}
    D, DA = build_block("double_star", 3)
    assert D.n == 8 and DA == {2, 3, 4, 5, 6, 7} and gamma_p(D, 3).witness == DA
    S, SA = build_block("spider", 3, 3)
    assert S.n == 7 and gamma_p(S, 3).witness == SA


@pytest.mark.parametrize("kind, p, t", [("Ft", 3, 2), ("spider", 3, 1), ("star", 3, 0), ("F", 1, None), ("nope", 3, None)])
def test_block_errors(kind, p, t):
    with pytest.raises(ValueError):
        build_block(kind, p, t)


@pytest.mark.parametrize("p, t", [(3, 3), (3, 4), (4, 4), (3, 5)])
def test_block_sets_are_unique_minimum_sets(p, t):
    for G, A in (build_block("F", p), build_block("Ft", p, t)):
        assert all_minimum_p_dominating_sets(G, p) == [A]


def test_join():
    P2 = path_graph(2)
    assert code(join_with_edge(P2, 1, P2, 0)) == code(path_graph(4))
    K12 = star(2)
    J = join_with_edge(K12, 0, K12, 0)
    assert J.n == 6 and code(J) == code(from_edge_list(6, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]))
    A, B = build_block("F", 3)[0], build_block("Ft", 3, 4)[0]
    AB = join_with_edge(A, 2, B, 5)
    assert AB.n == A.n + B.n and AB.m == A.m + B.m + 1 and AB.has_edge(2, A.n + 5)


def test_apply_operation_examples():
    T0, A0 = initial_tree(3)
    T1, A1 = apply_operation(T0, A0, 3, "O1", 1)
    assert code(T1) == code(build_block("F", 3)[0]) and len(A1) == 5
    T2, A2 = apply_operation(T0, A0, 3, "O2", 0)
    assert T2.n == 8 and code(T2) == code(build_block("double_star", 3)[0]) and len(A2) == 6
    with pytest.raises(TraceError, match="needs y in A"):
        apply_operation(T0, A0, 3, "O1", 0)
    with pytest.raises(TraceError, match="outside A"):
        apply_operation(T0, A0, 3, "O2", 1)
    with pytest.raises(TraceError, match="t >= p"):
        apply_operation(T0, A0, 3, "O4", 0, 2)
    with pytest.raises(TraceError, match="PN_p"):
        apply_operation(T0, A0, 3, "O3", 1)
    with pytest.raises(PreconditionError):
        apply_operation(star(2), {1, 2}, 2, "O1", 1)


def test_o3_condition():
    # vertex 1 is the centre of this F_2: two private neighbours, no neighbour in A
    T, A = replay_trace(ConstructionTrace(3, (Step("O1", 1),)))
    assert len(private_neighbors(T, 3, A, 1)) == 2
    T3, A3 = apply_operation(T, A, 3, "O3", 1)
    assert T3.n == T.n + 7 and gamma_p(T3, 3).witness == A3


def test_replay_examples():
    F2, A = replay_trace(ConstructionTrace(3, (Step("O1", 1),)))
    assert A == gamma_p(F2, 3).witness
    D, B = replay_trace(ConstructionTrace(3, (Step("O2", 0),)))
    assert D.n == 8 and len(B) == 6 and all(D.degree(v) == 1 for v in B)
    with pytest.raises(TraceError):
        replay_trace(ConstructionTrace(3, ()))


def test_replay_reports_failing_step():
    trace = ConstructionTrace(3, (Step("O1", 1), Step("O2", 1)))
    with pytest.raises(TraceError) as info:
        replay_trace(trace)
    assert info.value.step == 1 and "step 1" in str(info.value)


def test_trace_json_round_trip():
    trace = ConstructionTrace(3, (Step("O1", 1), Step("O4", 0, 3)))
    text = trace.to_json()
    assert json.loads(text) == {"p": 3, "ops": [{"op": "O1", "y": 1, "t": None}, {"op": "O4", "y": 0, "t": 3}]}
    assert ConstructionTrace.from_json(text) == trace


def one_step_codes(p, t_max):
    T0, A0 = initial_tree(p)
    return {code(apply_operation(T0, A0, p, s.op, s.y, s.t)[0]) for s in applicable_steps(T0, A0, p, t_max)}


def test_one_step_members():
    allowed = one_step_codes(3, 5)
    assert code(build_block("F", 3)[0]) in allowed
    assert code(build_block("double_star", 3)[0]) in allowed
    for seed in range(40):
        G, trace = generate_member(3, 1, seed)
        assert code(G) in allowed and len(trace.steps) == 1


def test_generate_member_deterministic():
    a = generate_member(3, 4, 17)
    b = generate_member(3, 4, 17)
    assert a[0] == b[0] and a[1] == b[1]
    assert code(replay_trace(a[1])[0]) == code(a[0])
    with pytest.raises(ValueError):
        generate_member(3, 0, 1)
    with pytest.raises(PreconditionError):
        generate_member(2, 1, 1)


@given(st.integers(1, 4), st.integers(0, 10**6), st.sampled_from([3, 4]))
def test_members_have_unique_set_and_extremal_value(ops, seed, p):
    G, trace = generate_member(p, ops, seed)
    T, A = replay_trace(trace)
    assert T == G
    assert is_p_dominating(T, p, A)
    cert = gamma_p(T, p)
    assert cert.value == len(A) and cert.unique and cert.witness == A
    assert all(private_neighbors(T, p, A, x) for x in A)
    if T.n <= 16:
        assert all_minimum_p_dominating_sets(T, p) == [A]
    assert r_p(T, p).value == p + 1


@pytest.mark.parametrize("p, t", [(3, 3), (3, 4), (4, 4)])
def test_block_reinforcement(p, t):
    assert r_p(build_block("F", p)[0], p).value == p + 1
    assert r_p(build_block("Ft", p, t)[0], p).value == p + 1


def test_recognize_examples():
    F2 = build_block("F", 3)[0]
    trace = recognize(F2, 3)
    assert trace is not None and [s.op for s in trace.steps] == ["O1"]
    assert trace.steps[0].y != 0  # attached at a leaf of K_{1,3}
    assert recognize(path_graph(7), 3) is None
    F32 = build_block("Ft", 3, 3)[0]
    trace = recognize(F32, 3)
    assert trace is not None and code(replay_trace(trace)[0]) == code(F32)
    T4, _ = replay_trace(ConstructionTrace(3, (Step("O4", 0, 3),)))
    trace = recognize(T4, 3)
    assert trace is not None and code(replay_trace(trace)[0]) == code(T4)
    assert recognize(star(3), 3) is None
    with pytest.raises(PreconditionError):
        recognize(F2, 2)


def test_recognize_exhaustive_examples():
    assert recognize_exhaustive(star(3), 3) is None
    assert recognize_exhaustive(build_block("F", 3)[0], 3) is not None
    with pytest.raises(SizeGuardError):
        recognize_exhaustive(path_graph(25), 3)


def test_recognizers_agree_up_to_11():
    for n in range(1, 12):
        for T in enumerate_trees(n):
            assert (recognize(T, 3) is None) == (recognize_exhaustive(T, 3) is None)


@given(st.integers(1, 6), st.integers(0, 10**6))
def test_round_trip_through_recognition(ops, seed):
    G, _ = generate_member(3, ops, seed)
    trace = recognize(G, 3)
    assert trace is not None
    assert code(replay_trace(trace)[0]) == code(G)
    if G.n <= 20:
        ref = recognize_exhaustive(G, 3)
        assert ref is not None and code(replay_trace(ref)[0]) == code(G)


def test_layer_partition():
    T = build_block("F", 3)[0]
    root = 2  # a leaf
    parts = layer_partition(T, root)
    d = max(parts.layer)
    assert parts.members(d) == [root]
    assert set(parts.members(0)) == set(T.leaves()) - {root}
