import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import candidate_table, max_club_nx, subtree_vertices
from triclub import (
    ContractError,
    Graph,
    ProblemInstance,
    StateLimitExceeded,
    TreeDecomposition,
    ValidationError,
    heuristic_decomposition,
    make_nice,
    verify_solution,
)
from triclub.dp import (
    BOTTOM,
    DpContext,
    DpTuple,
    compute_table,
    edges_in_neighborhood,
    forget_compatible,
    introduce_compatible,
    join_compatible,
    pair_triangle_count,
    solve_treewidth,
)
from triclub.oracle import max_club_bruteforce
from triclub.testkit import bowtie, complete, cycle, diamond, gen_bounded_treewidth, path, star
from triclub.treedecomp import FORGET, INTRODUCE, JOIN, LEAF


def T(f, fam=()):
    return DpTuple(frozenset(f), f, frozenset(frozenset(b) for b in fam))


def test_pair_triangle_count():
    assert pair_triangle_count(complete(3), {0, 1, 2}, 0, 1) == 1
    assert pair_triangle_count(complete(4), range(4), 2, 3) == 2
    assert pair_triangle_count(path(3), {0, 1, 2}, 0, 2) == 0
    with pytest.raises(ContractError):
        pair_triangle_count(complete(3), {0, 1}, 0, 2)


def test_edges_in_neighborhood():
    assert edges_in_neighborhood(complete(4), range(4), 1) == 3
    assert edges_in_neighborhood(star(4), range(5), 0) == 0
    # N(0) = {1, 2, 3} spans edges 12 and 13; equals the triangle count of 0
    assert edges_in_neighborhood(diamond(), range(4), 0) == 2
    assert edges_in_neighborhood(diamond(), range(4), 2) == 1
    with pytest.raises(ContractError):
        edges_in_neighborhood(diamond(), {1, 2}, 0)


def test_dptuple_encoding():
    a = T({2: 1, 0: 0}, [{0}, {0, 2}])
    b = DpTuple.from_key(a.key())
    assert a == b and hash(a) == hash(b)
    assert a.key() == (0b101, (0, 1), frozenset({0b1, 0b101}))
    with pytest.raises(ContractError):
        DpTuple(frozenset({0}), {0: 0}, frozenset({frozenset({1})}))


def test_introduce_examples():
    k3 = complete(3)
    ctx = DpContext(k3, 1)
    assert introduce_compatible(T({0: 0}), T({}), 0, DpContext(k3, 2))
    # {2} does not meet N(0) = {1}
    g = Graph(3, [(0, 1)])
    bad = introduce_compatible(T({0: 0, 2: 0}, [{2}]), T({2: 0}, [{2}]), 0, DpContext(g, 1))
    assert not bad
    assert introduce_compatible(T({0: 1, 1: 1, 2: 1}), T({0: 0, 1: 0}), 2, ctx)
    assert not introduce_compatible(T({0: 0, 1: 1, 2: 1}), T({0: 0, 1: 0}), 2, ctx)


def test_forget_examples():
    edge = Graph(2, [(0, 1)])
    ctx = DpContext(edge, 1)
    child = T({0: 1, 1: 1})
    assert forget_compatible(T({0: 1}, [{0}]), child, 1, ctx)
    assert not forget_compatible(T({0: 1}, [{0}]), T({0: 1, 1: 0}), 1, DpContext(edge, 1))
    assert not forget_compatible(T({0: 1}), child, 1, ctx)
    # the family must be exactly the pushed-forward one
    assert not forget_compatible(T({0: 1}, [{0}, set()]), child, 1, ctx)


def test_forget_distance_condition():
    p3 = path(3)
    ctx = DpContext(p3, 1)
    # forgetting 0 while 2 stays: 0 and 2 meet only through 1, which is not in A'
    child = T({0: 1, 2: 1})
    assert not forget_compatible(T({2: 1}, [set()]), child, 0, ctx)
    # a forgotten common neighbour recorded in the family rescues the pair
    child = T({0: 1, 2: 1}, [{0, 2}])
    assert forget_compatible(T({2: 1}, [{2}, set()]), child, 0, ctx)


def test_join_examples():
    k3 = complete(3)
    ctx = DpContext(k3, 3)
    base = T({0: 1, 1: 1, 2: 1})
    assert join_compatible(base, base, base, ctx)
    left = T({0: 1, 1: 1, 2: 1}, [{0}])
    right = T({0: 1, 1: 1, 2: 1}, [{1}])
    both = T({0: 1, 1: 1, 2: 1}, [{0}, {1}])
    assert not join_compatible(both, left, right, ctx)
    left = T({0: 1, 1: 1, 2: 1}, [{0, 1}])
    right = T({0: 1, 1: 1, 2: 1}, [{1, 2}])
    both = T({0: 1, 1: 1, 2: 1}, [{0, 1}, {1, 2}])
    assert join_compatible(both, left, right, ctx)


def test_join_counts_never_go_negative():
    # f1 capped below the pure-A count cannot happen, but a capped side must stay capped
    k4 = complete(4)
    ctx = DpContext(k4, 2)
    capped = T({0: 2, 1: 2, 2: 2, 3: 2})
    assert join_compatible(capped, capped, capped, ctx)


def test_compute_table_examples():
    k3 = complete(3)
    ntd = make_nice(TreeDecomposition.from_lists([[0, 1, 2]]), k3)
    table = compute_table(ntd, k3, 1)
    assert table.states(0) == {T({}): 0}
    assert table.value(0, T({}, [set()])) is BOTTOM
    assert table.value(3, T({0: 1, 1: 1, 2: 1})) == 3


def test_no_forget_in_triangle_free_graph():
    c4 = cycle(4)
    td = TreeDecomposition.from_lists([[0, 1, 2], [0, 2, 3]], [(0, 1)])
    ntd = make_nice(td, c4)
    table = compute_table(ntd, c4, 1)
    for t, node in enumerate(ntd.nodes):
        if node.kind == FORGET:
            assert all(node.vertex not in state.A for state in table.states(node.children[0])
                       if table.entries[t].get(state.key()) is not None)
            assert all(len(s.fam) == 0 for s in table.states(t))


def test_solve_examples():
    k3 = complete(3)
    assert solve_treewidth(k3, TreeDecomposition.from_lists([[0, 1, 2]]), 1, 3).best_size == 3
    c5 = cycle(5)
    assert solve_treewidth(c5, heuristic_decomposition(c5), 1).best_size == 0
    bt = bowtie()
    td = TreeDecomposition.from_lists([[0, 1, 2], [2, 3, 4]], [(0, 1)])
    res = solve_treewidth(bt, td, 1, 5)
    assert res.best_size == 5 and res.witness == frozenset(range(5))


def test_solve_rejects_invalid_td():
    with pytest.raises(ValidationError):
        solve_treewidth(complete(3), TreeDecomposition.from_lists([[0, 1], [2]], [(0, 1)]), 1)


def test_degeneracy_cutoff():
    k4 = complete(4)
    # r = 4 exceeds C(3, 2); peeling already empties the graph
    res = solve_treewidth(k4, TreeDecomposition.from_lists([range(4)]), 4)
    assert res.best_size == 0 and res.guesses == 0


def test_state_cap():
    g = complete(5)
    with pytest.raises(StateLimitExceeded):
        solve_treewidth(g, TreeDecomposition.from_lists([range(5)]), 1, max_states=3)


def _check_back_pointers(table, ctx):
    for t, node in enumerate(table.nodes):
        for key, (val, back) in table.entries[t].items():
            parent = DpTuple.from_key(key)
            assert val >= len(parent.A)
            assert all(0 <= x <= ctx.r for x in parent.f.values())
            if node.kind == INTRODUCE:
                child = DpTuple.from_key(back)
                if node.vertex in parent.A:
                    assert introduce_compatible(parent, child, node.vertex, ctx)
                    assert val == table.entries[node.children[0]][back][0] + 1
                else:
                    assert child == parent
            elif node.kind == FORGET:
                child = DpTuple.from_key(back)
                if node.vertex in child.A:
                    assert forget_compatible(parent, child, node.vertex, ctx)
                else:
                    assert child == parent
            elif node.kind == JOIN:
                left, right = (DpTuple.from_key(k) for k in back)
                assert join_compatible(parent, left, right, ctx)
            else:
                assert node.kind == LEAF and val == 0


@given(st.integers(3, 8), st.integers(1, 3), st.sampled_from([0.6, 0.8, 1.0]), st.integers(1, 3), st.integers(0, 10**6))
def test_transitions_satisfy_compatibility(n, w, keep, r, seed):
    inst = gen_bounded_treewidth(max(n, w + 1), w, keep, seed)
    ntd = make_nice(inst.decomposition, inst.graph)
    table = compute_table(ntd, inst.graph, r)
    _check_back_pointers(table, DpContext(inst.graph, r))


@given(st.integers(3, 7), st.integers(1, 2), st.sampled_from([0.6, 0.8, 1.0]), st.integers(1, 2), st.integers(0, 10**6))
def test_table_equals_candidate_enumeration(n, w, keep, r, seed):
    inst = gen_bounded_treewidth(max(n, w + 1), w, keep, seed)
    ntd = make_nice(inst.decomposition, inst.graph)
    table = compute_table(ntd, inst.graph, r)
    verts = subtree_vertices(ntd)
    for t, node in enumerate(ntd.nodes):
        got = {k: v for k, (v, _) in table.entries[t].items()}
        assert got == candidate_table(inst.graph, node.bag, verts[t], r)


@given(st.integers(2, 10), st.integers(1, 3), st.sampled_from([0.6, 0.8, 1.0]), st.integers(1, 3), st.integers(0, 10**6))
def test_matches_oracle(n, w, keep, r, seed):
    inst = gen_bounded_treewidth(max(n, w + 1), w, keep, seed)
    res = solve_treewidth(inst.graph, inst.decomposition, r)
    assert res.best_size == max_club_bruteforce(inst.graph, r).best_size
    if res.best_size:
        assert verify_solution(ProblemInstance(inst.graph, r, 2, res.best_size), res.witness).ok


def test_matches_networkx_reference_small():
    for seed in range(30):
        inst = gen_bounded_treewidth(7, 2, 0.8, seed)
        for r in (1, 2):
            assert solve_treewidth(inst.graph, inst.decomposition, r).best_size == max_club_nx(inst.graph, r, 2)


def test_witness_is_deterministic():
    inst = gen_bounded_treewidth(9, 3, 0.8, 11)
    first = solve_treewidth(inst.graph, inst.decomposition, 1)
    assert solve_treewidth(inst.graph, inst.decomposition, 1).witness == first.witness
