from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from triclub import (
    ContractError,
    TreeDecomposition,
    ValidationError,
    heuristic_decomposition,
    make_nice,
    reroot_for_guess,
    validate,
)
from triclub.testkit import complete, cycle, gen_bounded_treewidth, path
from triclub.treedecomp import FORGET, INTRODUCE, LEAF


def test_validate_examples():
    k4 = complete(4)
    single = TreeDecomposition.from_lists([range(4)])
    assert validate(single, k4).ok and single.width == 3
    p3 = TreeDecomposition.from_lists([[0, 1], [1, 2]], [(0, 1)])
    assert validate(p3, path(3)).ok and p3.width == 1
    tri = complete(3)
    report = validate(TreeDecomposition.from_lists([[0, 1], [2]], [(0, 1)]), tri)
    assert report.kind == "edge-coverage" and report.subject == (0, 2)


def test_validate_other_failures():
    g = path(3)
    assert validate(TreeDecomposition.from_lists([[0, 1]]), g).kind == "vertex-coverage"
    assert validate(TreeDecomposition.from_lists([[0, 1], [1, 2]]), g).kind == "not-a-tree"
    assert validate(TreeDecomposition.from_lists([[0, 1, 7], [1, 2]], [(0, 1)]), g).kind == "invalid-vertex"
    # vertex 0 appears in bags 0 and 2 but not in bag 1 between them
    broken = TreeDecomposition.from_lists([[0, 1], [1, 2], [0, 2]], [(0, 1), (1, 2)])
    report = validate(broken, cycle(3))
    assert report.kind == "connectivity" and report.subject == 0


def test_make_nice_single_bag():
    ntd = make_nice(TreeDecomposition.from_lists([[0, 1, 2]]), complete(3))
    kinds = [(n.kind, n.vertex) for n in ntd.nodes]
    assert kinds == [
        (LEAF, None),
        (INTRODUCE, 0),
        (INTRODUCE, 1),
        (INTRODUCE, 2),
        (FORGET, 0),
        (FORGET, 1),
        (FORGET, 2),
    ]
    ntd.check_local_rules()


def test_make_nice_rejects_invalid():
    with pytest.raises(ValidationError):
        make_nice(TreeDecomposition.from_lists([[0, 1], [2]], [(0, 1)]), complete(3))


def test_make_nice_idempotent_on_nice_input():
    g = path(3)
    once = make_nice(TreeDecomposition.from_lists([[0, 1], [1, 2]], [(0, 1)]), g)
    twice = make_nice(once.as_tree_decomposition(), g, root=once.root)
    assert validate(twice.as_tree_decomposition(), g).ok
    assert twice.width == once.width == 1
    twice.check_local_rules()


@given(st.integers(2, 12), st.integers(1, 4), st.sampled_from([0.6, 0.8, 1.0]), st.integers(0, 10**6))
def test_make_nice_preserves_validity_and_width(n, w, keep, seed):
    inst = gen_bounded_treewidth(max(n, w + 1), w, keep, seed)
    ntd = make_nice(inst.decomposition, inst.graph)
    ntd.check_local_rules()
    assert validate(ntd.as_tree_decomposition(), inst.graph).ok
    assert ntd.width == inst.decomposition.width


@given(graphs(max_n=10))
def test_heuristic_is_valid(g):
    td = heuristic_decomposition(g)
    assert validate(td, g).ok


def test_heuristic_examples():
    assert heuristic_decomposition(path(7)).width == 1
    assert heuristic_decomposition(complete(6)).width == 5
    assert heuristic_decomposition(cycle(5)).width == 2


def test_reroot_examples():
    ntd = make_nice(TreeDecomposition.from_lists([[0, 1, 2]]), complete(3))
    p = 3  # bag {0, 1, 2}
    full = reroot_for_guess(ntd, p, {0, 1, 2})
    assert full.nodes[full.root].bag == frozenset({0, 1, 2})
    assert full.nodes[full.root].kind != FORGET
    full.check_local_rules(require_empty_root=False)

    empty = reroot_for_guess(ntd, p, set())
    chain = [empty.nodes[empty.root]]
    while chain[-1].kind == FORGET and len(chain) <= 3:
        chain.append(empty.nodes[chain[-1].children[0]])
    assert [n.kind for n in chain[:3]] == [FORGET] * 3 and chain[3].bag == frozenset({0, 1, 2})

    one = reroot_for_guess(ntd, p, {0})
    top = one.nodes[one.root]
    below = one.nodes[top.children[0]]
    assert top.kind == below.kind == FORGET
    assert one.nodes[below.children[0]].bag == frozenset({0, 1, 2})
    with pytest.raises(ContractError):
        reroot_for_guess(ntd, p, {5})


@given(st.integers(3, 10), st.integers(1, 3), st.integers(0, 10**6), st.data())
def test_reroot_keeps_bags_and_rules(n, w, seed, data):
    inst = gen_bounded_treewidth(max(n, w + 1), w, 0.8, seed)
    ntd = make_nice(inst.decomposition, inst.graph)
    p = data.draw(st.integers(0, ntd.root))
    bag = sorted(ntd.nodes[p].bag)
    keep = data.draw(st.sets(st.sampled_from(bag))) if bag else set()
    out = reroot_for_guess(ntd, p, keep)
    out.check_local_rules(require_empty_root=False)
    assert out.nodes[out.root].bag == frozenset(keep)
    assert validate(out.as_tree_decomposition(), inst.graph).ok
    assert out.width == ntd.width
    # every original non-empty bag survives
    before = Counter(b.bag for b in ntd.nodes if b.bag)
    after = Counter(b.bag for b in out.nodes)
    assert all(after[b] >= 1 for b in before)
