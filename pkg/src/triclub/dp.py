"""Dynamic program over a nice tree decomposition for vertex r-triangle 2-clubs.

A table entry at node ``t`` is keyed by a state ``(A, f, family)``:

* ``A`` is the part of the bag inside the partial solution,
* ``f`` maps each vertex of ``A`` to its triangle count in the partial
  solution, capped at ``r``,
* ``family`` holds, for every already-forgotten solution vertex ``x``, the
  set ``N(x) & A``.

Its value is the size of the largest partial solution inducing that state in
which every forgotten vertex is within distance two of every other vertex
and lies in at least ``r`` triangles.  Missing keys are infeasible states.

Encoded keys are ``(A bitmask, f values in increasing vertex order,
frozenset of family bitmasks)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

from .errors import ContractError, StateLimitExceeded, ValidationError
from .graph import Graph, bits, induced_subgraph, mask_of, peel_low_triangle_vertices
from .treedecomp import (
    FORGET,
    INTRODUCE,
    JOIN,
    LEAF,
    NiceNode,
    NiceTreeDecomposition,
    TreeDecomposition,
    make_nice,
    reroot_for_guess,
    validate,
)

Key = tuple[int, tuple[int, ...], frozenset[int]]
BOTTOM = None


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class DpTuple:
    """Readable form of a DP state; see the module docstring."""

    A: frozenset[int]
    f: Mapping[int, int]
    fam: frozenset[frozenset[int]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "A", frozenset(self.A))
        object.__setattr__(self, "f", dict(self.f))
        object.__setattr__(self, "fam", frozenset(frozenset(b) for b in self.fam))
        if set(self.f) != set(self.A):
            raise ContractError("f must be defined exactly on A")
        if any(not b <= self.A for b in self.fam):
            raise ContractError("family members must be subsets of A")

    def key(self) -> Key:
        return (
            mask_of(self.A),
            tuple(self.f[v] for v in sorted(self.A)),
            frozenset(mask_of(b) for b in self.fam),
        )

    @classmethod
    def from_key(cls, key: Key) -> "DpTuple":
        a, fv, fam = key
        verts = list(bits(a))
        return cls(frozenset(verts), dict(zip(verts, fv)), frozenset(frozenset(bits(b)) for b in fam))

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        if not isinstance(other, DpTuple):
            return NotImplemented
        return self.key() == other.key()


@dataclass(frozen=True)
class DpContext:
    graph: Graph
    r: int


def _check_in(a: Iterable[int], *vs: int) -> int:
    mask = mask_of(a)
    for v in vs:
        if not mask >> v & 1:
            raise ContractError(f"vertex {v} is not in the given set")
    return mask


def pair_triangle_count(g: Graph, a: Iterable[int], u: int, v: int) -> int:
    """Triangles of ``G[a]`` containing both ``u`` and ``v``."""
    am = _check_in(a, u, v)
    if not g.masks[u] >> v & 1:
        return 0
    return _popcount(g.masks[u] & g.masks[v] & am)


r_A = pair_triangle_count


def edges_in_neighborhood(g: Graph, a: Iterable[int], v: int) -> int:
    """Edges of ``G[a]`` with both ends in ``N(v)``; the uncapped triangle count at ``v``."""
    am = _check_in(a, v)
    nv = g.masks[v] & am
    return sum(_popcount(g.masks[x] & nv) for x in bits(nv)) // 2


def introduce_compatible(parent: DpTuple, child: DpTuple, v: int, ctx: DpContext) -> bool:
    g, r = ctx.graph, ctx.r
    if v not in parent.A or child.A != parent.A - {v}:
        return False
    for u in child.A:
        if parent.f[u] != min(r, child.f[u] + pair_triangle_count(g, parent.A, u, v)):
            return False
    if parent.f[v] != min(r, edges_in_neighborhood(g, parent.A, v)):
        return False
    if parent.fam != child.fam:
        return False
    nv = set(g.adjacency[v])
    return all(b & nv for b in child.fam)


def forget_compatible(parent: DpTuple, child: DpTuple, v: int, ctx: DpContext) -> bool:
    """Whether forgetting ``v`` from ``child`` yields ``parent``.

    On top of the per-vertex conditions (``v`` saturated, ``f`` carried over,
    every ``x`` in ``A`` within distance two of ``v``) the parent family must
    equal exactly the child family with ``v`` stripped plus ``N(v) & A``.
    """
    g, r = ctx.graph, ctx.r
    a = parent.A
    if v in a or child.A != a | {v}:
        return False
    if child.f[v] != r or any(child.f[u] != parent.f[u] for u in a):
        return False
    expected = {b - {v} for b in child.fam}
    expected.add(a & set(g.adjacency[v]))
    if parent.fam != expected:
        return False
    am = mask_of(child.A)
    for x in a:
        if g.masks[x] >> v & 1 or g.masks[x] & g.masks[v] & am:
            continue
        if not any(x in b and v in b for b in child.fam):
            return False
    return True


def _join_f(r: int, f1: int, f2: int, shared: int) -> int:
    # a capped side already certifies >= r triangles; shared <= f1, f2 otherwise
    if f1 == r or f2 == r:
        return r
    return min(r, f1 + f2 - shared)


def join_compatible(parent: DpTuple, left: DpTuple, right: DpTuple, ctx: DpContext) -> bool:
    """Whether combining ``left`` and ``right`` over the same ``A`` yields ``parent``.

    Forgotten vertices from different sides are never adjacent, so every
    left family set must meet every right family set.
    """
    g, r = ctx.graph, ctx.r
    a = parent.A
    if left.A != a or right.A != a:
        return False
    if parent.fam != left.fam | right.fam:
        return False
    for u in a:
        if parent.f[u] != _join_f(r, left.f[u], right.f[u], edges_in_neighborhood(g, a, u)):
            return False
    return all(p & q for p in left.fam for q in right.fam)


class DpTable:
    """Per-node maps from encoded state to ``(value, back-pointer)``."""

    def __init__(self, ntd: NiceTreeDecomposition, g: Graph, r: int, max_states: int | None = None):
        self.graph = g
        self.r = r
        self.max_states = max_states
        self.nodes: list[NiceNode] = list(ntd.nodes)
        self.entries: list[dict[Key, tuple[int, object]] | None] = [None] * len(self.nodes)
        self._shared_cache: dict[int, tuple[int, ...]] = {}

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    def value(self, node: int, state: DpTuple):
        hit = self.entries[node].get(state.key())
        return BOTTOM if hit is None else hit[0]

    def states(self, node: int) -> dict[DpTuple, int]:
        return {DpTuple.from_key(k): val for k, (val, _) in self.entries[node].items()}

    def total_states(self) -> int:
        return sum(len(e) for e in self.entries if e)

    def _store(self, out: dict, key: Key, val: int, back) -> None:
        old = out.get(key)
        if old is None or val > old[0]:
            out[key] = (val, back)

    def _finish(self, out: dict) -> dict:
        if self.max_states is not None and len(out) > self.max_states:
            raise StateLimitExceeded(f"{len(out)} states at one node exceeds {self.max_states}")
        return out

    def _leaf(self) -> dict:
        return {(0, (), frozenset()): (0, None)}

    def _introduce(self, child: dict, v: int) -> dict:
        masks, r = self.graph.masks, self.r
        nv = masks[v]
        vbit = 1 << v
        out: dict = {}
        for key, (val, _) in child.items():
            out[key] = (val, key)
            am, fv, fam = key
            if not all(b & nv for b in fam):
                continue
            new_a = am | vbit
            local = nv & am
            fmap = dict(zip(bits(am), fv))
            for u in bits(local):
                fmap[u] = min(r, fmap[u] + _popcount(masks[u] & local))
            fmap[v] = min(r, sum(_popcount(masks[x] & local) for x in bits(local)) // 2)
            new_key = (new_a, tuple(fmap[u] for u in bits(new_a)), fam)
            self._store(out, new_key, val + 1, key)
        return self._finish(out)

    def _forget(self, child: dict, v: int) -> dict:
        masks, r = self.graph.masks, self.r
        vbit = 1 << v
        nv = masks[v]
        out: dict = {}
        for key, (val, _) in child.items():
            am, fv, fam = key
            if not am & vbit:
                self._store(out, key, val, key)
                continue
            verts = list(bits(am))
            fmap = dict(zip(verts, fv))
            if fmap[v] != r:
                continue
            a = am & ~vbit
            reach = nv
            for x in bits(nv & am):
                reach |= masks[x]
            for b in fam:
                if b & vbit:
                    reach |= b
            if a & ~reach:
                continue
            new_fam = frozenset([b & ~vbit for b in fam] + [nv & a])
            new_key = (a, tuple(fmap[u] for u in verts if u != v), new_fam)
            self._store(out, new_key, val, key)
        return self._finish(out)

    def _shared(self, am: int) -> tuple[int, ...]:
        got = self._shared_cache.get(am)
        if got is None:
            masks = self.graph.masks
            got = tuple(
                sum(_popcount(masks[x] & masks[u] & am) for x in bits(masks[u] & am)) // 2
                for u in bits(am)
            )
            self._shared_cache[am] = got
        return got

    def _join(self, left: dict, right: dict, size: dict[int, int]) -> dict:
        r = self.r
        by_a: dict[int, list[tuple[Key, int]]] = {}
        for key, (val, _) in right.items():
            by_a.setdefault(key[0], []).append((key, val))
        out: dict = {}
        for k1, (v1, _) in left.items():
            am, f1, fam1 = k1
            partners = by_a.get(am)
            if not partners:
                continue
            shared = self._shared(am)
            overlap = size[am]
            for k2, v2 in partners:
                fam2 = k2[2]
                if fam1 and fam2 and not all(p & q for p in fam1 for q in fam2):
                    continue
                f = tuple(_join_f(r, a, b, s) for a, b, s in zip(f1, k2[1], shared))
                self._store(out, (am, f, fam1 | fam2), v1 + v2 - overlap, (k1, k2))
        return self._finish(out)

    def compute(self, node: int) -> dict:
        info = self.nodes[node]
        kids = [self.entries[c] for c in info.children]
        if info.kind == LEAF:
            out = self._leaf()
        elif info.kind == INTRODUCE:
            out = self._introduce(kids[0], info.vertex)
        elif info.kind == FORGET:
            out = self._forget(kids[0], info.vertex)
        elif info.kind == JOIN:
            sizes = {}
            for key in kids[0]:
                sizes.setdefault(key[0], _popcount(key[0]))
            out = self._join(kids[0], kids[1], sizes)
        else:
            raise ContractError(f"unknown node kind {info.kind}")
        self.entries[node] = out
        return out

    def add_forget(self, child: int, v: int) -> int:
        """Append a forget node above ``child`` (used for the guessed root chain)."""
        bag = self.nodes[child].bag - {v}
        self.nodes.append(NiceNode(FORGET, bag, v, (child,)))
        self.entries.append(None)
        node = len(self.nodes) - 1
        self.compute(node)
        return node

    def witness(self, node: int, key: Key) -> frozenset[int]:
        """Reconstruct a partial solution realizing ``key`` at ``node``."""
        found: set[int] = set()
        stack = [(node, key)]
        while stack:
            t, k = stack.pop()
            info = self.nodes[t]
            back = self.entries[t][k][1]
            if info.kind == LEAF:
                continue
            if info.kind == JOIN:
                stack.append((info.children[0], back[0]))
                stack.append((info.children[1], back[1]))
                continue
            if info.kind == INTRODUCE and k[0] >> info.vertex & 1:
                found.add(info.vertex)
            stack.append((info.children[0], back))
        return frozenset(found)


def compute_table(ntd: NiceTreeDecomposition, g: Graph, r: int, max_states: int | None = None) -> DpTable:
    """Evaluate every node bottom-up; children precede parents in ``ntd``."""
    table = DpTable(ntd, g, r, max_states)
    for t in range(len(table.nodes)):
        table.compute(t)
    return table


@dataclass(frozen=True)
class TreewidthResult:
    best_size: int
    witness: frozenset[int] = frozenset()
    guesses: int = 0
    states: int = 0
    stats: dict = field(default_factory=dict, compare=False)


def _root_pairs_ok(g: Graph, am: int, fam: frozenset[int]) -> bool:
    masks = g.masks
    for x, y in combinations(list(bits(am)), 2):
        if masks[x] >> y & 1 or masks[x] & masks[y] & am:
            continue
        if not any(b >> x & 1 and b >> y & 1 for b in fam):
            return False
    return True


def _maximal_bag_nodes(ntd: NiceTreeDecomposition) -> list[int]:
    first: dict[frozenset[int], int] = {}
    for t, node in enumerate(ntd.nodes):
        first.setdefault(node.bag, t)
    bags = list(first)
    return sorted(first[b] for b in bags if b and not any(b < other for other in bags))


def solve_treewidth(
    g: Graph,
    td: TreeDecomposition,
    r: int,
    ell: int = 1,
    max_states: int | None = None,
) -> TreewidthResult:
    """Maximum vertex r-triangle 2-club via the tree-decomposition DP.

    A maximum solution ``S`` has a vertex ``w`` with ``N[w] & S`` inside some
    bag.  For each maximal bag and each such candidate set the decomposition
    is re-rooted there, the table is computed and root states with every
    count saturated are read off.  ``ell`` does not influence the search.
    """
    if r < 1:
        raise ContractError("r must be at least 1")
    report = validate(td, g)
    if not report.ok:
        raise ValidationError(report)
    alive = peel_low_triangle_vertices(g, r)
    if not alive:
        return TreewidthResult(0)
    h, remap = induced_subgraph(g, alive)
    back = {new: old for old, new in remap.items()}
    td_h = TreeDecomposition(
        tuple(frozenset(remap[v] for v in bag if v in remap) for bag in td.bags), td.edges
    )
    # a vertex of minimum degree in G[S] has degree <= width, hence <= C(width, 2)
    # triangles; after fixpoint peeling this can no longer trigger, kept as a guard
    if r > comb(max(td_h.width, 0), 2):
        return TreewidthResult(0, stats={"cutoff": True})
    ntd = make_nice(td_h)

    best_size, best_witness = 0, frozenset()
    guesses = states = 0
    for p in _maximal_bag_nodes(ntd):
        bag = ntd.nodes[p].bag
        candidates: set[int] = set()
        for w in bag:
            closed = [x for x in bag if x != w and h.masks[w] >> x & 1]
            for k in range(len(closed) + 1):
                for extra in combinations(closed, k):
                    candidates.add(mask_of(extra) | 1 << w)
        rooted = reroot_for_guess(ntd, p, bag)
        table = compute_table(rooted, h, r, max_states)
        chain: dict[frozenset[int], int] = {bag: table.root}
        for am in sorted(candidates):
            keep = frozenset(bits(am))
            node, current = table.root, bag
            for v in sorted(bag - keep):
                current = current - {v}
                if current not in chain:
                    chain[current] = table.add_forget(node, v)
                node = chain[current]
            guesses += 1
            for key, (val, _) in table.entries[node].items():
                if key[0] != am or any(x != r for x in key[1]):
                    continue
                if not _root_pairs_ok(h, am, key[2]):
                    continue
                if val < best_size:
                    continue
                wit = frozenset(back[v] for v in table.witness(node, key))
                if val > best_size or sorted(wit) < sorted(best_witness):
                    best_size, best_witness = val, wit
        states += table.total_states()
    return TreewidthResult(best_size, best_witness, guesses, states)
