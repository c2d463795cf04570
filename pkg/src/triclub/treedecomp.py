"""Tree decompositions: validation, nice form, re-rooting and a heuristic builder."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in

from .errors import ContractError, ValidationError
from .graph import Graph

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed by node id plus undirected tree edges between node ids."""

    bags: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_lists(cls, bags: Iterable[Iterable[int]], edges: Iterable[tuple[int, int]] = ()):
        return cls(tuple(frozenset(b) for b in bags), tuple((int(a), int(b)) for a, b in edges))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


@dataclass(frozen=True)
class Validation:
    """Result of :func:`validate`; ``kind == "ok"`` when all conditions hold."""

    kind: str
    subject: object = None

    @property
    def ok(self) -> bool:
        return self.kind == "ok"

    def __bool__(self):
        return self.ok

    def __str__(self):
        return self.kind if self.subject is None else f"{self.kind}: {self.subject}"


def validate(td: TreeDecomposition, g: Graph) -> Validation:
    """Check tree shape, vertex coverage, edge coverage and bag connectivity.

    Reports the first failure: lowest uncovered vertex, lexicographically
    first uncovered edge, lowest vertex whose occurrences are disconnected.
    """
    k = len(td.bags)
    if k == 0:
        return Validation("not-a-tree", "no nodes")
    for a, b in td.edges:
        if not (0 <= a < k and 0 <= b < k) or a == b:
            return Validation("not-a-tree", f"bad edge {a}-{b}")
    if len(set(map(frozenset, td.edges))) != k - 1 or len(td.edges) != k - 1:
        return Validation("not-a-tree", f"{len(td.edges)} edges for {k} nodes")
    adj = td.neighbors()
    seen = {0}
    stack = [0]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != k:
        return Validation("not-a-tree", "disconnected")
    for bag in td.bags:
        for v in bag:
            if not 0 <= v < g.n:
                return Validation("invalid-vertex", v)
    occurs: list[list[int]] = [[] for _ in range(g.n)]
    for t, bag in enumerate(td.bags):
        for v in bag:
            occurs[v].append(t)
    for v in range(g.n):
        if not occurs[v]:
            return Validation("vertex-coverage", v)
    for u, v in g.edges():
        if not any(u in td.bags[t] for t in occurs[v]):
            return Validation("edge-coverage", (u, v))
    for v in range(g.n):
        nodes = set(occurs[v])
        reached = {occurs[v][0]}
        stack = [occurs[v][0]]
        while stack:
            for y in adj[stack.pop()]:
                if y in nodes and y not in reached:
                    reached.add(y)
                    stack.append(y)
        if reached != nodes:
            return Validation("connectivity", v)
    return Validation("ok")


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: frozenset[int]
    vertex: int | None = None
    children: tuple[int, ...] = ()


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Rooted binary decomposition with leaf/introduce/forget/join nodes.

    Children always have smaller ids than their parent, so iterating node ids
    in increasing order is a valid bottom-up schedule; the root is the last id.
    """

    nodes: tuple[NiceNode, ...]

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max(len(n.bag) for n in self.nodes) - 1

    def parents(self) -> list[int]:
        parent = [-1] * len(self.nodes)
        for t, node in enumerate(self.nodes):
            for c in node.children:
                parent[c] = t
        return parent

    def as_tree_decomposition(self) -> TreeDecomposition:
        edges = [(c, t) for t, node in enumerate(self.nodes) for c in node.children]
        return TreeDecomposition(tuple(n.bag for n in self.nodes), tuple(edges))

    def check_local_rules(self, require_empty_root: bool = True) -> None:
        """Raise :class:`ContractError` if any node breaks the nice-node rules."""
        for t, node in enumerate(self.nodes):
            kids = [self.nodes[c] for c in node.children]
            if any(c >= t for c in node.children):
                raise ContractError(f"node {t}: child ids must precede the parent")
            if node.kind == LEAF:
                ok = not kids and not node.bag
            elif node.kind == INTRODUCE:
                ok = len(kids) == 1 and node.vertex in node.bag and kids[0].bag == node.bag - {node.vertex}
            elif node.kind == FORGET:
                ok = len(kids) == 1 and node.vertex not in node.bag and kids[0].bag == node.bag | {node.vertex}
            elif node.kind == JOIN:
                ok = len(kids) == 2 and all(k.bag == node.bag for k in kids)
            else:
                ok = False
            if not ok:
                raise ContractError(f"node {t} violates the {node.kind} rule")
        if require_empty_root and self.nodes[self.root].bag:
            raise ContractError("root bag must be empty")


class _Builder:
    def __init__(self):
        self.nodes: list[NiceNode] = []

    def add(self, kind, bag, vertex=None, children=()) -> int:
        self.nodes.append(NiceNode(kind, frozenset(bag), vertex, tuple(children)))
        return len(self.nodes) - 1

    def transition(self, top: int, target: frozenset[int]) -> int:
        bag = self.nodes[top].bag
        for v in sorted(bag - target):
            bag = bag - {v}
            top = self.add(FORGET, bag, v, (top,))
        for v in sorted(target - bag):
            bag = bag | {v}
            top = self.add(INTRODUCE, bag, v, (top,))
        return top

    def leaf_chain(self, target: frozenset[int]) -> int:
        return self.transition(self.add(LEAF, ()), target)


def _build_nice(bags: list[frozenset[int]], adj: list[list[int]], root: int, top_bag: frozenset[int]) -> NiceTreeDecomposition:
    # iterative post-order so deep path decompositions do not hit the recursion limit
    parent = {root: -1}
    order = []
    stack = [root]
    while stack:
        t = stack.pop()
        order.append(t)
        for c in sorted(adj[t], reverse=True):
            if c not in parent:
                parent[c] = t
                stack.append(c)
    b = _Builder()
    tops: dict[int, int] = {}
    for t in reversed(order):
        kids = [c for c in sorted(adj[t]) if parent.get(c) == t]
        branches = [b.transition(tops.pop(c), bags[t]) for c in kids]
        if not branches:
            tops[t] = b.leaf_chain(bags[t])
            continue
        cur = branches[0]
        for other in branches[1:]:
            cur = b.add(JOIN, bags[t], None, (cur, other))
        tops[t] = cur
    b.transition(tops[root], top_bag)
    return NiceTreeDecomposition(tuple(b.nodes))


def make_nice(td: TreeDecomposition, g: Graph | None = None, root: int = 0) -> NiceTreeDecomposition:
    """Equivalent nice decomposition of the same width with an empty root bag.

    Higher-degree tree nodes become chains of binary joins.  When ``g`` is
    given the input is validated first.
    """
    if g is not None:
        report = validate(td, g)
        if not report.ok:
            raise ValidationError(report)
    return _build_nice(list(td.bags), td.neighbors(), root, frozenset())


def reroot_for_guess(ntd: NiceTreeDecomposition, p: int, keep: Iterable[int]) -> NiceTreeDecomposition:
    """Re-root at node ``p`` and shrink its bag to ``keep`` by a chain of forgets.

    The result obeys the nice-node rules except that the root bag is ``keep``.
    """
    keep = frozenset(keep)
    bag = ntd.nodes[p].bag
    if not keep <= bag:
        raise ContractError(f"keep {sorted(keep)} is not inside bag {sorted(bag)}")
    plain = ntd.as_tree_decomposition()
    return _build_nice(list(plain.bags), plain.neighbors(), p, keep)


def heuristic_decomposition(g: Graph) -> TreeDecomposition:
    """Tree decomposition from the greedy min-fill-in elimination ordering."""
    if g.n == 0:
        return TreeDecomposition((frozenset(),), ())
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    _, decomp = treewidth_min_fill_in(h)
    index = {bag: i for i, bag in enumerate(sorted(decomp.nodes, key=lambda b: (len(b), sorted(b))))}
    bags = sorted(index, key=index.get)
    edges = sorted(tuple(sorted((index[a], index[b]))) for a, b in decomp.edges)
    return TreeDecomposition(tuple(frozenset(b) for b in bags), tuple(edges))
