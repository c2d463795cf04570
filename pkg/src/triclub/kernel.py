"""Linear kernel parameterized by the feedback edge number.

The reduced instance has at most ``3 * fes`` vertices and ``4 * fes - 1``
edges and is equivalent to the input for every ``(r, s, ell)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractError
from .graph import Graph, ProblemInstance, bits, induced_subgraph, peel_low_triangle_vertices

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class FeedbackEdgeDecomposition:
    """Spanning forest ``T`` of a graph and the feedback edges ``F = E - T``.

    ``feedback_edges`` keeps DFS discovery order; ``parent`` gives each
    vertex's parent in ``T`` (``-1`` for component roots).
    """

    forest_edges: tuple[Edge, ...]
    feedback_edges: tuple[Edge, ...]
    endpoint_set: frozenset[int]
    parent: tuple[int, ...]
    depth: tuple[int, ...]
    components: int

    @property
    def fes(self) -> int:
        return len(self.feedback_edges)

    def tree_path(self, u: int, v: int) -> list[int]:
        """Vertices of the unique ``u``-``v`` path in the forest (``[]`` if none)."""
        left, right = [u], [v]
        a, b = u, v
        while self.depth[a] > self.depth[b]:
            a = self.parent[a]
            left.append(a)
        while self.depth[b] > self.depth[a]:
            b = self.parent[b]
            right.append(b)
        while a != b:
            a, b = self.parent[a], self.parent[b]
            if a < 0 or b < 0:
                return []
            left.append(a)
            right.append(b)
        return left + right[-2::-1]


def feedback_edge_decomposition(g: Graph) -> FeedbackEdgeDecomposition:
    """Spanning forest by iterative DFS from the lowest-id unvisited root."""
    parent = [-1] * g.n
    depth = [0] * g.n
    visited = [False] * g.n
    tree: list[Edge] = []
    feedback: list[Edge] = []
    seen_feedback: set[Edge] = set()
    components = 0
    for root in range(g.n):
        if visited[root]:
            continue
        components += 1
        visited[root] = True
        stack = [(root, iter(g.adjacency[root]))]
        while stack:
            v, it = stack[-1]
            for w in it:
                if not visited[w]:
                    visited[w] = True
                    parent[w] = v
                    depth[w] = depth[v] + 1
                    tree.append(_edge(v, w))
                    stack.append((w, iter(g.adjacency[w])))
                    break
                if w != parent[v]:
                    e = _edge(v, w)
                    if e not in seen_feedback:
                        seen_feedback.add(e)
                        feedback.append(e)
            else:
                stack.pop()
    endpoints = frozenset(x for e in feedback for x in e)
    return FeedbackEdgeDecomposition(
        tuple(tree), tuple(feedback), endpoints, tuple(parent), tuple(depth), components
    )


def satisfied_vertex(g: Graph, fed: FeedbackEdgeDecomposition, e: Edge) -> int | None:
    """The unique vertex outside ``D`` satisfied by feedback edge ``e``, if any.

    A vertex ``w`` is satisfied by ``uv`` when it lies on the forest path
    between ``u`` and ``v`` and is adjacent to both; for ``w`` outside ``D``
    that is the same as ``{u, v, w}`` being a triangle.  Both readings are
    evaluated and must agree.
    """
    u, v = _edge(*e)
    if (u, v) not in set(fed.feedback_edges):
        raise ContractError(f"{e} is not a feedback edge")
    outside_d = [
        w for w in bits(g.masks[u] & g.masks[v]) if w not in fed.endpoint_set
    ]
    if len(outside_d) > 1:
        raise AssertionError(f"feedback edge {e} satisfies {outside_d}; forest invariant broken")
    path = fed.tree_path(u, v)
    on_path = [
        w for w in path[1:-1]
        if w not in fed.endpoint_set and g.has_edge(w, u) and g.has_edge(w, v)
    ]
    if on_path != outside_d:
        raise AssertionError(f"path test {on_path} and triangle test {outside_d} disagree for {e}")
    return outside_d[0] if outside_d else None


def diamond() -> Graph:
    """K4 minus the edge 2-3."""
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


@dataclass(frozen=True)
class KernelResult:
    """Reduced instance plus the map from kernel ids back to input ids.

    ``case_taken`` is ``"r-exceeds-fes"`` or ``"main"``.  When ``trivial_no``
    is set the instance is the diamond with ``r = 3, ell = 4`` and
    ``kept_vertices`` is empty.
    """

    instance: ProblemInstance
    kept_vertices: dict[int, int]
    trivial_no: bool
    case_taken: str
    fes: int
    satisfied: tuple[int, ...] = ()


def kernelize(inst: ProblemInstance) -> KernelResult:
    """Shrink ``inst`` to an equivalent instance of size linear in the fes."""
    g = inst.graph
    alive = sorted(peel_low_triangle_vertices(g, 1))
    h, remap = induced_subgraph(g, alive)
    back = {new: old for old, new in remap.items()}
    fed = feedback_edge_decomposition(h)
    k = fed.fes
    d = fed.endpoint_set

    def restrict(keep) -> tuple[ProblemInstance, dict[int, int]]:
        sub, sub_remap = induced_subgraph(h, keep)
        kept = {new: back[old] for old, new in sub_remap.items()}
        return ProblemInstance(sub, inst.r, inst.s, inst.ell), kept

    if inst.r > k:
        if inst.ell > len(d):
            trivial = ProblemInstance(diamond(), 3, inst.s, 4)
            return KernelResult(trivial, {}, True, "r-exceeds-fes", k)
        kernel, kept = restrict(d)
        return KernelResult(kernel, kept, False, "r-exceeds-fes", k)

    y: list[int] = []
    for e in fed.feedback_edges:
        w = satisfied_vertex(h, fed, e)
        if w is not None and w not in y:
            y.append(w)
    kernel, kept = restrict(d | set(y))
    return KernelResult(kernel, kept, False, "main", k, tuple(back[w] for w in y))
