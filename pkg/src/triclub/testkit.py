"""Seeded instance generators with structural certificates.

Randomness comes from :class:`XorShift64Star` so that a seed names the same
graph in any language; the recurrence is documented in the README.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .graph import Graph
from .kernel import diamond, feedback_edge_decomposition
from .param import _bipartite_without, find_apex, h_index
from .treedecomp import TreeDecomposition, validate

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


class XorShift64Star:
    """xorshift64* (shifts 12, 25, 27; multiplier 0x2545F4914F6CDD1D).

    The state is ``splitmix64(seed)``, replaced by 1 if that is zero.
    """

    MULT = 0x2545F4914F6CDD1D

    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK64) or 1

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * self.MULT) & MASK64

    def random(self) -> float:
        """Uniform float in ``[0, 1)`` from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError("empty range")
        return int(self.random() * n)


@dataclass(frozen=True)
class GeneratedInstance:
    graph: Graph
    decomposition: TreeDecomposition | None = None
    parameter_certificates: dict = field(default_factory=dict)
    seed: int = 0

    def check_certificates(self) -> list[str]:
        """Names of certificates that fail to verify (empty when all hold)."""
        bad = []
        cert = self.parameter_certificates
        if self.decomposition is not None:
            if not validate(self.decomposition, self.graph).ok:
                bad.append("decomposition")
            if "width" in cert and self.decomposition.width > cert["width"]:
                bad.append("width")
        if "apex" in cert and not _bipartite_without(self.graph, cert["apex"]):
            bad.append("apex")
        if "fes" in cert and cert["fes"] != feedback_edge_decomposition(self.graph).fes:
            bad.append("fes")
        if "vertex_cover" in cert:
            cover = set(cert["vertex_cover"])
            if any(u not in cover and v not in cover for u, v in self.graph.edges()):
                bad.append("vertex_cover")
        if "h_index_bound" in cert:
            if h_index(self.graph).k > cert["h_index_bound"]:
                bad.append("h_index_bound")
        return bad


def _pairs(n: int) -> Iterable[tuple[int, int]]:
    for u in range(n):
        for v in range(u + 1, n):
            yield u, v


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdős–Rényi graph: each pair ``u < v`` in lexicographic order kept with probability ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = XorShift64Star(seed)
    return Graph(n, [e for e in _pairs(n) if rng.random() < p])


def gen_bounded_treewidth(n: int, w: int, edge_keep: float, seed: int) -> GeneratedInstance:
    """Random partial ``w``-tree with its natural width-``w`` decomposition.

    Starts from a ``(w+1)``-clique; vertex ``v`` then attaches to a random
    ``w``-clique formed by a bag minus one member.  Bag ``0`` is the initial
    clique and bag ``v - w`` is ``{v}`` plus its attachment clique.  Edges
    other than the initial clique's path edges and each new vertex's first
    attachment edge are dropped with probability ``1 - edge_keep``, so the
    graph stays connected and the decomposition stays valid.
    """
    if w < 0 or w + 1 > n:
        raise ValueError("need 0 <= w and w + 1 <= n")
    if not 0.0 <= edge_keep <= 1.0:
        raise ValueError("edge_keep must lie in [0, 1]")
    rng = XorShift64Star(seed)
    bags = [frozenset(range(w + 1))]
    tree_edges = []
    essential = {(i, i + 1) for i in range(w)}
    edges = set(_pairs(w + 1))
    for v in range(w + 1, n):
        host = rng.randrange(len(bags))
        members = sorted(bags[host])
        members.pop(rng.randrange(len(members)))
        for u in members:
            edges.add((u, v))
        if members:
            essential.add((members[0], v))
        bags.append(frozenset(members) | {v})
        tree_edges.append((host, len(bags) - 1))
    kept = [e for e in sorted(edges) if e in essential or rng.random() < edge_keep]
    g = Graph(n, kept)
    td = TreeDecomposition(tuple(bags), tuple(tree_edges))
    return GeneratedInstance(g, td, {"width": w}, seed)


def gen_apex_bipartite(n_left: int, n_right: int, p: float, apex_degree_p: float, seed: int) -> GeneratedInstance:
    """Random bipartite graph (left ids first) plus apex ``n_left + n_right``."""
    rng = XorShift64Star(seed)
    apex = n_left + n_right
    edges = [
        (u, n_left + v) for u in range(n_left) for v in range(n_right) if rng.random() < p
    ]
    edges += [(u, apex) for u in range(apex) if rng.random() < apex_degree_p]
    return GeneratedInstance(Graph(apex + 1, edges), None, {"apex": apex}, seed)


def gen_bounded_vc(n: int, k: int, p: float, seed: int) -> GeneratedInstance:
    """Graph whose edges all touch the first ``k`` vertices."""
    rng = XorShift64Star(seed)
    k = min(k, n)
    edges = [(u, v) for u, v in _pairs(n) if u < k and rng.random() < p]
    return GeneratedInstance(Graph(n, edges), None, {"vertex_cover": tuple(range(k))}, seed)


def gen_bounded_hindex(n: int, hubs: int, p: float, seed: int) -> GeneratedInstance:
    """Hubs ``0..hubs-1`` with random edges; every other vertex has degree at most 2.

    Only hubs can reach degree 3, so the h-index is at most ``max(hubs, 2)``.
    """
    rng = XorShift64Star(seed)
    hubs = min(hubs, n)
    degree = [0] * n
    edges = []

    def add(u: int, v: int) -> None:
        edges.append((u, v))
        degree[u] += 1
        degree[v] += 1

    for u, v in _pairs(hubs):
        if rng.random() < p:
            add(u, v)
    for v in range(hubs, n):
        for u in range(hubs):
            if degree[v] < 2 and rng.random() < p:
                add(u, v)
    for u, v in _pairs(n):
        if u >= hubs and degree[u] < 2 and degree[v] < 2 and rng.random() < p:
            add(u, v)
    return GeneratedInstance(Graph(n, edges), None, {"h_index_bound": max(hubs, 2)}, seed)


def with_certificates(g: Graph, seed: int = 0) -> GeneratedInstance:
    """Wrap an arbitrary graph, certifying its fes and any apex vertex."""
    cert = {"fes": feedback_edge_decomposition(g).fes}
    apex = find_apex(g)
    if apex is not None:
        cert["apex"] = apex
    return GeneratedInstance(g, None, cert, seed)


# named graphs


def complete(n: int) -> Graph:
    return Graph(n, _pairs(n))


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    """Center ``0`` with leaves ``1..leaves``."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def bowtie() -> Graph:
    """Two triangles sharing vertex 2."""
    return Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def wheel(rim: int) -> Graph:
    """Cycle ``0..rim-1`` plus hub ``rim``."""
    return Graph(rim + 1, [(i, (i + 1) % rim) for i in range(rim)] + [(i, rim) for i in range(rim)])
