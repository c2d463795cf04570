"""Immutable simple graphs and the primitives every solver builds on.

Vertices are dense integer ids ``0..n-1``.  Vertex sets are passed around as
plain iterables of ids (usually ``frozenset``); internally most routines work
on Python ``int`` bitmasks, where bit ``v`` stands for vertex ``v``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ContractError, EmptySetError, InvalidVertexError

INF = math.inf


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    """Simple undirected graph with sorted adjacency lists.

    Construct from a vertex count and an edge iterable; duplicate edges are
    collapsed and self-loops are rejected.
    """

    __slots__ = ("n", "adjacency", "m", "masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ContractError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertexError(f"edge {u}-{v} outside 0..{n - 1}")
            if u == v:
                raise ContractError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self.m = sum(len(a) for a in self.adjacency) // 2
        self.masks: tuple[int, ...] = tuple(mask_of(a) for a in self.adjacency)

    def __setattr__(self, name, value):
        if hasattr(self, "masks"):
            raise AttributeError("Graph is immutable")
        object.__setattr__(self, name, value)

    def neighbors(self, v: int) -> tuple[int, ...]:
        self.check_vertex(v)
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        self.check_vertex(u)
        self.check_vertex(v)
        return bool(self.masks[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as ``(u, v)`` with ``u < v``, lexicographically."""
        for u, adj in enumerate(self.adjacency):
            for v in adj:
                if v > u:
                    yield u, v

    def vertices(self) -> range:
        return range(self.n)

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InvalidVertexError(f"vertex {v} outside 0..{self.n - 1}")

    def vertex_mask(self, s: Iterable[int]) -> int:
        """Bitmask of ``s``, validating every member against this graph."""
        mask = 0
        for v in s:
            self.check_vertex(v)
            mask |= 1 << v
        return mask

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self):
        return hash((self.n, self.adjacency))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class ProblemInstance:
    """One Vertex r-Triangle s-Club query: a graph plus ``(r, s, ell)``."""

    graph: Graph
    r: int
    s: int = 2
    ell: int = 1

    def __post_init__(self):
        if self.r < 1:
            raise ContractError("r must be at least 1")
        if self.s < 2:
            raise ContractError("s must be at least 2")
        if self.ell < 1:
            raise ContractError("ell must be at least 1")


@dataclass(frozen=True)
class Verdict:
    """Outcome of :func:`verify_solution`.

    ``kind`` is one of ``ok``, ``too-small``, ``diameter-violated`` and
    ``triangle-violated``; ``pair`` and ``vertex`` carry the offending
    element for the last two.
    """

    kind: str
    pair: tuple[int, int] | None = None
    vertex: int | None = None

    @property
    def ok(self) -> bool:
        return self.kind == "ok"

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.pair is not None:
            return f"{self.kind}{self.pair}"
        if self.vertex is not None:
            return f"{self.kind}({self.vertex})"
        return self.kind


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Return ``G[s]`` and the old-id to new-id table.

    New ids follow the increasing order of the old ones.
    """
    keep = sorted(set(s))
    for v in keep:
        g.check_vertex(v)
    remap = {old: new for new, old in enumerate(keep)}
    edges = [(remap[u], remap[v]) for u in keep for v in g.adjacency[u] if v > u and v in remap]
    return Graph(len(keep), edges), remap


def distance(g: Graph, u: int, v: int) -> int | float:
    """Shortest-path length between ``u`` and ``v``; ``math.inf`` if disconnected."""
    g.check_vertex(u)
    g.check_vertex(v)
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if y not in dist:
                if y == v:
                    return dist[x] + 1
                dist[y] = dist[x] + 1
                queue.append(y)
    return INF


def _eccentricity(g: Graph, v: int, within: int) -> int | float:
    seen = 1 << v
    frontier = seen
    depth = 0
    while frontier:
        if seen == within:
            return depth
        nxt = 0
        for x in bits(frontier):
            nxt |= g.masks[x]
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
        depth += 1
    return depth if seen == within else INF


def diameter_within(g: Graph, s: Iterable[int]) -> int | float:
    """Diameter of ``G[s]``; ``math.inf`` when ``G[s]`` is disconnected."""
    within = g.vertex_mask(s)
    if not within:
        raise EmptySetError("diameter of an empty vertex set is undefined")
    best = 0
    for v in bits(within):
        ecc = _eccentricity(g, v, within)
        if ecc == INF:
            return INF
        best = max(best, ecc)
    return best


def _common_count(a: tuple[int, ...], b: tuple[int, ...], within: int) -> int:
    # merge of two sorted adjacency lists, counting members of ``within``
    i = j = count = 0
    while i < len(a) and j < len(b):
        x, y = a[i], b[j]
        if x < y:
            i += 1
        elif x > y:
            j += 1
        else:
            if within >> x & 1:
                count += 1
            i += 1
            j += 1
    return count


def triangle_counts(g: Graph, s: Iterable[int]) -> dict[int, int]:
    """Exact number of triangles of ``G[s]`` through each member of ``s``."""
    within = g.vertex_mask(s)
    counts = {}
    for v in bits(within):
        total = 0
        for x in g.adjacency[v]:
            if within >> x & 1:
                total += _common_count(g.adjacency[v], g.adjacency[x], within)
        counts[v] = total // 2
    return counts


def verify_solution(inst: ProblemInstance, s: Iterable[int]) -> Verdict:
    """Check ``s`` against size, diameter and triangle requirements, in that order.

    Violations are reported deterministically: the lexicographically smallest
    pair at distance greater than ``inst.s``, and among vertices in fewer than
    ``inst.r`` triangles the one with the fewest, lowest id on ties.
    """
    g = inst.graph
    members = sorted(set(s))
    within = g.vertex_mask(members)
    if len(members) < inst.ell:
        return Verdict("too-small")
    for u in members:
        seen = 1 << u
        frontier = seen
        for _ in range(inst.s):
            nxt = 0
            for x in bits(frontier):
                nxt |= g.masks[x]
            frontier = nxt & within & ~seen
            seen |= frontier
        if seen != within:
            far = next(v for v in members if v > u and not seen >> v & 1)
            return Verdict("diameter-violated", pair=(u, far))
    counts = triangle_counts(g, members)
    worst = min(members, key=lambda v: (counts[v], v)) if members else None
    if worst is not None and counts[worst] < inst.r:
        return Verdict("triangle-violated", vertex=worst)
    return Verdict("ok")


def peel_low_triangle_vertices(g: Graph, r: int, within: Iterable[int] | None = None) -> frozenset[int]:
    """Largest subset in which every vertex lies in at least ``r`` triangles.

    Vertices in fewer than ``r`` triangles of the current induced subgraph are
    removed until none remain; the fixpoint does not depend on removal order.
    """
    if r < 1:
        raise ContractError("r must be at least 1")
    alive = g.vertex_mask(range(g.n) if within is None else within)
    counts = triangle_counts(g, bits(alive))
    queue = deque(v for v in sorted(counts) if counts[v] < r)
    queued = mask_of(queue)
    while queue:
        v = queue.popleft()
        alive &= ~(1 << v)
        nv = g.masks[v] & alive
        for x in bits(nv):
            lost = bin(g.masks[x] & nv).count("1")
            if lost:
                counts[x] -= lost
                if counts[x] < r and not queued >> x & 1:
                    queued |= 1 << x
                    queue.append(x)
    return frozenset(bits(alive))


def twin_classes(g: Graph, candidates: Iterable[int], anchor: Iterable[int]) -> list[tuple[int, ...]]:
    """Partition ``candidates`` by their neighbourhood inside ``anchor``.

    Classes come back sorted internally and ordered by smallest member.
    """
    cand = g.vertex_mask(candidates)
    anch = g.vertex_mask(anchor)
    if cand & anch:
        raise ContractError("candidates and anchor must be disjoint")
    classes: dict[int, list[int]] = {}
    for v in bits(cand):
        classes.setdefault(g.masks[v] & anch, []).append(v)
    return sorted((tuple(c) for c in classes.values()), key=lambda c: c[0])
