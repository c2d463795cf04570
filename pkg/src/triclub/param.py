"""Solvers for structural parameters: vertex cover, h-index and apex-bipartite graphs.

Also home to the Clique reduction that builds hard instances with small
vertex cover.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, product

from .errors import ContractError, ParameterTooLargeError
from .graph import (
    Graph,
    ProblemInstance,
    bits,
    mask_of,
    peel_low_triangle_vertices,
    verify_solution,
)

VC_BUDGET_LIMIT = 25
DEFAULT_VC_CAP = 10
DEFAULT_HINDEX_CAP = 3


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class SolveResult:
    best_size: int
    witness: frozenset[int] = frozenset()
    guesses: int = 0
    operations: int = 0


class _Best:
    """Running maximum; ties go to the lexicographically smallest vertex list."""

    def __init__(self):
        self.size = 0
        self.witness: frozenset[int] = frozenset()

    def offer(self, members: frozenset[int]) -> None:
        k = len(members)
        if k > self.size or (k == self.size and k and sorted(members) < sorted(self.witness)):
            self.size, self.witness = k, members


def _is_solution(g: Graph, members, r: int, s: int) -> bool:
    return bool(members) and verify_solution(ProblemInstance(g, r, s, 1), members).ok


# -- vertex cover ---------------------------------------------------------------


def vertex_cover_exact(g: Graph, budget: int) -> frozenset[int] | None:
    """A vertex cover with at most ``budget`` vertices, or ``None``.

    Plain two-way branching on the lowest uncovered edge; the first branch
    takes its lower endpoint.
    """
    if budget < 0:
        return None
    if budget > VC_BUDGET_LIMIT:
        raise ContractError(f"budget {budget} exceeds {VC_BUDGET_LIMIT}")
    edges = list(g.edges())

    def branch(chosen: int, left: int) -> int | None:
        for u, v in edges:
            if not (chosen >> u & 1 or chosen >> v & 1):
                break
        else:
            return chosen
        if left == 0:
            return None
        found = branch(chosen | 1 << u, left - 1)
        return found if found is not None else branch(chosen | 1 << v, left - 1)

    found = branch(0, budget)
    return None if found is None else frozenset(bits(found))


def minimum_vertex_cover(g: Graph, cap: int = DEFAULT_VC_CAP) -> frozenset[int]:
    for budget in range(min(cap, VC_BUDGET_LIMIT) + 1):
        cover = vertex_cover_exact(g, budget)
        if cover is not None:
            return cover
    raise ParameterTooLargeError(f"vertex cover number exceeds {cap}")


def solve_vc(g: Graph, r: int, s: int = 2, ell: int = 1, cap: int = DEFAULT_VC_CAP) -> SolveResult:
    """Exact maximum via guessing the solution's part of a minimum vertex cover.

    Outside the cover vertices are pairwise non-adjacent, so for a fixed
    guess ``Y`` the vertices with equal neighbourhood in ``Y`` are twins and
    an optimum takes each such class whole or not at all.  ``ell`` is only
    reported back through the caller's decision.
    """
    cover = sorted(minimum_vertex_cover(g, cap))
    rest = [v for v in range(g.n) if v not in cover]
    best = _Best()
    guesses = 0
    for k in range(len(cover) + 1):
        for y in combinations(cover, k):
            ym = mask_of(y)
            classes: dict[int, int] = {}
            for v in rest:
                key = g.masks[v] & ym
                # no neighbour in Y means no neighbour at all in G[Y + rest]
                if key:
                    classes[key] = classes.get(key, 0) | 1 << v
            groups = sorted(classes.values())
            for pick in product((False, True), repeat=len(groups)):
                chosen = ym
                for take, grp in zip(pick, groups):
                    if take:
                        chosen |= grp
                guesses += 1
                if _popcount(chosen) < max(best.size, 1):
                    continue
                members = frozenset(bits(chosen))
                if _is_solution(g, members, r, s):
                    best.offer(members)
    return SolveResult(best.size, best.witness, guesses)


# -- h-index ----------------------------------------------------------------------


@dataclass(frozen=True)
class HIndexDecomposition:
    k: int
    X: frozenset[int]


def h_index(g: Graph) -> HIndexDecomposition:
    """Largest ``k`` with ``k`` vertices of degree at least ``k``, and those vertices.

    Vertices are ranked by degree, highest first, lower id first on ties.
    """
    order = sorted(range(g.n), key=lambda v: (-len(g.adjacency[v]), v))
    k = 0
    while k < len(order) and len(g.adjacency[order[k]]) >= k + 1:
        k += 1
    return HIndexDecomposition(k, frozenset(order[:k]))


def _ball(g: Graph, source: int, radius: int, allowed: int) -> int:
    seen = 1 << source
    frontier = seen
    for _ in range(radius):
        nxt = 0
        for x in bits(frontier):
            nxt |= g.masks[x]
        frontier = nxt & allowed & ~seen
        if not frontier:
            break
        seen |= frontier
    return seen


def _submasks_with(mask: int, required: int):
    free = list(bits(mask & ~required))
    for k in range(len(free) + 1):
        for extra in combinations(free, k):
            yield required | mask_of(extra)


def _peel_free_part(g: Graph, fixed: int, free: int, r: int) -> int:
    """Drop free vertices in < r triangles or farther than 2 from a fixed vertex."""
    masks = g.masks
    while True:
        current = fixed | free
        drop = 0
        for w in bits(free):
            nw = masks[w] & current
            twice = sum(_popcount(masks[x] & nw) for x in bits(nw))
            if twice < 2 * r:
                drop |= 1 << w
                continue
            reach = nw | 1 << w
            for x in bits(nw):
                reach |= masks[x] & current
            if fixed & ~reach:
                drop |= 1 << w
        if not drop:
            return free
        free &= ~drop


def solve_hindex(g: Graph, r: int, ell: int = 1, cap: int = DEFAULT_HINDEX_CAP) -> SolveResult:
    """Exact maximum 2-club with the r-triangle property, XP in the h-index.

    ``X`` is the set of the ``k`` highest-degree vertices, so every other
    vertex has degree at most ``k``.  Per guess ``Y`` of the solution inside
    ``X`` the rest is split by neighbourhood in ``Y``.  Classes whose
    ``Y``-neighbourhoods are disjoint from another chosen class (or empty)
    must connect through vertices outside ``X``, which confines their
    solution part to a radius-4 ball in ``G - X``; those parts are guessed
    outright.  Every other chosen class is taken whole and then pruned.
    """
    dec = h_index(g)
    if dec.k > cap:
        raise ParameterTooLargeError(f"h-index {dec.k} exceeds cap {cap}")
    x_set = sorted(dec.X)
    xm = mask_of(x_set)
    outside = ((1 << g.n) - 1) & ~xm
    best = _Best()
    guesses = 0
    for k in range(len(x_set) + 1):
        for y in combinations(x_set, k):
            ym = mask_of(y)
            by_key: dict[int, int] = {}
            for v in bits(outside):
                key = g.masks[v] & ym
                by_key[key] = by_key.get(key, 0) | 1 << v
            keys = sorted(by_key)
            classes = [by_key[key] for key in keys]
            # per class, every admissible solution part when the class is in conflict
            parts: list[list[int] | None] = [None] * len(classes)
            for present in product((False, True), repeat=len(classes)):
                chosen = [i for i, p in enumerate(present) if p]
                conflict = [
                    i for i in chosen if any(not keys[i] & keys[j] for j in chosen)
                ]
                free = 0
                for i in chosen:
                    if i not in conflict:
                        free |= classes[i]
                options = []
                for i in conflict:
                    if parts[i] is None:
                        seen: set[int] = set()
                        for v in bits(classes[i]):
                            ball = _ball(g, v, 4, outside) & classes[i]
                            seen.update(_submasks_with(ball, 1 << v))
                        parts[i] = sorted(seen)
                    options.append(parts[i])
                for combo in product(*options):
                    fixed = ym
                    for part in combo:
                        fixed |= part
                    guesses += 1
                    kept = _peel_free_part(g, fixed, free, r)
                    total = fixed | kept
                    if not total or _popcount(total) < best.size:
                        continue
                    members = frozenset(bits(total))
                    if _is_solution(g, members, r, 2):
                        best.offer(members)
    return SolveResult(best.size, best.witness, guesses)


# -- apex-bipartite ---------------------------------------------------------------


def _bipartite_without(g: Graph, x: int) -> bool:
    color = [-1] * g.n
    for start in range(g.n):
        if start == x or color[start] >= 0:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w == x:
                    continue
                if color[w] < 0:
                    color[w] = color[u] ^ 1
                    queue.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def find_apex(g: Graph) -> int | None:
    """Lowest-id vertex whose removal leaves a bipartite graph."""
    for x in range(g.n):
        if _bipartite_without(g, x):
            return x
    return None


def solve_apex(g: Graph, x: int, r: int, ell: int = 1) -> SolveResult:
    """Polynomial exact solver when ``G - x`` is bipartite.

    All triangles pass through ``x``, so a solution lives in ``N[x]`` and a
    vertex's triangle count is its degree inside the chosen part of ``N(x)``.
    ``operations`` counts adjacency inspections for scaling checks.
    """
    g.check_vertex(x)
    if not _bipartite_without(g, x):
        raise ContractError(f"G - {x} is not bipartite")
    ops = 0
    nx_mask = g.masks[x]
    alive = 0
    for u in g.adjacency[x]:
        ops += len(g.adjacency[u])
        if g.masks[u] & nx_mask:
            alive |= 1 << u
    degree = {}
    for u in bits(alive):
        degree[u] = _popcount(g.masks[u] & alive)
        ops += len(g.adjacency[u])
    queue = deque(u for u in sorted(degree) if degree[u] < r)
    queued = mask_of(queue)
    while queue:
        u = queue.popleft()
        alive &= ~(1 << u)
        for w in g.adjacency[u]:
            ops += 1
            if alive >> w & 1:
                degree[w] -= 1
                if degree[w] < r and not queued >> w & 1:
                    queued |= 1 << w
                    queue.append(w)
    hub_triangles = sum(degree[u] for u in bits(alive)) // 2
    ops += _popcount(alive)
    if not alive or hub_triangles < r:
        return SolveResult(0, frozenset(), 1, ops)
    members = frozenset(bits(alive)) | {x}
    if not _is_solution(g, members, r, 2):
        return SolveResult(0, frozenset(), 1, ops)
    return SolveResult(len(members), members, 1, ops)


# -- Clique reduction -------------------------------------------------------------


def clique_to_vt1_reduction(g: Graph, cover, ell: int) -> ProblemInstance:
    """Map a Clique instance with vertex cover ``cover`` to a 1-triangle 2-club instance.

    Vertex layout of the output: ``|cover|`` blocks of ``n`` copies (block
    ``i`` for the ``i``-th smallest cover vertex), then one vertex per edge
    inside the cover (in edge order, forming a clique), then the vertices
    outside the cover in increasing id order.
    """
    if ell < 5:
        raise ContractError("ell must be at least 5")
    x = sorted(set(cover))
    xm = g.vertex_mask(x)
    for u, v in g.edges():
        if not (xm >> u & 1 or xm >> v & 1):
            raise ContractError(f"edge {u}-{v} is not covered")
    n = g.n
    pos = {v: i for i, v in enumerate(x)}
    cover_edges = [(u, v) for u, v in g.edges() if xm >> u & 1 and xm >> v & 1]
    base_e = len(x) * n
    base_z = base_e + len(cover_edges)
    zs = [v for v in range(n) if not xm >> v & 1]
    edges = []
    for a, (u, v) in enumerate(cover_edges):
        e = base_e + a
        for i in (pos[u], pos[v]):
            edges.extend((i * n + c, e) for c in range(n))
        edges.extend((e, base_e + b) for b in range(a + 1, len(cover_edges)))
        for c, z in enumerate(zs):
            if g.masks[z] >> u & 1 and g.masks[z] >> v & 1:
                edges.append((e, base_z + c))
    gp = Graph(base_z + len(zs), edges)
    return ProblemInstance(gp, 1, 2, (ell - 1) * n + len(cover_edges) + 1)


__all__ = [
    "SolveResult",
    "HIndexDecomposition",
    "vertex_cover_exact",
    "minimum_vertex_cover",
    "solve_vc",
    "h_index",
    "solve_hindex",
    "find_apex",
    "solve_apex",
    "clique_to_vt1_reduction",
]
