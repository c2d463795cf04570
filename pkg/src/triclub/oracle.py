"""Brute-force ground truth for the maximum vertex r-triangle s-club."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import OracleScaleError
from .graph import Graph, ProblemInstance, bits, mask_of, peel_low_triangle_vertices

DEFAULT_SIZE_LIMIT = 20


@dataclass(frozen=True)
class OracleResult:
    best_size: int
    witness: frozenset[int] = field(default_factory=frozenset)
    subsets_examined: int = 0


def is_club(g: Graph, mask: int, r: int, s: int) -> bool:
    """Bitmask check: ``G[mask]`` has diameter at most ``s`` and min triangle count ``r``.

    Kept separate from :func:`triclub.graph.verify_solution` so the oracle does
    not share code paths with the solvers it checks.
    """
    masks = g.masks
    for v in bits(mask):
        nv = masks[v] & mask
        twice = 0
        for x in bits(nv):
            twice += bin(masks[x] & nv).count("1")
        if twice < 2 * r:
            return False
    for v in bits(mask):
        seen = 1 << v
        frontier = seen
        for _ in range(s):
            nxt = 0
            for x in bits(frontier):
                nxt |= masks[x]
            frontier = nxt & mask & ~seen
            seen |= frontier
            if not frontier:
                break
        if seen != mask:
            return False
    return True


def max_club_bruteforce(g: Graph, r: int, s: int = 2, size_limit: int = DEFAULT_SIZE_LIMIT) -> OracleResult:
    """Exact maximum by exhaustive search over subsets of the peeled vertex set.

    Sizes are tried from largest to smallest and subsets in lexicographic
    order, so the first hit is the lexicographically smallest optimum.
    """
    if g.n > size_limit:
        raise OracleScaleError(f"graph has {g.n} vertices, oracle limit is {size_limit}")
    pool = sorted(peel_low_triangle_vertices(g, r))
    examined = 0
    for k in range(len(pool), 0, -1):
        for combo in combinations(pool, k):
            examined += 1
            if is_club(g, mask_of(combo), r, s):
                return OracleResult(k, frozenset(combo), examined)
    return OracleResult(0, frozenset(), examined)


def decide(inst: ProblemInstance, size_limit: int = DEFAULT_SIZE_LIMIT) -> tuple[bool, frozenset[int] | None]:
    res = max_club_bruteforce(inst.graph, inst.r, inst.s, size_limit)
    if res.best_size >= inst.ell:
        return True, res.witness
    return False, None


def _ball(g: Graph, v: int, radius: int) -> int:
    seen = frontier = 1 << v
    for _ in range(radius):
        nxt = 0
        for x in bits(frontier):
            nxt |= g.masks[x]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def decide_by_twin_classes(g: Graph, r: int, s: int, ell: int) -> bool:
    """Decide ``ell``-sized existence by searching unions of false-twin classes.

    A maximum solution with more than one vertex contains every false twin of
    each of its members (adding a twin keeps it a club), so when ``ell >= 2``
    it suffices to search over unions of whole classes.  This reaches graphs
    far beyond :func:`max_club_bruteforce` when they have few classes.
    """
    if ell < 2:
        return max_club_bruteforce(g, r, s, size_limit=g.n).best_size >= ell
    pool = mask_of(peel_low_triangle_vertices(g, r))
    # false twins: equal open neighbourhoods
    by_nbhd: dict[int, int] = {}
    for v in bits(pool):
        by_nbhd[g.masks[v]] = by_nbhd.get(g.masks[v], 0) | 1 << v
    classes = sorted(by_nbhd.values(), key=lambda m: -bin(m).count("1"))
    sizes = [bin(c).count("1") for c in classes]
    # members of one solution are pairwise within distance s already in G
    allowed = []
    for c in classes:
        ok = pool
        for v in bits(c):
            ok &= _ball(g, v, s)
        allowed.append(ok)

    def search(i: int, chosen: int, size: int, room: int) -> bool:
        bound = size + sum(sizes[j] for j in range(i, len(classes)) if classes[j] & ~room == 0)
        if bound < ell:
            return False
        if i == len(classes):
            return is_club(g, chosen, r, s)
        c = classes[i]
        if c & ~room == 0 and c & ~allowed[i] == 0:
            if search(i + 1, chosen | c, size + sizes[i], room & allowed[i]):
                return True
        return search(i + 1, chosen, size, room)

    return search(0, 0, 0, pool)


__all__ = [
    "OracleResult",
    "max_club_bruteforce",
    "decide",
    "decide_by_twin_classes",
    "is_club",
]
