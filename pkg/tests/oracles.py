"""Independent reference computations shared by the tests.

Nothing here calls into the solvers under test; graphs are read only via
``adjacency`` and ``edges()``.
"""

from itertools import combinations

import networkx as nx


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def triangles_by_enumeration(g, members):
    members = sorted(members)
    count = {v: 0 for v in members}
    adj = [set(a) for a in g.adjacency]
    for a, b, c in combinations(members, 3):
        if b in adj[a] and c in adj[a] and c in adj[b]:
            for v in (a, b, c):
                count[v] += 1
    return count


def is_solution_nx(g, members, r, s):
    """Club and triangle test through networkx, independent of the package."""
    members = set(members)
    if not members:
        return False
    h = to_nx(g).subgraph(members)
    if not nx.is_connected(h):
        return False
    if len(members) > 1 and nx.diameter(h) > s:
        return False
    tri = nx.triangles(h)
    return all(tri[v] >= r for v in members)


def max_club_nx(g, r, s):
    """Exhaustive maximum over all subsets, largest first."""
    for k in range(g.n, 0, -1):
        for combo in combinations(range(g.n), k):
            if is_solution_nx(g, combo, r, s):
                return k
    return 0


def subtree_vertices(ntd):
    """Vertex set of ``G_t`` for every node of a nice decomposition."""
    out = []
    for node in ntd.nodes:
        verts = set(node.bag)
        for c in node.children:
            verts |= out[c]
        out.append(verts)
    return out


def candidate_table(g, bag, vertices, r):
    """Best candidate-solution size per state, by enumerating every ``S`` in ``vertices``.

    States use the DP's key encoding: (A bitmask, capped counts in increasing
    vertex order, frozenset of neighbourhood bitmasks of forgotten members).
    """
    adj = [set(a) for a in g.adjacency]
    vertices = sorted(vertices)
    best = {}
    for k in range(len(vertices) + 1):
        for s in combinations(vertices, k):
            members = set(s)
            a = sorted(members & set(bag))
            forgotten = [x for x in s if x not in bag]
            tri = triangles_by_enumeration(g, members)
            if any(tri[x] < r for x in forgotten):
                continue
            ok = True
            for x in forgotten:
                # every member within two steps of x inside G[S]
                near = {x} | (adj[x] & members)
                for y in list(near):
                    near |= adj[y] & members
                if near != members:
                    ok = False
                    break
            if not ok:
                continue
            a_mask = sum(1 << v for v in a)
            fam = frozenset(sum(1 << v for v in adj[x] & set(a)) for x in forgotten)
            key = (a_mask, tuple(min(r, tri[v]) for v in a), fam)
            if best.get(key, -1) < k:
                best[key] = k
    return best
