"""Peek inside the tree decomposition DP on a bowtie.

Prints the nice decomposition, the number of states kept at each node and
the best partial solution size recorded at the root.
"""

from triclub.dp import compute_table, solve_treewidth
from triclub.testkit import bowtie
from triclub.treedecomp import TreeDecomposition, make_nice

g = bowtie()  # two triangles sharing vertex 2
td = TreeDecomposition.from_lists([[0, 1, 2], [2, 3, 4]], [(0, 1)])
ntd = make_nice(td, g)
table = compute_table(ntd, g, r=1)

for t, node in enumerate(ntd.nodes):
    entries = table.entries[t]
    best = max((v for v, _ in entries.values()), default=None)
    print(f"node {t:2d} {node.kind:9s} bag {sorted(node.bag)!s:12s} states {len(entries):3d} best {best}")

res = solve_treewidth(g, td, r=1)
print(f"optimum {res.best_size} via {sorted(res.witness)} after {res.guesses} guesses, {res.states} states")
