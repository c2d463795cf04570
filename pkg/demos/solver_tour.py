"""Run every exact solver on one small graph and compare their answers.

The graph is a wheel with four spokes plus one extra vertex forming a
triangle with the hub and a rim vertex, so every structural parameter stays
small and the hub is an apex.
"""

from triclub import Graph, ProblemInstance, verify_solution
from triclub.dp import solve_treewidth
from triclub.oracle import max_club_bruteforce
from triclub.param import find_apex, h_index, solve_apex, solve_hindex, solve_vc
from triclub.treedecomp import heuristic_decomposition

edges = [(4, i) for i in range(4)] + [(0, 1), (1, 2), (2, 3), (3, 0)]
edges += [(0, 5), (4, 5)]
g = Graph(6, edges)

td = heuristic_decomposition(g)
apex = find_apex(g)
print(f"n={g.n} m={g.m} width={td.width} h-index={h_index(g).k} apex={apex}")

for r in (1, 2):
    runs = {
        "oracle": max_club_bruteforce(g, r),
        "treewidth": solve_treewidth(g, td, r),
        "vertex cover": solve_vc(g, r),
        "h-index": solve_hindex(g, r),
    }
    if apex is not None:
        runs["apex"] = solve_apex(g, apex, r)
    for name, res in runs.items():
        verdict = verify_solution(ProblemInstance(g, r, 2, max(res.best_size, 1)), res.witness)
        print(f"r={r} {name:>12}: size {res.best_size} witness {sorted(res.witness)} [{verdict}]")
