"""Exact solvers for the maximum vertex r-triangle s-club problem.

Find a largest vertex set ``S`` whose induced subgraph has diameter at most
``s`` and in which every vertex lies in at least ``r`` triangles.
"""

from .dp import DpContext, DpTable, DpTuple, compute_table, solve_treewidth
from .errors import (
    ContractError,
    EmptySetError,
    InvalidVertexError,
    OracleScaleError,
    ParameterTooLargeError,
    ParseError,
    SelfLoopError,
    StateLimitExceeded,
    TriclubError,
    ValidationError,
)
from .formats import parse_graph, parse_td, write_graph, write_td
from .graph import (
    Graph,
    ProblemInstance,
    Verdict,
    diameter_within,
    distance,
    induced_subgraph,
    peel_low_triangle_vertices,
    triangle_counts,
    twin_classes,
    verify_solution,
)
from .kernel import KernelResult, feedback_edge_decomposition, kernelize, satisfied_vertex
from .oracle import decide, max_club_bruteforce
from .param import (
    clique_to_vt1_reduction,
    find_apex,
    h_index,
    solve_apex,
    solve_hindex,
    solve_vc,
    vertex_cover_exact,
)
from .treedecomp import (
    NiceTreeDecomposition,
    TreeDecomposition,
    heuristic_decomposition,
    make_nice,
    reroot_for_guess,
    validate,
)

__version__ = "0.1.0"
