"""Command-line front end.

``triclub --input G --r R --ell L`` solves one instance and prints a JSON
report; ``triclub generate ...`` writes a seeded instance.

Exit codes: 0 solved, 1 input error, 2 no applicable algorithm, 3 resource
cap hit, 4 a solver answer failed re-verification.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import testkit
from .dp import solve_treewidth
from .errors import (
    ContractError,
    OracleScaleError,
    ParameterTooLargeError,
    ParseError,
    StateLimitExceeded,
    ValidationError,
)
from .formats import FORMATS, parse_graph, parse_td, write_graph, write_td
from .graph import ProblemInstance, verify_solution
from .kernel import feedback_edge_decomposition, kernelize
from .oracle import DEFAULT_SIZE_LIMIT, max_club_bruteforce
from .param import (
    DEFAULT_HINDEX_CAP,
    DEFAULT_VC_CAP,
    find_apex,
    h_index,
    minimum_vertex_cover,
    solve_apex,
    solve_hindex,
    solve_vc,
)
from .treedecomp import heuristic_decomposition

SCHEMA = 1
ALGORITHMS = ("auto", "oracle", "treewidth", "vc", "hindex", "apex", "kernel-only")
AUTO_TD_WIDTH = 4

EXIT_OK, EXIT_INPUT, EXIT_NO_ROUTE, EXIT_CAP, EXIT_UNVERIFIED = 0, 1, 2, 3, 4


class NoRoute(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # bad flags are input errors, not "no route"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _solve_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="triclub",
        description="Maximum vertex r-triangle s-club solver. "
        "Use 'triclub generate --help' for the instance generators.",
    )
    p.add_argument("--input", required=True, help="graph file ('-' for stdin)")
    p.add_argument("--format", choices=FORMATS, default="edge-list")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    p.add_argument("--td", help="PACE .td file for the treewidth solver")
    p.add_argument("--seed", type=int, default=0, help="recorded in the report")
    p.add_argument("--max-states", type=int, default=None, help="cap on DP states per node")
    p.add_argument("--kernel-out", help="where kernel-only writes the reduced graph")
    p.add_argument("--kernel-format", choices=FORMATS, default="pace-gr")
    return p


def _generate_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="triclub generate", description="Write a seeded instance.")
    p.add_argument("kind", choices=("gnp", "treewidth", "apex"))
    p.add_argument("--n", type=int, default=10, help="vertices (gnp, treewidth) or left side (apex)")
    p.add_argument("--n-right", type=int, default=5)
    p.add_argument("--p", type=float, default=0.5, help="edge probability or edge_keep")
    p.add_argument("--w", type=int, default=2)
    p.add_argument("--apex-p", type=float, default=0.7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=FORMATS, default="pace-gr")
    p.add_argument("--out", help="graph path (default stdout)")
    p.add_argument("--td-out", help="decomposition path for the treewidth generator")
    return p


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _emit(report: dict, code: int) -> int:
    print(json.dumps(report, indent=2))
    return code


def _pick_auto(inst, td, params) -> tuple[str, object]:
    g = inst.graph
    if inst.s > 2:
        if g.n <= DEFAULT_SIZE_LIMIT:
            return "oracle", None
        raise NoRoute("s > 2 leaves only the oracle, which is capped at "
                      f"{DEFAULT_SIZE_LIMIT} vertices")
    if params["apex"] is not None:
        return "apex", None
    if td is not None:
        return "treewidth", td
    heuristic = heuristic_decomposition(g)
    if heuristic.width <= AUTO_TD_WIDTH:
        params["td_width"] = heuristic.width
        return "treewidth", heuristic
    try:
        minimum_vertex_cover(g, DEFAULT_VC_CAP)
        return "vc", None
    except ParameterTooLargeError:
        pass
    if params["h_index"] <= DEFAULT_HINDEX_CAP:
        return "hindex", None
    if g.n <= DEFAULT_SIZE_LIMIT:
        return "oracle", None
    raise NoRoute("no parameter within its cap and the graph is too large for the oracle")


def _run_solver(name: str, inst: ProblemInstance, td, apex, max_states):
    g, r, s, ell = inst.graph, inst.r, inst.s, inst.ell
    if name != "oracle" and s != 2:
        raise NoRoute(f"{name} handles only s = 2")
    if name == "oracle":
        res = max_club_bruteforce(g, r, s)
    elif name == "treewidth":
        res = solve_treewidth(g, td if td is not None else heuristic_decomposition(g), r, ell, max_states)
    elif name == "vc":
        res = solve_vc(g, r, s, ell)
    elif name == "hindex":
        res = solve_hindex(g, r, ell)
    elif name == "apex":
        if apex is None:
            raise NoRoute("graph has no apex vertex")
        res = solve_apex(g, apex, r, ell)
    else:
        raise ValueError(name)
    return res.best_size, res.witness


def run(argv: list[str]) -> tuple[dict, int]:
    """Solve as instructed by ``argv``; return the report and exit code."""
    args = _solve_parser().parse_args(argv)
    started = time.perf_counter()
    report: dict = {"schema": SCHEMA, "algorithm": args.algorithm, "seed": args.seed}
    try:
        g, labels = parse_graph(_read(args.input), args.format)
        inst = ProblemInstance(g, args.r, args.s, args.ell)
        td = None
        if args.td:
            td = parse_td(_read(args.td), g, labels)
    except (OSError, ParseError, ValidationError, ContractError) as exc:
        report["error"] = f"{type(exc).__name__}: {exc}"
        return report, EXIT_INPUT

    apex = find_apex(g)
    params = {
        "fes": feedback_edge_decomposition(g).fes,
        "h_index": h_index(g).k,
        "apex": labels[apex] if apex is not None else None,
        "td_width": td.width if td is not None else None,
    }
    report["instance"] = {"n": g.n, "m": g.m, "r": inst.r, "s": inst.s, "ell": inst.ell}
    report["parameters"] = params

    def finish(code: int) -> tuple[dict, int]:
        report["wall_time"] = round(time.perf_counter() - started, 6)
        return report, code

    if args.algorithm == "kernel-only":
        kr = kernelize(inst)
        kg = kr.instance.graph
        report["kernel"] = {
            "n": kg.n,
            "m": kg.m,
            "r": kr.instance.r,
            "s": kr.instance.s,
            "ell": kr.instance.ell,
            "fes": kr.fes,
            "case": kr.case_taken,
            "trivial_no": kr.trivial_no,
            "labels": [labels[kr.kept_vertices[i]] for i in range(kg.n)] if not kr.trivial_no else [],
        }
        if args.kernel_out:
            Path(args.kernel_out).write_text(write_graph(kg, args.kernel_format))
            report["kernel"]["path"] = args.kernel_out
        report.update(best_size=None, decision=None, witness=None, verified=None)
        return finish(EXIT_OK)

    try:
        name = args.algorithm
        if name == "auto":
            name, picked_td = _pick_auto(inst, td, params)
            td = td if td is not None else picked_td
        report["algorithm"] = name
        best, witness = _run_solver(name, inst, td, apex, args.max_states)
    except (NoRoute, ParameterTooLargeError, OracleScaleError, ContractError) as exc:
        report["error"] = str(exc)
        report.update(best_size=None, decision=None, witness=None, verified=False)
        return finish(EXIT_NO_ROUTE)
    except StateLimitExceeded as exc:
        report["error"] = str(exc)
        report.update(best_size=None, decision=None, witness=None, verified=False)
        return finish(EXIT_CAP)

    verified = True
    if best:
        verified = len(witness) == best and verify_solution(
            ProblemInstance(g, inst.r, inst.s, 1), witness
        ).ok
    report["best_size"] = best
    report["decision"] = "yes" if best >= inst.ell else "no"
    report["witness"] = [labels[v] for v in sorted(witness)]
    report["verified"] = verified
    if not verified:
        report["error"] = "solver witness failed verification"
        return finish(EXIT_UNVERIFIED)
    return finish(EXIT_OK)


def generate(argv: list[str]) -> int:
    args = _generate_parser().parse_args(argv)
    td = None
    if args.kind == "gnp":
        g = testkit.gen_gnp(args.n, args.p, args.seed)
    elif args.kind == "treewidth":
        inst = testkit.gen_bounded_treewidth(args.n, args.w, args.p, args.seed)
        g, td = inst.graph, inst.decomposition
    else:
        g = testkit.gen_apex_bipartite(args.n, args.n_right, args.p, args.apex_p, args.seed).graph
    text = write_graph(g, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if td is not None and args.td_out:
        Path(args.td_out).write_text(write_td(td, g.n))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if argv and argv[0] == "generate":
        return generate(argv[1:])
    report, code = run(argv)
    return _emit(report, code)


if __name__ == "__main__":
    sys.exit(main())
