"""Shrink random graphs with the feedback-edge kernel and check nothing changed."""

from triclub import ProblemInstance
from triclub.kernel import kernelize
from triclub.oracle import decide
from triclub.testkit import gen_gnp

for seed in range(6):
    g = gen_gnp(12, 0.35, seed)
    for r, ell in ((1, 4), (2, 5)):
        inst = ProblemInstance(g, r, 2, ell)
        k = kernelize(inst)
        before, after = decide(inst)[0], decide(k.instance)[0]
        kg = k.instance.graph
        tag = "trivial no" if k.trivial_no else f"{kg.n} vertices, {kg.m} edges"
        print(f"seed {seed} r={r} ell={ell}: fes={k.fes:2d} case={k.case_taken:13s} "
              f"kernel {tag:22s} answer {before} -> {after}")
        assert before == after
