import itertools
import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from triclub import Graph
from triclub.testkit import bowtie, complete, cycle, diamond, path, star, wheel

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, chosen) if keep])


@pytest.fixture
def named():
    return {
        "K3": complete(3),
        "K4": complete(4),
        "K5": complete(5),
        "C4": cycle(4),
        "C5": cycle(5),
        "P3": path(3),
        "P4": path(4),
        "star5": star(5),
        "diamond": diamond(),
        "bowtie": bowtie(),
        "W4": wheel(4),
    }


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
