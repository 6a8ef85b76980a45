import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from spanroot.graph import Graph, build_graph, worked_example

settings.register_profile(
    "default", max_examples=150, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# ids of the worked example's edges, in input order
R1, R2, E13, E24, E23, E32, E43, E41 = range(8)


@pytest.fixture
def gstar():
    return worked_example()


@pytest.fixture
def square():
    # two root children that also point at each other
    return build_graph(2, [(0, 1, 10), (0, 2, 10), (1, 2, 9), (2, 1, 9)])


@st.composite
def graphs(draw, min_n=1, max_n=6, low=-9, high=9, parallel=True, connected=False):
    """Random multigraphs with integer weights."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n + 1) for j in range(1, n + 1) if i != j]
    if connected:
        # a root edge into every node guarantees an arborescence
        must = [(0, j) for j in range(1, n + 1)]
    else:
        must = []
    picked = draw(st.lists(st.sampled_from(pairs), max_size=3 * len(pairs),
                           unique=not parallel))
    edges = sorted(must + picked) if draw(st.booleans()) else must + picked
    weights = draw(st.lists(st.integers(low, high), min_size=len(edges), max_size=len(edges)))
    src = [e[0] for e in edges]
    dst = [e[1] for e in edges]
    return Graph(n, src, dst, weights)


def rng(seed=0):
    return np.random.default_rng(seed)


# acceptance verdicts, printed once at the end of the run
VERDICTS = []


@pytest.fixture
def verdict():
    def record(criterion, ok, detail=""):
        VERDICTS.append((criterion, bool(ok), detail))
        assert ok, f"criterion {criterion}: {detail}"
    return record


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in sorted(VERDICTS, key=lambda v: v[0]):
        line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}"
        terminalreporter.write_line(f"{line}  {detail}" if detail else line)
