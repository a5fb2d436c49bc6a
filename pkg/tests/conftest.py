import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

from expanders.graph_core import BipartiteGraph, Graph  # noqa: E402


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def bigraphs(draw, min_n: int = 1, max_n: int = 7, square: bool = True):
    n_in = draw(st.integers(min_n, max_n))
    n_out = n_in if square else draw(st.integers(min_n, max_n))
    pairs = [(i, o) for i in range(n_in) for o in range(n_out)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True))
    return BipartiteGraph.from_edges(n_in, n_out, chosen)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
