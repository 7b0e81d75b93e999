import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from fasp.graph import WeightedMultiDigraph

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, max_vertices=6, max_arcs=10, max_weight=9, min_arcs=0):
    n = draw(st.integers(2, max_vertices))
    pairs = st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda p: p[0] != p[1])
    ends = draw(st.lists(pairs, min_size=min_arcs, max_size=max_arcs))
    weights = draw(st.lists(st.integers(1, max_weight), min_size=len(ends), max_size=len(ends)))
    arcs = [(i, u, v) for i, (u, v) in enumerate(ends)]
    return WeightedMultiDigraph(range(1, n + 1), arcs, dict(enumerate(weights)))


def g_of(edges, start=0):
    return WeightedMultiDigraph.from_edges(edges, start=start)


def simple_cycles(g):
    """Closed trails (no repeated arc), each rooted at its smallest arc id."""
    found = set()

    def walk(start, v, used):
        for a in g.out_arcs(v):
            if a in used or a < start:
                continue
            if g.head(a) == g.tail(start):
                found.add(used + (a,))
            walk(start, g.head(a), used + (a,))

    for a in g.arc_ids:
        walk(a, g.head(a), (a,))
    return found


@pytest.fixture
def rng():
    return random.Random(12345)


# one summary line per acceptance criterion ---------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, text = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _criteria[n] = (text, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        text, status = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d} {status}  {text}")
