import random

import pytest
from hypothesis import strategies as st
from networkx.generators.atlas import graph_atlas_g

from burnoff.graph import Graph

_ATLAS = graph_atlas_g()


def atlas_graphs(max_n, connected=True):
    """One representative per isomorphism class, up to ``max_n`` vertices (n >= 1)."""
    out = []
    for h in _ATLAS:
        n = h.number_of_nodes()
        if n == 0 or n > max_n:
            continue
        g = Graph.from_edges(n, h.edges())
        if connected and not g.is_connected():
            continue
        out.append(g)
    return out


def random_connected_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    while True:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        g = Graph.from_edges(n, edges)
        if g.is_connected():
            return g


@st.composite
def graphs(draw, min_n=1, max_n=6, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = {e for e, keep in zip(pairs, mask) if keep}
    if connected:
        edges |= {(i, i + 1) for i in range(n - 1)}
    return Graph.from_edges(n, edges)


_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for number, title in getattr(report, "criterion", []):
        ok = _criteria.get(number, (title, True))[1] and report.passed
        _criteria[number] = (title, ok)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.criterion = [tuple(m.args) for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
