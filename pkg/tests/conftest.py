import networkx as nx
import pytest

from graphpowers.extremal import build_extremal
from graphpowers.graph import Graph, build_graph


def path(n):
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return build_graph(len(mapping), [(mapping[u], mapping[v]) for u, v in h.edges()])


@pytest.fixture
def p4():
    return path(4)


@pytest.fixture
def c7():
    return cycle(7)


@pytest.fixture
def k4():
    return complete(4)


@pytest.fixture(scope="session")
def g1():
    return build_extremal(1)


# Acceptance reporting: tests marked ``criterion(n)`` get one summary line each.
_CRITERIA = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    detail = dict(item.user_properties).get("detail", "")
    if rep.failed and not detail:
        detail = str(call.excinfo.value).splitlines()[0] if call.excinfo else "error"
    _CRITERIA.append((mark.args[0], "PASS" if rep.passed else "FAIL", detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num, verdict, detail in sorted(_CRITERIA, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {num}: {verdict}  {detail}")
