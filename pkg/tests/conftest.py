import random
from itertools import combinations

import pytest

from netrel.graphcore import LabeledGraph

from oracles import all_pairs, bfs_connected

_ACCEPTANCE = []


def record(criterion, passed, detail=""):
    _ACCEPTANCE.append((criterion, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {criterion}: {detail}")


def ensemble_graphs(k, n):
    for edges in combinations(all_pairs(k), n):
        yield LabeledGraph(k, edges)


def random_graph(rng, k, n):
    return LabeledGraph(k, tuple(rng.sample(all_pairs(k), n)))


def random_connected_graphs(count, seed, max_k=6, max_n=10):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.randint(2, max_k)
        top = k * (k - 1) // 2
        lo = k - 1
        n = rng.randint(lo, min(top, max_n))
        g = random_graph(rng, k, n)
        if bfs_connected(k, g.edges):
            out.append(g)
    return out


K3 = LabeledGraph(3, ((0, 1), (0, 2), (1, 2)))
PATH3 = LabeledGraph(3, ((0, 1), (1, 2)))
EDGE2 = LabeledGraph(2, ((0, 1),))
TWO_EDGES4 = LabeledGraph(4, ((0, 1), (2, 3)))
STAR4 = LabeledGraph(4, ((0, 1), (0, 2), (0, 3)))


@pytest.fixture
def small_graphs():
    return {"K3": K3, "path3": PATH3, "edge2": EDGE2, "two_edges4": TWO_EDGES4, "star4": STAR4}
