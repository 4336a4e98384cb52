import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mdhits import SparseTensor, from_edge_list  # noqa: E402

# 1-based edges as drawn: 1 -> {2,3,4,5}, {2,3,4,5} -> 6
CURSE_EDGES = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 6), (3, 6), (4, 6), (5, 6)]

# (i, j, source layer, target layer, time), 1-based, all weight 1
FOUR_NODE_EDGES = [
    (2, 1, 1, 1, 1), (4, 1, 1, 1, 1),
    (1, 2, 2, 1, 1), (1, 4, 2, 1, 1),
    (1, 3, 2, 2, 1), (2, 4, 2, 2, 1),
    (3, 1, 2, 3, 1), (3, 2, 2, 3, 1),
    (2, 3, 3, 3, 1), (4, 2, 3, 3, 1),
]

# aggregate of FOUR_NODE_EDGES: reciprocated 1-2, 1-3, 1-4, 2-3, 2-4
AGGREGATE_EDGES = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]


def _zero_based(edges):
    return [(tuple(i - 1 for i in e), 1.0) for e in edges]


def make_curse():
    return from_edge_list(_zero_based(CURSE_EDGES), (6, 6))


def make_curse5():
    recs = [((i - 1, j - 1, 0, 0, 0), 1.0) for i, j in CURSE_EDGES]
    return from_edge_list(recs, (6, 6, 1, 1, 1))


def make_four_node():
    return from_edge_list(_zero_based(FOUR_NODE_EDGES), (4, 4, 3, 3, 1))


def make_aggregate():
    pairs = AGGREGATE_EDGES + [(j, i) for i, j in AGGREGATE_EDGES]
    return from_edge_list(_zero_based(pairs), (4, 4))


def random_tensor(rng, shape, nnz, weights="uniform"):
    idx = np.stack([rng.integers(0, n, nnz) for n in shape], axis=1)
    if weights == "uniform":
        w = rng.uniform(0.1, 2.0, nnz)
    else:
        w = np.ones(nnz)
    return SparseTensor.from_arrays(idx, w, shape)


@pytest.fixture
def curse():
    return make_curse()


@pytest.fixture
def curse5():
    return make_curse5()


@pytest.fixture
def four_node():
    return make_four_node()


@pytest.fixture
def aggregate():
    return make_aggregate()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# ---------------------------------------------------------------------------
# acceptance report: one line per criterion in the terminal summary

_ACCEPTANCE = []


@pytest.fixture
def report():
    def record(number, title, passed, detail=""):
        _ACCEPTANCE.append((number, title, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_ACCEPTANCE, key=lambda r: (r[0], r[1])):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] {number}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
