import numpy as np
import pytest
from hypothesis import strategies as st

from dagsched.taskgraph import GenSpec, TaskGraph, generate_random

ACCEPTANCE_LINES = []


@pytest.fixture
def chain():
    return TaskGraph((2, 3, 4), [(0, 1), (1, 2)])


@pytest.fixture
def diamond():
    return TaskGraph((1, 2, 3, 1), [(0, 1), (0, 2), (1, 3), (2, 3)])


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


@st.composite
def task_graphs(draw, min_n=1, max_n=8, max_et=9):
    """Arbitrary DAGs: random upper-triangular edge sets over a random task order."""
    n = draw(st.integers(min_n, max_n))
    et = draw(st.lists(st.integers(1, max_et), min_size=n, max_size=n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    perm = draw(st.permutations(range(n)))
    edges = [(perm[i], perm[j]) for (i, j), k in zip(pairs, keep) if k]
    return TaskGraph(tuple(et), edges)


def random_graph(seed, n=None, sparse=False):
    """Seeded graph with either the benchmark density or a sparse layered shape."""
    rng = np.random.default_rng(seed)
    n = n or int(rng.integers(1, 30))
    if not sparse:
        return generate_random(GenSpec(n=n, seed=seed))
    et = rng.integers(1, 10, size=n)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 2.0 / n]
    return TaskGraph(tuple(int(x) for x in et), edges)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
