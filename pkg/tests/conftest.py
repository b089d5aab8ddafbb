import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from treewalks.treekit import Tree, prufer_decode


def random_tree(rng: random.Random, n: int) -> Tree:
    if n == 1:
        return Tree(1, ())
    if n == 2:
        return Tree(2, ((0, 1),))
    return prufer_decode([rng.randrange(n) for _ in range(n - 2)], n)


@st.composite
def trees(draw, min_n=2, max_n=12):
    n = draw(st.integers(min_n, max_n))
    if n == 2:
        return Tree(2, ((0, 1),))
    word = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    return prufer_decode(word, n)


def to_nx(t: Tree) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(t.n))
    g.add_edges_from(t.edges)
    return g


def matrix_power_diagonal(t: Tree, k: int) -> list[int]:
    """Diagonal of A^k by dense integer matrix multiplication."""
    n = t.n
    a = [[0] * n for _ in range(n)]
    for u, v in t.edges:
        a[u][v] = a[v][u] = 1
    p = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(k):
        p = [[sum(p[i][m] * a[m][j] for m in range(n)) for j in range(n)] for i in range(n)]
    return [p[i][i] for i in range(n)]


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
