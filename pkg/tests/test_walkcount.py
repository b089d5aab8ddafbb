import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import matrix_power_diagonal, random_tree, trees
from treewalks.degseq import LeveledDegreeSequence, tree_degree_sequences, validate_tree_degseq
from treewalks.errors import NotAnEdge, NotParentChild, TooLarge
from treewalks.treekit import (
    RootedView,
    Tree,
    build_greedy_tree,
    build_level_greedy_forest,
    enumerate_trees,
    find_bfs_ordering,
    path_tree,
    root_views,
    star_tree,
)
from treewalks.walkcount import (
    WalkVector,
    closed_walks_bruteforce,
    closed_walks_power,
    edge_closed_walks,
    estrada_index,
    estrada_index_eigen,
    estrada_series,
    hat_closed_walks,
    hat_edge_closed_walks,
    hat_tables,
    level_census,
    spectral_moment,
    spectral_moments,
    walk_vector_by_recurrence,
)


def test_power_examples():
    p4 = path_tree(4)
    assert closed_walks_power(p4, 0).counts == (1, 1, 1, 1)
    assert closed_walks_power(p4, 2).counts == (1, 2, 2, 1)
    assert closed_walks_power(p4, 4).counts == (2, 5, 5, 2)
    assert closed_walks_power(p4, 3).counts == (0, 0, 0, 0)


def test_bruteforce_examples():
    assert closed_walks_bruteforce(path_tree(2), 2, 0) == 1
    assert closed_walks_bruteforce(path_tree(2), 2, 1) == 1
    s4 = star_tree(4)
    assert closed_walks_bruteforce(s4, 2, 0) == 3
    assert closed_walks_bruteforce(s4, 4, 0) == 9
    with pytest.raises(TooLarge):
        closed_walks_bruteforce(star_tree(12), 20, 0, limit=1000)


@given(trees(max_n=8), st.integers(0, 8))
@settings(max_examples=60)
def test_power_matches_matrix_and_bruteforce(t, k):
    got = closed_walks_power(t, k).counts
    assert list(got) == matrix_power_diagonal(t, k)
    assert all(got[v] == closed_walks_bruteforce(t, k, v) for v in range(t.n))


def test_edge_walk_examples():
    assert edge_closed_walks(path_tree(2), 0, 1, 2) == 1
    assert edge_closed_walks(path_tree(4), 1, 0, 4) == 2
    assert edge_closed_walks(path_tree(4), 1, 0, 5) == 0
    with pytest.raises(NotAnEdge):
        edge_closed_walks(path_tree(4), 0, 2, 4)


@given(trees(max_n=12), st.integers(0, 12))
@settings(max_examples=60)
def test_edge_walks_split_vertex_walks_and_reverse(t, k):
    cv = closed_walks_power(t, k)
    for v in range(t.n):
        by_edge = [edge_closed_walks(t, v, w, k) for w in t.adjacency[v]]
        assert sum(by_edge) == (cv[v] if k else 0)
    for v, w in t.edges:
        assert edge_closed_walks(t, v, w, k) == edge_closed_walks(t, w, v, k)


def test_hat_examples():
    s4 = star_tree(4)
    rv = RootedView.at_vertex(s4, 0)
    assert hat_closed_walks(rv, 1, 2) == 0
    assert hat_closed_walks(rv, 1, 0) == 1
    assert hat_closed_walks(rv, 0, 4) == 9
    assert hat_edge_closed_walks(rv, 0, 1, 2) == 1
    with pytest.raises(NotParentChild):
        hat_edge_closed_walks(rv, 1, 0, 2)
    g, bfs = build_greedy_tree(validate_tree_degseq((3, 2, 2, 1, 1, 1)))
    # root 0, child 1 of degree 2 carrying the leaf 4
    assert hat_edge_closed_walks(bfs.view, 0, 1, 4) == 4
    assert hat_edge_closed_walks(bfs.view, 0, 1, 3) == 0


def test_hat_on_edge_root_avoids_root_edge():
    p2 = path_tree(2)
    rv = RootedView.at_edge(p2, 0, 1)
    assert hat_closed_walks(rv, 0, 2) == 0
    assert hat_closed_walks(rv, 0, 0) == 1


def _subtree_tree(rv, v):
    nodes = sorted(rv.subtree(v))
    index = {u: i for i, u in enumerate(nodes)}
    edges = tuple((index[rv.parent[u]], index[u]) for u in nodes if u != v)
    return Tree(len(nodes), edges), index[v]


@given(trees(max_n=10), st.integers(0, 5))
@settings(max_examples=60)
def test_hat_equals_power_on_extracted_subtree(t, half):
    k = 2 * half
    for rv in root_views(t):
        hat, hat_edge = hat_tables(rv, half)
        for v in range(t.n):
            sub, root = _subtree_tree(rv, v)
            expected = closed_walks_power(sub, k)[root]
            assert hat_closed_walks(rv, v, k) == expected == hat[v][half]
            p = rv.parent[v]
            if p is not None:
                assert hat_edge[v][half] == hat_edge_closed_walks(rv, p, v, k)


@given(trees(max_n=10), st.integers(0, 4))
@settings(max_examples=60)
def test_hat_convolution(t, kk):
    for rv in root_views(t):
        for v in range(t.n):
            p = rv.parent[v]
            if p is None:
                continue
            lhs = hat_edge_closed_walks(rv, p, v, 2 * kk + 2)
            rhs = sum(hat_closed_walks(rv, v, 2 * s) * hat_closed_walks(rv, p, 2 * kk - 2 * s)
                      for s in range(kk + 1))
            assert lhs == rhs


def test_census_examples():
    p2 = path_tree(2)
    assert level_census(RootedView.at_edge(p2, 0, 1), 0, 2).counts == {(0, 0, 0): 1}
    s4 = star_tree(4)
    assert level_census(RootedView.at_vertex(s4, 0), 0, 2).counts == {(0, 1, 0): 3}
    p4 = path_tree(4)
    assert level_census(RootedView.at_vertex(p4, 0), 0, 4).counts == {(0, 1, 0, 1, 0): 1, (0, 1, 2, 1, 0): 1}
    with pytest.raises(TooLarge):
        level_census(RootedView.at_vertex(p4, 0), 0, 14)


@given(trees(max_n=9), st.integers(0, 8))
@settings(max_examples=40)
def test_census_marginal_and_shape(t, k):
    cv = closed_walks_power(t, k)
    for rv in root_views(t):
        for v in range(t.n):
            census = level_census(rv, v, k)
            assert census.total == cv[v]
            for seq, c in census.counts.items():
                assert c > 0 and seq[0] == seq[-1] == rv.level[v] and len(seq) == k + 1
                for a, b in zip(seq, seq[1:]):
                    assert abs(a - b) == 1 or (rv.edge_rooted and a == b == 0)


def test_recurrence_examples():
    p4 = path_tree(4)
    assert walk_vector_by_recurrence(RootedView.at_vertex(p4, 0), 4).counts == (2, 5, 5, 2)
    s4 = star_tree(4)
    for rv in root_views(s4):
        assert walk_vector_by_recurrence(rv, 2).counts == s4.degrees
    assert walk_vector_by_recurrence(RootedView.at_edge(path_tree(2), 0, 1), 6).counts == (1, 1)
    assert walk_vector_by_recurrence(RootedView.at_vertex(p4, 1), 5).counts == (0, 0, 0, 0)


@given(trees(max_n=14), st.integers(0, 10))
@settings(max_examples=60)
def test_recurrence_matches_power_on_every_view(t, half):
    k = 2 * half
    expected = closed_walks_power(t, k)
    for rv in root_views(t):
        assert walk_vector_by_recurrence(rv, k) == expected


def test_recurrence_on_forest():
    f, bfs = build_level_greedy_forest(LeveledDegreeSequence(((2, 1), (2, 1, 1), (1,))))
    for k in (0, 2, 4, 6):
        assert walk_vector_by_recurrence(bfs.view, k) == closed_walks_power(f, k)


def test_closed_forms_on_small_trees():
    for n in range(2, 9):
        for pi in tree_degree_sequences(n):
            for t in enumerate_trees(pi):
                d = t.degrees
                assert closed_walks_power(t, 2).counts == d
                c4 = closed_walks_power(t, 4)
                for v in range(n):
                    assert c4[v] == d[v] ** 2 + sum(d[w] - 1 for w in t.adjacency[v])


@given(trees(max_n=12), st.integers(0, 6))
@settings(max_examples=40)
def test_odd_lengths_vanish(t, h):
    assert closed_walks_power(t, 2 * h + 1).total == 0


@pytest.mark.parametrize("n", range(2, 10))
def test_monotone_within_levels_on_level_greedy_views(n):
    for pi in tree_degree_sequences(n):
        for t in enumerate_trees(pi):
            vecs = {k: closed_walks_power(t, k) for k in (2, 4, 6, 8)}
            for rv in root_views(t):
                bfs = find_bfs_ordering(rv)
                if bfs is None:
                    continue
                for level in bfs.levels:
                    for k, cv in vecs.items():
                        vals = [cv[v] for v in level]
                        assert vals == sorted(vals, reverse=True), (t.edges, rv.describe(), k)


def test_spectral_moments():
    p4 = path_tree(4)
    assert spectral_moment(p4, 4) == 14
    assert spectral_moments(p4, 4) == [4, 0, 6, 0, 14]
    rng = random.Random(5)
    for _ in range(20):
        t = random_tree(rng, rng.randint(2, 15))
        assert spectral_moment(t, 2) == 2 * (t.n - 1)
        assert spectral_moments(t, 9)[1::2] == [0] * 5


def test_walk_vector_serialization():
    wv = closed_walks_power(path_tree(4), 4)
    assert wv.to_json() == {"k": 4, "counts": ["2", "5", "5", "2"]}
    assert WalkVector.from_json(wv.to_json()) == wv
    assert wv.to_csv() == "vertex,count\n0,2\n1,5\n2,5\n3,2\n"
    assert wv.total == 14 and wv.sorted_desc() == [5, 5, 2, 2]


def test_counts_are_exact_big_integers():
    wv = closed_walks_power(star_tree(30), 60)
    assert wv[0] == 29 ** 30
    assert wv.to_json()["counts"][0] == str(29 ** 30)


def test_estrada_closed_forms():
    tol = 1e-9
    assert abs(estrada_index(path_tree(2), tol) - (math.e + 1 / math.e)) < tol
    for n in range(3, 11):
        s = math.sqrt(n - 1)
        exact = math.exp(s) + math.exp(-s) + (n - 2)
        assert abs(estrada_index(star_tree(n), tol) - exact) < tol


@given(trees(max_n=20))
@settings(max_examples=40)
def test_estrada_series_matches_eigenvalues(t):
    value, K, bound = estrada_series(t, 1e-9)
    assert bound < 1e-9 and K >= 1
    assert abs(value - estrada_index_eigen(t)) < 1e-9 * max(1.0, value) + 1e-9


def test_estrada_rejects_nonpositive_tol():
    with pytest.raises(ValueError):
        estrada_series(path_tree(3), 0)
    with pytest.raises(TooLarge):
        estrada_index_eigen(path_tree(65))
