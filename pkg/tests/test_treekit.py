import json
import math
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import to_nx, trees
from treewalks.degseq import LeveledDegreeSequence, tree_degree_sequences, validate_tree_degseq
from treewalks.errors import (
    InconsistentLevels,
    InvalidTree,
    NotABranchEdge,
    NotSameLevel,
    TooLarge,
)
from treewalks.treekit import (
    BfsOrdering,
    Forest,
    RootedView,
    Tree,
    build_greedy_tree,
    build_level_greedy_forest,
    canonical_form,
    edge_shift,
    enumerate_trees,
    find_bfs_ordering,
    is_bfs_ordering,
    labeled_tree_count,
    leveled_degree_sequence,
    multiset_permutations,
    path_tree,
    prufer_decode,
    root_views,
    star_tree,
)


def seq(*d):
    return validate_tree_degseq(d)


def test_tree_invariants():
    with pytest.raises(InvalidTree):
        Tree(3, ((0, 1),))
    with pytest.raises(InvalidTree):
        Tree(3, ((0, 1), (1, 2), (2, 0)))
    with pytest.raises(InvalidTree):
        Forest(2, ((0, 0),))
    with pytest.raises(InvalidTree):
        Forest(3, ((0, 1), (1, 0)))


def test_text_and_json_roundtrip():
    t = path_tree(4)
    assert t.to_text() == "4\n0 1\n1 2\n2 3\n"
    assert Tree.from_text(t.to_text()) == t
    assert Tree.from_json(json.dumps(t.to_json())) == t
    assert t.to_json() == {"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]}


def test_greedy_examples():
    star, _ = build_greedy_tree(seq(3, 1, 1, 1))
    assert star.degrees == (3, 1, 1, 1)
    path, _ = build_greedy_tree(seq(2, 2, 1, 1))
    assert canonical_form(path) == canonical_form(path_tree(4))
    g, bfs = build_greedy_tree(seq(3, 2, 2, 1, 1, 1))
    assert g.edges == ((0, 1), (0, 2), (0, 3), (1, 4), (2, 5))
    assert is_bfs_ordering(g, bfs.view, bfs.order)
    assert [g.degrees[v] for v in g.adjacency[0]] == [2, 2, 1]


def test_greedy_single_edge():
    g, bfs = build_greedy_tree(seq(1, 1))
    assert g.edges == ((0, 1),)
    assert list(enumerate_trees(seq(1, 1))) == [g]


@pytest.mark.parametrize("n", range(2, 12))
def test_greedy_properties(n):
    for pi in tree_degree_sequences(n):
        g, bfs = build_greedy_tree(pi)
        assert g.degree_sequence() == pi.degrees
        assert g.degrees == pi.degrees  # label == BFS position
        assert is_bfs_ordering(g, bfs.view, bfs.order)
        lv = bfs.levels
        for upper, lower in zip(lv, lv[1:]):
            assert min(g.degrees[v] for v in upper) >= max(g.degrees[v] for v in lower)


def test_level_greedy_forest_examples():
    f, bfs = build_level_greedy_forest(LeveledDegreeSequence(((2,), (1, 1))))
    assert f.edges == ((0, 1), (0, 2))
    t, bfs = build_level_greedy_forest(LeveledDegreeSequence(((2, 1), (1,)), edge_rooted=True))
    assert sorted(t.edges) == [(0, 1), (0, 2)]
    assert bfs.view.edge_rooted and t.degrees[0] == 2
    f, bfs = build_level_greedy_forest(LeveledDegreeSequence(((3,), (2, 1, 1), (1,))))
    assert f.edges == ((0, 1), (0, 2), (0, 3), (1, 4))
    assert is_bfs_ordering(f, bfs.view, bfs.order)


def test_level_greedy_forest_multiple_roots():
    lds = LeveledDegreeSequence(((2, 1), (2, 1, 1), (1,)))
    f, bfs = build_level_greedy_forest(lds)
    assert isinstance(f, Forest) and not isinstance(f, Tree)
    assert len(f.components()) == 2
    assert leveled_degree_sequence(bfs.view) == lds
    assert is_bfs_ordering(f, bfs.view, bfs.order)


def test_inconsistent_levels():
    with pytest.raises(InconsistentLevels):
        build_level_greedy_forest(LeveledDegreeSequence(((2,), (1,))))


def test_bfs_ordering_predicate():
    s = star_tree(5)
    assert is_bfs_ordering(s, RootedView.at_vertex(s, 0), range(5))
    p = path_tree(5)
    assert is_bfs_ordering(p, RootedView.at_vertex(p, 0), range(5))
    g, bfs = build_greedy_tree(seq(3, 2, 2, 1, 1, 1))
    # vertex 3 (a leaf) ahead of the degree-2 vertex 2 on level 1
    assert not is_bfs_ordering(g, bfs.view, [0, 1, 3, 2, 4, 5])
    # children out of their parents' order
    assert not is_bfs_ordering(g, bfs.view, [0, 1, 2, 3, 5, 4])
    assert not is_bfs_ordering(g, bfs.view, [0, 1, 2])


@given(trees(max_n=10))
@settings(max_examples=60, deadline=None)
def test_find_bfs_ordering_is_valid(t):
    for rv in root_views(t):
        bfs = find_bfs_ordering(rv)
        if bfs is not None:
            assert is_bfs_ordering(t, rv, bfs.order)
            # a level greedy tree is determined by its leveled sequence
            g, _ = build_level_greedy_forest(leveled_degree_sequence(rv))
            assert canonical_form(g) == canonical_form(t)


def _brute_has_bfs(rv):
    from itertools import permutations

    for order in permutations(range(rv.base.n)):
        if is_bfs_ordering(rv.base, rv, order):
            return True
    return False


@pytest.mark.parametrize("n", range(2, 8))
def test_find_bfs_ordering_against_permutation_search(n):
    for pi in tree_degree_sequences(n):
        for t in enumerate_trees(pi):
            for rv in root_views(t):
                assert (find_bfs_ordering(rv) is not None) == _brute_has_bfs(rv)


def test_multiset_permutations():
    got = list(multiset_permutations([1, 0, 1]))
    assert got == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert len(list(multiset_permutations("aabbc"))) == math.factorial(5) // 4


def test_prufer_decode_matches_networkx():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(3, 12)
        word = [rng.randrange(n) for _ in range(n - 2)]
        ours = prufer_decode(word, n)
        ref = nx.from_prufer_sequence(word)
        assert sorted(ours.edges) == sorted(tuple(sorted(e)) for e in ref.edges)


def test_enumerate_examples():
    assert len(list(enumerate_trees(seq(4, 1, 1, 1, 1)))) == 1
    pi = seq(3, 2, 2, 1, 1, 1)
    labeled = list(enumerate_trees(pi, "labeled"))
    assert len(labeled) == 12 == labeled_tree_count(pi)
    unlabeled = list(enumerate_trees(pi))
    assert len(unlabeled) == 2
    assert not nx.is_isomorphic(to_nx(unlabeled[0]), to_nx(unlabeled[1]))


def test_enumerate_guard():
    with pytest.raises(TooLarge):
        next(enumerate_trees(seq(*([2] * 11 + [1, 1])), max_n=12))


@pytest.mark.parametrize("n", range(2, 10))
def test_unlabeled_total_matches_networkx(n):
    total = 0
    for pi in tree_degree_sequences(n):
        for t in enumerate_trees(pi, "labeled"):
            assert t.degrees == pi.degrees
        total += len(list(enumerate_trees(pi)))
    assert total == sum(1 for _ in nx.nonisomorphic_trees(n))


def test_canonical_examples():
    p4 = path_tree(4)
    assert canonical_form(p4) == canonical_form(p4.relabel([2, 0, 3, 1]))
    assert canonical_form(star_tree(4)) != canonical_form(p4)
    a, b = enumerate_trees(seq(3, 2, 2, 1, 1, 1))
    assert canonical_form(a) != canonical_form(b)


def test_canonical_encoding_is_stable():
    assert canonical_form(path_tree(2)) == "E()()"
    assert canonical_form(path_tree(3)) == "V(()())"
    assert canonical_form(star_tree(4)) == "V(()()())"
    assert canonical_form(path_tree(4)) == "E(())(())"


@given(trees(max_n=12), st.randoms(use_true_random=False))
def test_canonical_invariant_under_relabeling(t, r):
    perm = list(range(t.n))
    r.shuffle(perm)
    assert canonical_form(t.relabel(perm)) == canonical_form(t)


@given(trees(max_n=9), trees(max_n=9))
@settings(max_examples=150)
def test_canonical_iff_isomorphic(a, b):
    same = a.n == b.n and nx.is_isomorphic(to_nx(a), to_nx(b))
    assert (canonical_form(a) == canonical_form(b)) == same


def test_edge_shift_examples():
    g, bfs = build_greedy_tree(seq(3, 2, 2, 1, 1, 1))
    rv = bfs.view
    t = edge_shift(g, rv, 2, 5, 1)
    assert t.degree_sequence() == (3, 3, 1, 1, 1, 1)
    assert edge_shift(g, rv, 1, 4, 1) is g
    with pytest.raises(NotABranchEdge):
        edge_shift(g, rv, 1, 0, 2)
    with pytest.raises(NotSameLevel):
        edge_shift(g, rv, 1, 4, 0)
    with pytest.raises(NotABranchEdge):
        edge_shift(g, rv, 1, 5, 2)


def test_edge_shift_root_edge_is_not_a_branch():
    p = path_tree(4)
    rv = RootedView.at_edge(p, 1, 2)
    with pytest.raises(NotABranchEdge):
        edge_shift(p, rv, 1, 2, 2)


@given(trees(min_n=3, max_n=10), st.randoms(use_true_random=False))
@settings(max_examples=80)
def test_edge_shift_degree_bookkeeping_and_reverse(t, r):
    views = list(root_views(t))
    rv = r.choice(views)
    moves = [(x, x1, xp) for x in range(t.n) for x1 in rv.children[x]
             for xp in range(t.n) if xp != x and rv.level[xp] == rv.level[x]]
    if not moves:
        return
    x, x1, xp = r.choice(moves)
    s = edge_shift(t, rv, x, x1, xp)
    d0, d1 = t.degrees, s.degrees
    assert d1[x] == d0[x] - 1 and d1[xp] == d0[xp] + 1
    assert all(d1[v] == d0[v] for v in range(t.n) if v not in (x, xp))
    back_view = RootedView(s, rv.roots, rv.edge_rooted)
    assert back_view.level == rv.level
    assert canonical_form(edge_shift(s, back_view, xp, x1, x)) == canonical_form(t)


def test_root_views_examples():
    p2 = path_tree(2)
    views = list(root_views(p2))
    assert sum(not v.edge_rooted for v in views) == 2 and sum(v.edge_rooted for v in views) == 1
    p4 = path_tree(4)
    assert RootedView.at_vertex(p4, 0).level == (0, 1, 2, 3)
    s = star_tree(4)
    rv = RootedView.at_vertex(s, 1)
    assert rv.level == (1, 0, 2, 2)
    assert rv.parent == (1, None, 0, 0)


@given(trees(max_n=12))
def test_root_view_levels_are_distances(t):
    g = to_nx(t)
    dist = dict(nx.all_pairs_shortest_path_length(g))
    for rv in root_views(t):
        for v in range(t.n):
            assert rv.level[v] == min(dist[r][v] for r in rv.roots)
            p = rv.parent[v]
            if p is not None:
                assert rv.level[v] == rv.level[p] + 1
    assert len(list(root_views(t))) == 2 * t.n - 1


def test_rooted_view_rejects_bad_roots():
    p = path_tree(4)
    with pytest.raises(InvalidTree):
        RootedView.at_edge(p, 0, 2)
    with pytest.raises(InvalidTree):
        RootedView.at_vertex(p, 0, 3)
