"""
Greedy trees dominate their degree class
========================================

Build the greedy tree of a degree sequence, list every tree with the same
degrees, and compare their closed-walk vectors prefix by prefix.
"""

from itertools import accumulate

from treewalks import build_greedy_tree, enumerate_trees, validate_tree_degseq
from treewalks.degseq import compare_majorization
from treewalks.treekit import canonical_form
from treewalks.verifier import dense_r_max, strictness_search, verify_maintheorem1
from treewalks.walkcount import closed_walks_power

pi = validate_tree_degseq([1, 3, 1, 2, 3, 2, 1, 1])
print("degree sequence:", pi)

# Vertices are labelled in BFS order, so vertex i has degree pi[i].
greedy, bfs = build_greedy_tree(pi)
print("greedy edges:", greedy.edges)
print("levels:", [list(level) for level in bfs.levels])

# Every unlabelled tree with these degrees, one per isomorphism class.
trees = list(enumerate_trees(pi))
print(len(trees), "trees")

k = 6
cg = closed_walks_power(greedy, k)
top = list(accumulate(cg.sorted_desc()))
for t in trees:
    cv = closed_walks_power(t, k)
    verdict = compare_majorization(cv.counts, cg.counts)
    mark = "greedy" if canonical_form(t) == canonical_form(greedy) else verdict.relation.value
    print(f"{canonical_form(t):32s} prefix sums {list(accumulate(cv.sorted_desc()))}  {mark}")
print(f"{'greedy top-r sums':32s}             {top}")

# The same check, packaged.
report = verify_maintheorem1(pi, k)
print(report.status, report.witness)

# Smallest even length at which each non-greedy tree falls strictly behind.
print(strictness_search(pi, k_max=12).witness)

# Best r-vertex walk sum over the whole class, certified by the greedy tree.
for r in (1, 3, 5):
    res = dense_r_max(pi, k, r, brute_force=True)
    print(f"r={r}: {res.value} on vertices {res.subset}, brute force {res.brute_force_value}")
