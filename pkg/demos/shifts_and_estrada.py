"""
Edge shifts and the Estrada index
=================================

Moving a branch towards an earlier vertex of its level never lowers the
walk vector of a level greedy tree. Summing walk counts with factorial
weights gives the Estrada index, which we check against the spectrum.
"""

import numpy as np

from treewalks import build_greedy_tree, path_tree, star_tree, validate_tree_degseq
from treewalks.treekit import RootedView
from treewalks.verifier import admissible_shifts, edge_shift_sweep, verify_edge_shift
from treewalks.walkcount import estrada_index_eigen, estrada_series

pi = validate_tree_degseq([3, 2, 2, 1, 1, 1])
g, bfs = build_greedy_tree(pi)

# Shift the leaf under vertex 2 onto vertex 1, which comes first on level 1.
r = verify_edge_shift(g, bfs.view, 2, 5, 1, 4)
print("forward shift:", r.status)

# Shifts that ignore the BFS order can go either way.
r = verify_edge_shift(g, RootedView.at_vertex(g, 1), 0, 2, 4, 4)
print("arbitrary shift:", r.status, "failing prefix", r.witness["failing_prefix"])

print(sum(1 for _ in admissible_shifts(g)), "forward shifts,",
      sum(1 for _ in admissible_shifts(g, "any")), "same-level shifts in all")
print(edge_shift_sweep(pi, 6).witness)

# Truncated moment series against the eigenvalue sum.
for t, name in ((path_tree(2), "P2"), (star_tree(7), "S7"), (g, "greedy")):
    value, K, bound = estrada_series(t, 1e-9)
    print(f"{name:7s} series {value:.12f} ({K + 1} terms, tail < {bound:.1e})  eigen {estrada_index_eigen(t):.12f}")

print("P2 closed form:", np.e + 1 / np.e)
s = np.sqrt(6)
print("S7 closed form:", np.exp(s) + np.exp(-s) + 5)
