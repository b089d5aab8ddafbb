"""
Moving between degree sequences
===============================

Weak majorization of degree sequences carries over to the walk vectors of
their greedy trees. This script walks a unit-step chain and looks at the
extremal sequences of a few tree classes.
"""

from treewalks import build_greedy_tree, validate_tree_degseq
from treewalks.degseq import compare_majorization, corollary_sequence, majorization_chain
from treewalks.verifier import verify_corollary, verify_maintheorem2
from treewalks.walkcount import closed_walks_power

path = validate_tree_degseq([2] * 6 + [1, 1])
star = corollary_sequence("star", 8)
print(compare_majorization(path.degrees, star.degrees).relation.value)

# Each step moves one unit of degree upward; every step is itself comparable.
k = 4
for p in majorization_chain(path, star):
    print(f"{str(p):18s}", closed_walks_power(build_greedy_tree(p)[0], k).sorted_desc())

print(verify_maintheorem2(path, star, k).witness)

# Sequences of different length compare after padding with zeros.
small = validate_tree_degseq([3, 1, 1, 1])
print(verify_maintheorem2(small, star, 6).status)

# Extremal sequences for bounded maximum degree, number of leaves, and
# independence number.
print("max degree 3: ", corollary_sequence("bounded_degree", 8, 3))
print("4 leaves:     ", corollary_sequence("leaf_count", 8, 4))
print("independence 5:", corollary_sequence("independence", 8, 5))

for kind in ("star", "bounded_degree", "leaf_count", "independence"):
    r = verify_corollary(kind, 8, 6)
    print(f"{kind:15s} {r.status} over {r.witness['trees_checked']} trees")
