"""
Counting closed walks on a tree
===============================

Per-vertex closed-walk counts, two ways, plus the level bookkeeping that
the recurrence engine is built on.
"""

from treewalks import RootedView, path_tree, star_tree
from treewalks.walkcount import (
    closed_walks_bruteforce,
    closed_walks_power,
    hat_closed_walks,
    hat_edge_closed_walks,
    level_census,
    spectral_moments,
    walk_vector_by_recurrence,
)

# A path on four vertices. At length 2 the counts are just the degrees.
p4 = path_tree(4)
print("P4, k=2:", closed_walks_power(p4, 2).counts)
print("P4, k=4:", closed_walks_power(p4, 4).counts)

# Odd lengths vanish on any tree.
print("P4, k=5:", closed_walks_power(p4, 5).counts)

# The recurrence engine works from a rooted view. Any root gives the same vector.
for rv in (RootedView.at_vertex(p4, 0), RootedView.at_edge(p4, 1, 2)):
    print(rv.describe(), walk_vector_by_recurrence(rv, 8).counts)

# Explicit enumeration agrees on small cases.
print("brute force at vertex 1, k=8:", closed_walks_bruteforce(p4, 8, 1))

# Group the walks from the end vertex by the levels they visit.
census = level_census(RootedView.at_vertex(p4, 0), 0, 4)
for levels, count in sorted(census.counts.items()):
    print(levels, count)

# Walks confined below a vertex, and those that start along a given child edge.
s5 = star_tree(5)
rv = RootedView.at_vertex(s5, 0)
print("star centre, confined, k=4:", hat_closed_walks(rv, 0, 4))
print("leaf, confined, k=2:", hat_closed_walks(rv, 1, 2))
print("centre to leaf 1, k=4:", hat_edge_closed_walks(rv, 0, 1, 4))

# Spectral moments add the counts up; counts are exact Python integers.
print("moments of S5:", spectral_moments(s5, 8))
print("centre of S30 at k=60:", closed_walks_power(star_tree(30), 60)[0])
