"""Closed walks on trees, greedy trees and weak majorization."""

from .degseq import (
    DegreeSequence,
    LeveledDegreeSequence,
    MajorizationVerdict,
    Relation,
    compare_majorization,
    corollary_sequence,
    majorization_chain,
    parse_degseq,
    tree_degree_sequences,
    validate_tree_degseq,
    weakly_majorized,
)
from .errors import TreeWalksError
from .treekit import (
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
    path_tree,
    root_views,
    star_tree,
)
from .walkcount import (
    WalkVector,
    closed_walks_bruteforce,
    closed_walks_power,
    edge_closed_walks,
    estrada_index,
    hat_closed_walks,
    hat_edge_closed_walks,
    level_census,
    spectral_moment,
    walk_vector_by_recurrence,
)
from .verifier import (
    SuiteConfig,
    VerificationReport,
    check_majorization_lemma,
    dense_r_max,
    run_suite,
    verify_edge_shift,
    verify_maintheorem1,
    verify_maintheorem2,
)

__version__ = "0.1.0"
