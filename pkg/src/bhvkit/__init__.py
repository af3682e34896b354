"""Combinatorics and local geometry of phylogenetic tree space.

Splits and compatibility, tree topologies with orthant counting, the split
compatibility graph and its automorphisms, epsilon-ball volumes with exact
rational coefficients, and Newick ingestion. Every closed-form count or
bound has a brute-force oracle in the test suite.
"""

from .errors import (
    BhvError,
    DegreeTwoInternal,
    DuplicateLeaf,
    EnumerationTooLarge,
    EpsilonTooLarge,
    IncompatiblePair,
    KOutOfRange,
    LeafCountMismatch,
    LeafOutOfRange,
    NegativeLength,
    NegativeOrEven,
    NewickSyntaxError,
    NonpositiveRadius,
    POutOfRange,
    SearchBudgetExceeded,
    SubsetTooSmall,
    TooLarge,
    TooManySplits,
    UnknownLeafName,
    VertexNotFound,
)
from .linkgraph import (
    AutomorphismGroup,
    LinkGraph,
    brute_force_automorphisms,
    build_link_graph,
    degree_formula,
    downward_neighbors,
    ekr_independent_sets,
    kneser_subgraph,
    link_report,
    maximum_independent_sets,
    neighbors_of_size,
    permutation_to_automorphism,
    upward_neighbors,
    verify_degrees,
)
from .measure import (
    BallVolume,
    TreePoint,
    ball_volume,
    ball_volume_bounds,
    cone_point,
    distance_upper_bound,
    euclidean_ball_volume,
    is_cone_point,
    same_orthant_distance,
)
from .newick import NewickNode, parse_newick, splits_from_tree, to_newick
from .splits import (
    Permutation,
    Split,
    all_permutations,
    apply_permutation,
    are_compatible,
    compatible_disjoint_or_nested,
    enumerate_splits,
    make_split,
)
from .topology import (
    InternalTree,
    Topology,
    count_refining_orthants,
    degree_sequence,
    double_factorial,
    enumerate_binary_refinements,
    enumerate_binary_topologies,
    is_binary,
    make_topology,
    reconstruct_tree,
)

__version__ = "0.1.0"
