"""Leaf (induced) path partitions of DAGs and recognition of forest-based networks."""

from .dag import (
    CyclicGraphError,
    Dag,
    StructureReport,
    UndirectedGraph,
    format_dag,
    format_undirected,
    parse_dag,
    parse_undirected,
    to_dot,
)
from .errors import BudgetExceededError, NotSemiBinaryError
from .hardness import (
    GadgetMap,
    NaeFormula,
    NotNaeError,
    assignment_to_partition,
    build,
    networkize,
    parse_cnf,
    single_root,
    switcher_route,
    witness_weak_pp,
)
from .ipp import (
    EndpointSpec,
    leaf_ipp_exact,
    restricted_2ipp,
    translate_partition_to_assignment,
    two_ipp,
)
from .orchard import (
    Cherry,
    CherryKind,
    CherrySequence,
    find_cherries,
    orchard_leaf_ipp,
    pick_cherry,
    random_orchard,
    unpick_cherry,
)
from .partition import (
    Certification,
    InvalidForestError,
    Kind,
    PathPartition,
    SpanningForest,
    bipartite_graph_of,
    certified_partition,
    certify,
    forest_to_leaf_partition,
    is_weakly_forest_based,
    max_matching,
    min_path_partition,
)
from .twosat import Equal, NotEqual, TwoSatInstance
from .twosat import solve as solve_two_sat
from .unrooted import (
    UnrootedNetwork,
    certify_unrooted_leaf_ipp,
    four_leaf_forest_based,
    is_forest_based_unrooted_exact,
    turing_driver,
)

__all__ = [
    "BudgetExceededError",
    "Certification",
    "Cherry",
    "CherryKind",
    "CherrySequence",
    "CyclicGraphError",
    "Dag",
    "EndpointSpec",
    "Equal",
    "GadgetMap",
    "InvalidForestError",
    "Kind",
    "NaeFormula",
    "NotEqual",
    "NotNaeError",
    "NotSemiBinaryError",
    "PathPartition",
    "SpanningForest",
    "StructureReport",
    "TwoSatInstance",
    "UndirectedGraph",
    "UnrootedNetwork",
    "assignment_to_partition",
    "bipartite_graph_of",
    "build",
    "certified_partition",
    "certify",
    "certify_unrooted_leaf_ipp",
    "find_cherries",
    "forest_to_leaf_partition",
    "format_dag",
    "format_undirected",
    "four_leaf_forest_based",
    "is_forest_based_unrooted_exact",
    "is_weakly_forest_based",
    "leaf_ipp_exact",
    "max_matching",
    "min_path_partition",
    "networkize",
    "orchard_leaf_ipp",
    "parse_cnf",
    "parse_dag",
    "parse_undirected",
    "pick_cherry",
    "random_orchard",
    "restricted_2ipp",
    "single_root",
    "solve_two_sat",
    "switcher_route",
    "to_dot",
    "translate_partition_to_assignment",
    "turing_driver",
    "two_ipp",
    "unpick_cherry",
    "witness_weak_pp",
]

__version__ = "0.1.0"
