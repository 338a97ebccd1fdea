"""Edge-based districting: models, solvers, reductions and a CLI."""
from .bounds import build_auxiliary_tree, tightness_bound, two_district_partition
from .complexity import Classification, Complexity, classification_table, classify
from .dispatch import run_solver, select_solver
from .estimators import (
    AutoDistricter,
    ExactDistricter,
    FractionalDistricter,
    GreedyDistricter,
    RoundingDistricter,
    TrivialDistricter,
    TwoDistrictPartitioner,
)
from .exact import min_vertex_cover, solve_3partition, solve_exact
from .exceptions import (
    DisconnectedGraph,
    DistrictingError,
    Infeasible,
    InfeasibleBounds,
    InvalidInstance,
    LimitExceeded,
    MalformedInstance,
    MeaninglessVariant,
    NonIntegralBounds,
    NotOptimalInput,
    TooFewEdges,
    UnsupportedVariant,
    WeightedInstance,
)
from .graph import Graph, graph_from_pairs, shortest_paths
from .model import Assignment, BalanceSpec, Instance, VariantSpec, objective, validate
from .reductions import (
    PartitionInput,
    build_3partition_instance,
    build_arms_instance,
    build_weighted_star_instance,
    random_connected_graph,
    vertex_cover_via_districting,
)
from .solvers import greedy_assign, round_fractional, solve_fractional_assignment, solve_trivial

__version__ = "0.1.0"
