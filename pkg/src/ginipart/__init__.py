"""Minimum weighted-Gini partitioning through its reduction to weighted k-means."""

from .impurity import (
    ContractViolation,
    DomainError,
    GiniInstance,
    Partition,
    entropy_impurity,
    gini_impurity,
    partition_cost_eq1,
    partition_cost_eq2,
    weighted_gini,
)
from .reduction import (
    CentroidSet,
    KMeansInstance,
    WeightedPoint,
    c1_check,
    gini_gap_identity,
    kmeans_cost,
    merge_identical,
    normalize,
    objective_equivalence,
    optimal_centers,
)
from .solvers import (
    PtasConfig,
    SolveResult,
    approximation_ratio,
    solve_brute_force,
    solve_lloyd,
    solve_ptas,
)

__version__ = "0.1.0"
