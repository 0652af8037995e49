"""Set partition pattern avoidance (Klazar containment) toolbox.

Thin re-export of the compiled core: partitions, containment with witnesses,
thickness/permutability, avoidance counting, parallel permutation avoidance,
d-dimensional matrix avoidance, and Monte-Carlo probes of random orders.
"""

from klazar._core import (  # noqa: F401
    DomainError,
    GuardError,
    SetPartition,
    antichain_check,
    as_tuple,
    build_correspondent,
    build_perm_matrix,
    contains,
    count_avoiders,
    count_avoiding_matrices,
    count_parallel_avoiders,
    engine_version,
    estimate_qk,
    exponent_table,
    grid_implication_check,
    grid_matrix,
    is_layered,
    lowerbound_construction,
    matrix_contains,
    max_ones_avoiding,
    parallel_contains,
    permutability,
    permutability_oracle,
    rank,
    restrict,
    run_mc,
    sample_points,
    split_decompose,
    standardize,
    strip_singletons,
    thickness,
    thickness_oracle,
    tuple_from_points,
)

parse = SetPartition.parse

__all__ = [
    "DomainError",
    "GuardError",
    "SetPartition",
    "antichain_check",
    "as_tuple",
    "build_correspondent",
    "build_perm_matrix",
    "contains",
    "count_avoiders",
    "count_avoiding_matrices",
    "count_parallel_avoiders",
    "engine_version",
    "estimate_qk",
    "exponent_table",
    "grid_implication_check",
    "grid_matrix",
    "is_layered",
    "lowerbound_construction",
    "matrix_contains",
    "max_ones_avoiding",
    "parallel_contains",
    "parse",
    "permutability",
    "permutability_oracle",
    "rank",
    "restrict",
    "run_mc",
    "sample_points",
    "split_decompose",
    "standardize",
    "strip_singletons",
    "thickness",
    "thickness_oracle",
    "tuple_from_points",
]
