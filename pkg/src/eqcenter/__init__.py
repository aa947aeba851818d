"""Solvers, oracles and benchmarks for alpha-equitable k-center clustering.

Each point ``j`` has a set of similar points and is treated fairly when its
distance to its assigned center is within a factor ``alpha`` of theirs:
of the best of them (``Variant.PP``) or of their average (``Variant.AG``).
"""
from .assignment import optimal_assignment, optimal_value_for_centers
from .baseline import FilterResult, gonzalez, hochbaum_shmoys
from .eqsolver import (
    CenterSelection,
    GuessOutcome,
    InfeasibleError,
    Mode,
    best_guess,
    select_centers,
    solve,
    solve_for_guess,
)
from .instance import (
    Instance,
    SimilarityFamily,
    Solution,
    Variant,
    check_fairness,
    construct_similarity_sets,
    enforce_assumption,
    generate_cycle_instance,
    generate_pof_instance,
    generate_random_instance,
)
from .metricspace import build_euclidean, pairwise_distance_candidates, read_csv, validate_metric
from .metrics import MetricsReport, evaluate
from .oracle import OracleBudget, brute_fair_optimum, brute_unfair_optimum, exhaustive_assignment_check

__version__ = "0.1.0"
