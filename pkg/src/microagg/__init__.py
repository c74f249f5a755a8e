"""Optimal univariate microaggregation.

Clusters scalar data into groups of at least k points while minimizing a
distortion cost (SSE, SAE, max distance, round-up or round-down), with
solvers from O(n^2) down to O(n) on sorted input, float-hardened sum
handling, and exhaustive oracles for validation.
"""

from .costs import (AdaptedCost, AdaptScheme, CostCalculator, CostKind,
                    PrefixStore, SortedDataset, SumMode, preprocess)
from .oracle import (exhaustive_all_partitions, exhaustive_ordered,
                     verify_counterexamples)
from .smawk import ColMinResult, MatrixOracle, col_minima, col_minima_brute
from .solvers import (Algorithm, Clustering, ImplicitSolution, SolverOptions,
                      backtrack, rebase_min_costs, segment_costs,
                      segment_representatives, solve, solve_classic_n2,
                      solve_simple, solve_simple_plus, solve_staggered,
                      solve_wilber, staggered_blocks)

__version__ = "0.1.0"

__all__ = [
    "AdaptedCost",
    "AdaptScheme",
    "Algorithm",
    "Clustering",
    "ColMinResult",
    "CostCalculator",
    "CostKind",
    "ImplicitSolution",
    "MatrixOracle",
    "PrefixStore",
    "SolverOptions",
    "SortedDataset",
    "SumMode",
    "backtrack",
    "col_minima",
    "col_minima_brute",
    "exhaustive_all_partitions",
    "exhaustive_ordered",
    "preprocess",
    "rebase_min_costs",
    "segment_costs",
    "segment_representatives",
    "solve",
    "solve_classic_n2",
    "solve_simple",
    "solve_simple_plus",
    "solve_staggered",
    "solve_wilber",
    "staggered_blocks",
    "verify_counterexamples",
]
