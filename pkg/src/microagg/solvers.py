"""Minimum-size-k clustering of scalars as a least-weight-subsequence DP.

Five solvers produce the same optimal cost through different scan orders:

  classic    O(n^2)  split scan over all feasible prefixes
  simple     O(kn)   scan limited to cluster sizes in [k, 2k-1]
  simple+    O(kn)   as simple, plus the non-decreasing-argmin clamp
  staggered  O(n)    SMAWK on diagonal blocks of the size-restricted matrix
  wilber     O(n)    generic concave-LWSS solver (no size upper bound)

All emit an implicit split array that backtracking decodes into labels.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import _kernels as _k
from .costs import (AdaptedCost, CostCalculator, CostKind, SortedDataset,
                    SumMode, preprocess, validate_combination)

__all__ = [
    "Algorithm",
    "SolverOptions",
    "ImplicitSolution",
    "Clustering",
    "solve",
    "solve_classic_n2",
    "solve_simple",
    "solve_simple_plus",
    "solve_staggered",
    "staggered_blocks",
    "solve_wilber",
    "backtrack",
    "rebase_min_costs",
    "segment_costs",
    "segment_representatives",
]

# empirical crossover between the O(kn) and O(n) solvers; hardware-dependent
K_SWITCH_DEFAULT = 256


class Algorithm:
    AUTO = "auto"
    CLASSIC_N2 = "classic"
    SIMPLE = "simple"
    SIMPLE_PLUS = "simple+"
    STAGGERED = "staggered"
    WILBER = "wilber"

    ALL = (CLASSIC_N2, SIMPLE, SIMPLE_PLUS, STAGGERED, WILBER)

    @staticmethod
    def coerce(value: str) -> str:
        v = str(value).lower()
        if v in ("simple_plus", "simpleplus"):
            v = Algorithm.SIMPLE_PLUS
        if v not in (Algorithm.AUTO,) + Algorithm.ALL:
            raise ValueError(f"unknown algorithm: {value!r}")
        return v


@dataclass(frozen=True)
class SolverOptions:
    algorithm: str = Algorithm.AUTO
    sum_mode: SumMode = SumMode.FULL_PREFIX
    rebase: bool = False
    auto_switch_k: int = K_SWITCH_DEFAULT


@dataclass(frozen=True)
class ImplicitSolution:
    """DP state: per-position optimal split plus minimal total cost.

    argmin[j-1] holds the split i minimizing MinCost[i] + C_adapt(i, j);
    min_cost(j) is the minimal total cost of the first j points.  When
    rebased is True the stored totals have been shifted toward zero and
    only differences within a live window are meaningful.
    """

    argmin: np.ndarray
    min_cost_values: np.ndarray
    min_cost_forbidden: np.ndarray
    k: int
    rebased: bool = False
    eval_count: int = 0

    @property
    def n(self) -> int:
        return int(self.argmin.shape[0])

    def min_cost(self, j: int) -> AdaptedCost:
        if self.min_cost_forbidden[j]:
            return AdaptedCost.forbidden(j)
        return AdaptedCost.finite(float(self.min_cost_values[j]))


@dataclass(frozen=True)
class Clustering:
    """Finished clustering with labels mapped back to input order.

    boundaries are split positions in sorted order: cluster c covers
    sorted indices [boundaries[c], boundaries[c+1]).  total_cost is always
    recomputed from the final clusters with the true cost function, so
    surrogate sum modes and rebasing never leak into the reported value.
    """

    labels: np.ndarray
    boundaries: np.ndarray
    representatives: np.ndarray
    total_cost: float
    algorithm_used: str
    cost_kind: CostKind
    k: int
    sum_mode: SumMode = SumMode.FULL_PREFIX
    size_feasible: bool = True
    elapsed_seconds: float = 0.0

    @property
    def num_clusters(self) -> int:
        return int(self.boundaries.shape[0]) - 1

    def cluster_sizes(self) -> np.ndarray:
        return np.diff(self.boundaries)


def _forbidden_prefix(n: int, k: int) -> np.ndarray:
    fb = np.zeros(n + 1, dtype=bool)
    fb[1:min(k, n + 1)] = True
    return fb


def _wrap(calc: CostCalculator, arg: np.ndarray, mc: np.ndarray,
          rebased: bool, evals: int) -> ImplicitSolution:
    n = calc.n
    return ImplicitSolution(argmin=arg[1:], min_cost_values=mc,
                            min_cost_forbidden=_forbidden_prefix(n, calc.k),
                            k=calc.k, rebased=rebased, eval_count=int(evals))


def _dp_arrays(n: int):
    arg = np.zeros(n + 1, dtype=np.int64)
    mc = np.zeros(n + 1, dtype=np.float64)
    return arg, mc


def _check_n(calc: CostCalculator, least: int, name: str) -> None:
    if calc.n < least:
        raise ValueError(f"{name} needs n >= {least}, got n={calc.n}")


def _no_partial(calc: CostCalculator, name: str) -> None:
    if calc.mode is SumMode.PARTIAL_PREFIX:
        raise ValueError(f"{name} queries unbounded windows; partial prefix "
                         "sums only cover windows up to 2k-1")


def solve_classic_n2(calc: CostCalculator) -> ImplicitSolution:
    """O(n^2) reference DP; only the minimum cluster size is enforced."""
    _check_n(calc, calc.k, "classic")
    _no_partial(calc, "classic")
    arg, mc = _dp_arrays(calc.n)
    evals = _k.solve_classic_kernel(calc.data.values, calc._s1, calc._s2,
                                    calc._kind_code, calc._mode_code, calc.k,
                                    arg, mc)
    return _wrap(calc, arg, mc, False, evals)


def solve_simple(calc: CostCalculator, rebase: bool = False) -> ImplicitSolution:
    """O(kn) DP scanning only splits that give sizes in [k, 2k-1]."""
    _check_n(calc, 2 * calc.k, "simple")
    arg, mc = _dp_arrays(calc.n)
    evals = _k.solve_simple_kernel(calc.data.values, calc._s1, calc._s2,
                                   calc._kind_code, calc._mode_code, calc.k,
                                   arg, mc, False, rebase)
    return _wrap(calc, arg, mc, rebase, evals)


def solve_simple_plus(calc: CostCalculator, rebase: bool = False) -> ImplicitSolution:
    """simple with the scan start clamped to the previous column's argmin."""
    _check_n(calc, 2 * calc.k, "simple+")
    arg, mc = _dp_arrays(calc.n)
    evals = _k.solve_simple_kernel(calc.data.values, calc._s1, calc._s2,
                                   calc._kind_code, calc._mode_code, calc.k,
                                   arg, mc, True, rebase)
    return _wrap(calc, arg, mc, rebase, evals)


def staggered_blocks(n: int, k: int) -> np.ndarray:
    """SMAWK block schedule for the staggered solver, needs n >= 2k.

    Returns rows (col_lo, col_hi, row_lo, row_hi): the first block answers
    columns [2k, min(3k-1, n)] from the seeded rows [k, 2k-1]; after that,
    block b covers the k columns [bk, (b+1)k - 1] whose feasible splits
    lie in rows [(b-2)k + 1, bk - 1], with a truncated remainder block.
    Together the blocks cover every column in [2k, n] exactly once.
    """
    blocks = [(2 * k, min(3 * k - 1, n), k, 2 * k - 1)]
    if n >= 3 * k:
        nfull, rem = divmod(n - 3 * k + 1, k)
        for b in range(3, 3 + nfull):
            blocks.append((b * k, (b + 1) * k - 1, (b - 2) * k + 1,
                           b * k - 1))
        if rem > 0:
            b = 3 + nfull
            blocks.append((b * k, n, (b - 2) * k + 1, n - 1))
    return np.asarray(blocks, dtype=np.int64)


def solve_staggered(calc: CostCalculator, rebase: bool = False) -> ImplicitSolution:
    """O(n) solver applying SMAWK to blocks along the feasible diagonal."""
    _check_n(calc, 2 * calc.k, "staggered")
    arg, mc = _dp_arrays(calc.n)
    counter = np.zeros(1, dtype=np.int64)
    plan = staggered_blocks(calc.n, calc.k)
    status = _k.solve_staggered_kernel(calc.data.values, calc._s1, calc._s2,
                                       calc._kind_code, calc._mode_code,
                                       calc.k, arg, mc, rebase, plan, counter)
    if status != 0:
        raise RuntimeError("staggered solver produced a forbidden column "
                           "minimum; adapted-cost invariant broken")
    return _wrap(calc, arg, mc, rebase, counter[0])


def solve_wilber(calc: CostCalculator) -> ImplicitSolution:
    """O(n) concave-LWSS solver; cluster sizes are only bounded below."""
    _check_n(calc, calc.k, "wilber")
    _no_partial(calc, "wilber")
    arg, mc = _dp_arrays(calc.n)
    counter = np.zeros(1, dtype=np.int64)
    status = _k.solve_wilber_kernel(calc.data.values, calc._s1, calc._s2,
                                    calc._kind_code, calc._mode_code, calc.k,
                                    arg, mc, counter)
    if status != 0:
        raise RuntimeError("wilber solver produced a forbidden column "
                           "minimum; adapted-cost invariant broken")
    return _wrap(calc, arg, mc, False, counter[0])


_SOLVER_FNS = {
    Algorithm.CLASSIC_N2: lambda calc, rebase: solve_classic_n2(calc),
    Algorithm.SIMPLE: solve_simple,
    Algorithm.SIMPLE_PLUS: solve_simple_plus,
    Algorithm.STAGGERED: solve_staggered,
    Algorithm.WILBER: lambda calc, rebase: solve_wilber(calc),
}


def backtrack(implicit: ImplicitSolution) -> np.ndarray:
    """Decode the implicit split array into labels along sorted order."""
    n = implicit.n
    out = np.zeros(n, dtype=np.int64)
    ncl = _k.backtrack_kernel(np.ascontiguousarray(implicit.argmin), out)
    if ncl < 0:
        raise RuntimeError("broken argmin chain in implicit solution")
    return out


def rebase_min_costs(min_cost: np.ndarray, window_lo: int,
                     window_hi: int | None = None) -> float:
    """Shift the live cost window toward zero in place; returns the shift.

    Subtracting one constant from every live entry leaves all subsequent
    argmin comparisons unchanged while keeping stored totals in the range
    where floats have the most absolute resolution.
    """
    hi = min_cost.shape[0] - 1 if window_hi is None else window_hi
    shift = float(np.min(min_cost[window_lo:hi + 1]))
    min_cost[window_lo:hi + 1] -= shift
    return shift


# ---------------------------------------------------------------------------
# true per-cluster costs and representatives, vectorized over boundaries
# ---------------------------------------------------------------------------

def segment_costs(x: np.ndarray, boundaries: np.ndarray,
                  kind: CostKind) -> np.ndarray:
    """True cost of each cluster [boundaries[c], boundaries[c+1]) of sorted x."""
    kind = CostKind.coerce(kind)
    starts = boundaries[:-1]
    ends = boundaries[1:]
    sizes = (ends - starts).astype(np.float64)
    if kind is CostKind.MAXDIST:
        return 0.5 * (x[ends - 1] - x[starts])
    if kind is CostKind.SAE:
        c = np.concatenate(([0.0], np.cumsum(x)))
        half = (ends - starts) // 2
        out = (c[ends] - c[ends - half]) - (c[starts + half] - c[starts])
    elif kind is CostKind.SSE:
        w = np.add.reduceat(x, starts)
        q = np.add.reduceat(x * x, starts)
        out = q - w * w / sizes
    elif kind is CostKind.ROUNDUP:
        w = np.add.reduceat(x, starts)
        out = sizes * x[ends - 1] - w
    else:
        w = np.add.reduceat(x, starts)
        out = w - sizes * x[starts]
    return np.maximum(out, 0.0)


def segment_representatives(x: np.ndarray, boundaries: np.ndarray,
                            kind: CostKind) -> np.ndarray:
    """Release value per cluster: mean, median, midrange, max or min."""
    kind = CostKind.coerce(kind)
    starts = boundaries[:-1]
    ends = boundaries[1:]
    if kind is CostKind.SSE:
        w = np.add.reduceat(x, starts)
        return w / (ends - starts)
    if kind is CostKind.SAE:
        mid = starts + (ends - starts) // 2
        odd = (ends - starts) % 2 == 1
        return np.where(odd, x[mid], 0.5 * (x[mid - 1] + x[mid]))
    if kind is CostKind.MAXDIST:
        return 0.5 * (x[starts] + x[ends - 1])
    if kind is CostKind.ROUNDUP:
        return x[ends - 1]
    return x[starts]


def _boundaries_from_labels(labels_sorted: np.ndarray) -> np.ndarray:
    n = labels_sorted.shape[0]
    changes = np.flatnonzero(np.diff(labels_sorted)) + 1
    return np.concatenate(([0], changes, [n])).astype(np.int64)


def _single_cluster(ds: SortedDataset, k: int, kind: CostKind,
                    algorithm: str, mode: SumMode, t0: float) -> Clustering:
    n = ds.n
    boundaries = np.array([0, n], dtype=np.int64)
    reps = segment_representatives(ds.values, boundaries, kind)
    cost = float(np.sum(segment_costs(ds.values, boundaries, kind)))
    labels = np.zeros(n, dtype=np.int64)
    return Clustering(labels=labels, boundaries=boundaries,
                      representatives=reps, total_cost=cost,
                      algorithm_used=algorithm, cost_kind=kind, k=k,
                      sum_mode=mode, size_feasible=n >= k,
                      elapsed_seconds=time.perf_counter() - t0)


def solve(data, k: int, kind: CostKind | str = CostKind.SSE,
          options: SolverOptions | None = None, *,
          presorted: bool = False) -> Clustering:
    """Cluster scalar data into groups of at least k, minimizing total cost.

    Sorts the input (stable, ascending), runs the selected solver, decodes
    labels, and maps them back through the sort permutation.  When
    n <= 2k-1 the only feasible answer is a single cluster; if even that
    violates the size constraint (n < k), size_feasible is set False.

    Raises ValueError on empty or non-finite input, k < 1, or an invalid
    algorithm/sum-mode combination.
    """
    t0 = time.perf_counter()
    values = np.ascontiguousarray(data, dtype=np.float64)
    if values.ndim != 1:
        raise ValueError("expected a 1-D sequence of scalars")
    if values.shape[0] == 0:
        raise ValueError("cannot cluster an empty dataset")
    if np.isnan(values).any():
        raise ValueError("input contains NaN, which has no place in the order")
    if np.isinf(values).any():
        raise ValueError("input contains non-finite values")
    k = int(k)
    if k < 1:
        raise ValueError(f"minimum cluster size must be >= 1, got {k}")
    opts = options if options is not None else SolverOptions()
    kind, mode = validate_combination(kind, opts.sum_mode)
    algorithm = Algorithm.coerce(opts.algorithm)
    if algorithm == Algorithm.AUTO:
        algorithm = (Algorithm.SIMPLE_PLUS if k < opts.auto_switch_k
                     else Algorithm.STAGGERED)
    rebase = opts.rebase
    if algorithm in (Algorithm.CLASSIC_N2, Algorithm.WILBER):
        if mode is SumMode.PARTIAL_PREFIX:
            raise ValueError(f"{algorithm} is not size-restricted; partial "
                             "prefix sums cannot serve its window queries")
        if rebase:
            raise ValueError(f"rebasing needs a bounded live cost window; "
                             f"{algorithm} keeps every prefix live")
    elif mode is SumMode.ALTERNATIVE:
        # surrogate totals grow like a prefix of x or x^2 and would drown
        # the tiny candidate differences; rebasing keeps the live window
        # near zero, where floats still resolve them
        rebase = True

    ds = (SortedDataset.from_sorted(values) if presorted
          else SortedDataset.from_values(values))
    n = ds.n
    if n <= 2 * k - 1:
        return _single_cluster(ds, k, kind, algorithm, mode, t0)

    calc = preprocess(ds, k, kind, mode)
    sol = _SOLVER_FNS[algorithm](calc, rebase)
    if sol.min_cost_forbidden[n]:
        raise RuntimeError("no feasible partition found despite n >= 2k")
    labels_sorted = backtrack(sol)
    boundaries = _boundaries_from_labels(labels_sorted)
    reps = segment_representatives(ds.values, boundaries, kind)
    total = float(np.sum(segment_costs(ds.values, boundaries, kind)))
    labels = np.empty(n, dtype=np.int64)
    labels[ds.perm] = labels_sorted
    return Clustering(labels=labels, boundaries=boundaries,
                      representatives=reps, total_cost=total,
                      algorithm_used=algorithm, cost_kind=kind, k=k,
                      sum_mode=mode, size_feasible=True,
                      elapsed_seconds=time.perf_counter() - t0)
