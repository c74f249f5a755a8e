"""Column minima of implicitly defined totally monotone matrices.

The matrix is given by an oracle over inclusive index bounds.  The
contract: the submatrix's *transpose* is totally monotone under the
AdaptedCost order, i.e. for rows r1 < r2 and columns c1 < c2,

    M[r1, c2] < M[r2, c2]  implies  M[r1, c2's left neighbourhood too]:
    M[r1, c1] < M[r2, c1], and equality at c2 implies <= at c1.

Consequently the leftmost per-column argmin rows are non-decreasing across
columns, which REDUCE/INTERPOLATE exploits to answer all columns in
O(rows + cols) oracle calls.  Violated monotonicity is not detected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .costs import AdaptedCost

__all__ = ["MatrixOracle", "ColMinResult", "col_minima", "col_minima_brute"]


@dataclass(frozen=True)
class MatrixOracle:
    """Pure eval function plus inclusive submatrix bounds."""

    eval: Callable[[int, int], AdaptedCost]
    row_lo: int
    row_hi: int
    col_lo: int
    col_hi: int

    def __post_init__(self):
        if self.row_lo > self.row_hi or self.col_lo > self.col_hi:
            raise ValueError("empty matrix bounds")


@dataclass
class ColMinResult:
    """Per-column minima; index c maps to slot c - col_lo."""

    col_lo: int
    argmin_rows: np.ndarray
    min_values: list

    def argmin(self, c: int) -> int:
        return int(self.argmin_rows[c - self.col_lo])

    def value(self, c: int) -> AdaptedCost:
        return self.min_values[c - self.col_lo]


def col_minima(oracle: MatrixOracle) -> ColMinResult:
    """All column minima with the smallest attaining row per column.

    Repeated (row, col) evaluations are memoized for the duration of one
    call, which the purity requirement on the oracle makes sound.
    """
    cache: dict[tuple[int, int], AdaptedCost] = {}

    def ev(r: int, c: int) -> AdaptedCost:
        key = (r, c)
        v = cache.get(key)
        if v is None:
            v = oracle.eval(r, c)
            cache[key] = v
        return v

    rows = list(range(oracle.row_lo, oracle.row_hi + 1))
    cols = list(range(oracle.col_lo, oracle.col_hi + 1))
    ncols = len(cols)
    arg = np.empty(ncols, dtype=np.int64)
    vals: list = [None] * ncols
    _solve(ev, rows, cols, oracle.col_lo, arg, vals)
    return ColMinResult(col_lo=oracle.col_lo, argmin_rows=arg, min_values=vals)


def _solve(ev, rows, cols, col_base, arg, vals):
    ncols = len(cols)
    # REDUCE: prune to at most ncols rows that can still host a minimum.
    stack: list[int] = []
    svals: list[AdaptedCost] = []  # svals[s] = M[stack[s], cols[s]]
    for r in rows:
        while stack:
            v = ev(r, cols[len(stack) - 1])
            if v < svals[-1]:
                stack.pop()
                svals.pop()
            else:
                break
        if len(stack) < ncols:
            stack.append(r)
            svals.append(ev(r, cols[len(stack) - 1]))
    if ncols == 1:
        arg[cols[0] - col_base] = stack[0]
        vals[cols[0] - col_base] = svals[0]
        return
    # solve odd columns on the surviving rows, then fill the evens by
    # scanning between the neighbouring odd argmins.
    _solve(ev, stack, cols[1::2], col_base, arg, vals)
    lo = 0
    for t in range(0, ncols, 2):
        c = cols[t]
        if t + 1 < ncols:
            hi = stack.index(arg[cols[t + 1] - col_base], lo)
        else:
            hi = len(stack) - 1
        best = ev(stack[lo], c)
        besti = lo
        for u in range(lo + 1, hi + 1):
            v = ev(stack[u], c)
            if v < best:
                best = v
                besti = u
        arg[c - col_base] = stack[besti]
        vals[c - col_base] = best
        lo = hi


def col_minima_brute(oracle: MatrixOracle) -> ColMinResult:
    """Exhaustive per-column scan; debug/verification reference."""
    ncols = oracle.col_hi - oracle.col_lo + 1
    arg = np.empty(ncols, dtype=np.int64)
    vals: list = [None] * ncols
    for t, c in enumerate(range(oracle.col_lo, oracle.col_hi + 1)):
        best = oracle.eval(oracle.row_lo, c)
        besti = oracle.row_lo
        for r in range(oracle.row_lo + 1, oracle.row_hi + 1):
            v = oracle.eval(r, c)
            if v < best:
                best = v
                besti = r
        arg[t] = besti
        vals[t] = best
    return ColMinResult(col_lo=oracle.col_lo, argmin_rows=arg, min_values=vals)
