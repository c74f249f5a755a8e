"""Datasets, prefix-sum preprocessing, cluster cost functions and adapted costs.

Five cluster cost kinds are supported, each with an O(1) window query after
O(n) preprocessing on sorted data:

  SSE         sum of squared deviations from the window mean
  SAE         sum of absolute deviations from the window median
  MAXDIST     max distance to the midrange, (max - min) / 2
  ROUNDUP     sum of distances to the window max
  ROUNDDOWN   sum of distances to the window min

Windows are half-open index pairs: (i, j) covers sorted values x[i..j-1].
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels as _k

__all__ = [
    "CostKind",
    "SumMode",
    "AdaptScheme",
    "AdaptedCost",
    "SortedDataset",
    "PrefixStore",
    "CostCalculator",
    "preprocess",
    "validate_combination",
]


class CostKind(Enum):
    SSE = "sse"
    SAE = "sae"
    MAXDIST = "maxdist"
    ROUNDUP = "roundup"
    ROUNDDOWN = "rounddown"

    @property
    def code(self) -> int:
        return _KIND_CODES[self]

    @classmethod
    def coerce(cls, value) -> "CostKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower().replace("-", "").replace("_", ""))
        except ValueError:
            raise ValueError(f"unknown cost kind: {value!r}") from None


class SumMode(Enum):
    FULL_PREFIX = "full"
    PARTIAL_PREFIX = "partial"
    ALTERNATIVE = "alternative"

    @property
    def code(self) -> int:
        return _MODE_CODES[self]

    @classmethod
    def coerce(cls, value) -> "SumMode":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown sum mode: {value!r}") from None


class AdaptScheme(Enum):
    UNRESTRICTED = "unrestricted"
    MIN_ONLY = "min_only"
    MIN_MAX = "min_max"
    MIN_ONLY_MONOTONE = "min_only_monotone"
    MIN_MAX_MONOTONE = "min_max_monotone"


_KIND_CODES = {
    CostKind.SSE: _k.SSE,
    CostKind.SAE: _k.SAE,
    CostKind.MAXDIST: _k.MAXDIST,
    CostKind.ROUNDUP: _k.ROUNDUP,
    CostKind.ROUNDDOWN: _k.ROUNDDOWN,
}

_MODE_CODES = {
    SumMode.FULL_PREFIX: _k.MODE_FULL,
    SumMode.PARTIAL_PREFIX: _k.MODE_PARTIAL,
    SumMode.ALTERNATIVE: _k.MODE_ALT,
}

# kinds with a valid preprocessing per mode
_VALID_KINDS = {
    SumMode.FULL_PREFIX: set(CostKind),
    SumMode.PARTIAL_PREFIX: {CostKind.SSE, CostKind.SAE},
    SumMode.ALTERNATIVE: {CostKind.SSE, CostKind.ROUNDUP, CostKind.ROUNDDOWN},
}


class AdaptedCost:
    """A cluster cost or a ranked 'forbidden' sentinel.

    Total order: finite costs compare by value and sort below every
    sentinel; sentinels compare by integer rank.  Adding a finite float
    leaves sentinels unchanged, so rank ordering survives the addition of
    accumulated totals.
    """

    __slots__ = ("is_finite", "value", "rank")

    def __init__(self, is_finite: bool, value: float = 0.0, rank: int = 0):
        self.is_finite = is_finite
        self.value = float(value)
        self.rank = int(rank)

    @staticmethod
    def finite(value: float) -> "AdaptedCost":
        return AdaptedCost(True, value=value)

    @staticmethod
    def forbidden(rank: int) -> "AdaptedCost":
        return AdaptedCost(False, rank=rank)

    def _key(self):
        if self.is_finite:
            return (0, self.value)
        return (1, self.rank)

    def __eq__(self, other):
        if not isinstance(other, AdaptedCost):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __ge__(self, other):
        return self._key() >= other._key()

    def __hash__(self):
        return hash(self._key())

    def __add__(self, t: float) -> "AdaptedCost":
        if self.is_finite:
            return AdaptedCost.finite(self.value + t)
        return self

    __radd__ = __add__

    def __repr__(self):
        if self.is_finite:
            return f"Finite({self.value!r})"
        return f"Forbidden(rank={self.rank})"


@dataclass(frozen=True)
class SortedDataset:
    """Ascending values plus the permutation back to input order.

    values[t] came from input position perm[t].
    """

    values: np.ndarray
    perm: np.ndarray

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @classmethod
    def from_values(cls, raw) -> "SortedDataset":
        values = np.ascontiguousarray(raw, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError("expected a 1-D sequence of scalars")
        if np.isnan(values).any():
            raise ValueError("input contains NaN, which has no place in the order")
        perm = np.argsort(values, kind="stable").astype(np.int64)
        return cls(values=values[perm], perm=perm)

    @classmethod
    def from_sorted(cls, values) -> "SortedDataset":
        values = np.ascontiguousarray(values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError("expected a 1-D sequence of scalars")
        if np.isnan(values).any():
            raise ValueError("input contains NaN, which has no place in the order")
        if values.shape[0] > 1 and np.any(np.diff(values) < 0):
            raise ValueError("values are not sorted ascending")
        return cls(values=values, perm=np.arange(values.shape[0], dtype=np.int64))


@dataclass(frozen=True)
class PrefixStore:
    """Preprocessed sums backing O(1) window queries.

    Full mode: s1/s2 are running sums of x and x^2 (length n+1).  Partial
    mode: the same sums restarted at every multiple of block_size, so no
    stored value aggregates more than block_size inputs.
    """

    s1: np.ndarray | None
    s2: np.ndarray | None
    partial: bool = False
    block_size: int | None = None


_EMPTY = np.empty(0, dtype=np.float64)


class CostCalculator:
    """Immutable window-cost calculator over a sorted dataset.

    Construct via preprocess().  All queries are read-only and safe to
    share across threads.
    """

    def __init__(self, data: SortedDataset, k: int, kind: CostKind,
                 mode: SumMode, store: PrefixStore | None):
        self.data = data
        self.k = k
        self.kind = kind
        self.mode = mode
        self.store = store
        self._x = data.values
        self._s1 = store.s1 if store is not None and store.s1 is not None else _EMPTY
        self._s2 = store.s2 if store is not None and store.s2 is not None else _EMPTY
        self._kind_code = kind.code
        self._mode_code = mode.code

    @property
    def n(self) -> int:
        return self.data.n

    def _check_window(self, i: int, j: int) -> None:
        if not (0 <= i < j <= self.n):
            raise ValueError(f"window ({i}, {j}) out of range for n={self.n}")
        if self.mode is SumMode.PARTIAL_PREFIX and j - i > 2 * self.k - 1:
            raise ValueError(
                f"window ({i}, {j}) wider than 2k-1={2 * self.k - 1}; "
                "partial sums only cover size-restricted windows")

    def cluster_cost(self, i: int, j: int) -> float:
        """C(i, j): cost of one cluster over sorted values x[i..j-1].

        True-cost modes clamp at zero: prefix-sum cancellation can land a
        hair below it, but a cluster never has negative distortion.
        """
        self._check_window(i, j)
        v = float(_k.window_cost(self._kind_code, self._mode_code, self._x,
                                 self._s1, self._s2, self.k, i, j))
        if self.mode is SumMode.ALTERNATIVE:
            return v
        return v if v > 0.0 else 0.0

    def adapted_cost(self, i: int, j: int,
                     scheme: AdaptScheme) -> AdaptedCost:
        """C_adapt(i, j): the cluster cost with size-constraint sentinels.

        Monotone schemes rank the sentinels by split index (+i for
        undersized, -i for oversized windows) so the adapted cost matrix
        keeps a totally monotone transpose.
        """
        self._check_window(i, j)
        size = j - i
        if scheme is AdaptScheme.UNRESTRICTED:
            return AdaptedCost.finite(self.cluster_cost(i, j))
        if scheme is AdaptScheme.MIN_ONLY:
            if size < self.k:
                return AdaptedCost.forbidden(0)
        elif scheme is AdaptScheme.MIN_MAX:
            if size < self.k or size >= 2 * self.k:
                return AdaptedCost.forbidden(0)
        elif scheme is AdaptScheme.MIN_ONLY_MONOTONE:
            if size < self.k:
                return AdaptedCost.forbidden(i)
        else:  # MIN_MAX_MONOTONE
            if size < self.k:
                return AdaptedCost.forbidden(i)
            if size >= 2 * self.k:
                return AdaptedCost.forbidden(-i)
        return AdaptedCost.finite(self.cluster_cost(i, j))

    def representative(self, i: int, j: int) -> float:
        """Release value of the window: the point minimizing its cost kind."""
        self._check_window(i, j)
        x = self._x
        if self.kind is CostKind.SSE:
            return self._window_mean(i, j)
        if self.kind is CostKind.SAE:
            mid = i + (j - i) // 2
            if (j - i) % 2 == 1:
                return float(x[mid])
            return float(0.5 * (x[mid - 1] + x[mid]))
        if self.kind is CostKind.MAXDIST:
            return float(0.5 * (x[i] + x[j - 1]))
        if self.kind is CostKind.ROUNDUP:
            return float(x[j - 1])
        return float(x[i])

    def _window_mean(self, i: int, j: int) -> float:
        if self.mode is SumMode.PARTIAL_PREFIX:
            w = _k._psum(self._s1, self.k, i, j)
        else:
            w = self._s1[j] - self._s1[i]
        return float(w / (j - i))


def validate_combination(kind, mode) -> tuple[CostKind, SumMode]:
    """Coerce and check a kind/mode pair; returns the enum members.

    Partial sums exist for SSE/SAE, surrogate costs for SSE and the two
    round costs; anything else is a configuration error.
    """
    kind = CostKind.coerce(kind)
    mode = SumMode.coerce(mode)
    if kind not in _VALID_KINDS[mode]:
        raise ValueError(f"{kind.name} has no {mode.name} preprocessing")
    return kind, mode


def preprocess(data: SortedDataset, k: int, kind: CostKind = CostKind.SSE,
               mode: SumMode = SumMode.FULL_PREFIX) -> CostCalculator:
    """Build a CostCalculator in O(n) time and space.

    Raises ValueError on k < 1 or on a kind/mode combination with no
    defined preprocessing.
    """
    kind, mode = validate_combination(kind, mode)
    if k < 1:
        raise ValueError(f"minimum cluster size must be >= 1, got {k}")
    x = data.values
    if kind is CostKind.MAXDIST:
        store = None
    elif mode is SumMode.FULL_PREFIX:
        s1, s2 = _k.build_prefix_sums(x)
        store = PrefixStore(s1=s1, s2=s2)
    elif mode is SumMode.PARTIAL_PREFIX:
        p1, p2 = _k.build_partial_sums(x, k)
        store = PrefixStore(s1=p1, s2=p2, partial=True, block_size=k)
    else:  # ALTERNATIVE
        if kind is CostKind.SSE:
            s1, _ = _k.build_prefix_sums(x)
            store = PrefixStore(s1=s1, s2=None)
        else:
            store = None
    return CostCalculator(data, int(k), kind, mode, store)
