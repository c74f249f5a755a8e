"""Brute-force references for validating the solvers.

Everything here evaluates costs directly from their definitions on plain
Python numbers (exact Fraction arithmetic when requested) and enumerates
partitions explicitly.  It deliberately shares no code with the fast
cost/solver modules: this is the ground truth they are tested against.

Beyond the five product cost kinds, four extra kinds exist only as test
instruments: mae, l2, mean_roundup and mean_rounddown.  For those, the
cheapest partition of a fixed size profile need not be contiguous in
sorted order, which verify_counterexamples() demonstrates on four frozen
universes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "MEMBER_KINDS",
    "EXTENDED_KINDS",
    "OracleResult",
    "cluster_cost_direct",
    "exhaustive_ordered",
    "exhaustive_all_partitions",
    "verify_counterexamples",
    "FixtureReport",
]

MEMBER_KINDS = ("sse", "sae", "maxdist", "roundup", "rounddown")
EXTENDED_KINDS = ("mae", "l2", "mean_roundup", "mean_rounddown")

_MAX_N_ORDERED = 20
_MAX_N_PARTITIONS = 10


def _median(xs):
    n = len(xs)
    if n % 2 == 1:
        return xs[n // 2]
    a, b = xs[n // 2 - 1], xs[n // 2]
    if isinstance(a, Fraction) or isinstance(a, int):
        return Fraction(a + b, 2)
    return (a + b) / 2


def _mean(s, n):
    if isinstance(s, Fraction) or isinstance(s, int):
        return Fraction(s, n)
    return s / n


def cluster_cost_direct(block, kind: str):
    """Cost of one cluster straight from the definition.

    block must be ascending.  Returns a Fraction when fed ints/Fractions
    (except l2, whose square root forces a float).
    """
    xs = list(block)
    n = len(xs)
    if kind == "sse":
        mu = _mean(sum(xs), n)
        return sum((x - mu) * (x - mu) for x in xs)
    if kind == "sae":
        med = _median(xs)
        return sum(abs(x - med) for x in xs)
    if kind == "maxdist":
        spread = xs[-1] - xs[0]
        if isinstance(spread, Fraction) or isinstance(spread, int):
            return Fraction(spread, 2)
        return spread / 2
    if kind == "roundup":
        top = xs[-1]
        return sum(top - x for x in xs)
    if kind == "rounddown":
        bot = xs[0]
        return sum(x - bot for x in xs)
    if kind == "mae":
        return _mean(cluster_cost_direct(xs, "sae"), n)
    if kind == "l2":
        return math.sqrt(float(cluster_cost_direct(xs, "sse")))
    if kind == "mean_roundup":
        return _mean(cluster_cost_direct(xs, "roundup"), n)
    if kind == "mean_rounddown":
        return _mean(cluster_cost_direct(xs, "rounddown"), n)
    raise ValueError(f"unknown oracle cost kind: {kind!r}")


@dataclass(frozen=True)
class OracleResult:
    min_cost: float
    witness: tuple
    enumerated_count: int


def _as_numbers(values, exact: bool):
    out = []
    for v in values:
        if exact:
            out.append(v if isinstance(v, (int, Fraction)) else Fraction(v))
        else:
            out.append(float(v))
    return out


@lru_cache(maxsize=4096)
def _compositions(n: int, k: int, max_part: int | None) -> tuple:
    """All ordered part-size tuples summing to n with parts >= k."""
    hi = n if max_part is None else min(n, max_part)
    out = []

    def rec(remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(k, min(hi, remaining) + 1):
            if remaining - part != 0 and remaining - part < k:
                continue
            acc.append(part)
            rec(remaining - part, acc)
            acc.pop()

    rec(n, [])
    return tuple(out)


def exhaustive_ordered(values, k: int, kind: str, enforce_max: bool = False,
                       num_parts: int | None = None,
                       exact: bool = False) -> OracleResult:
    """Minimum total cost over contiguous partitions of the sorted values.

    Enumerates every composition of n into parts of size >= k (and
    <= 2k-1 when enforce_max), evaluating each part by definition.
    """
    xs = _as_numbers(values, exact)
    n = len(xs)
    if not 1 <= n <= _MAX_N_ORDERED:
        raise ValueError(f"exhaustive_ordered supports 1 <= n <= "
                         f"{_MAX_N_ORDERED}, got {n}")
    if any(xs[t] > xs[t + 1] for t in range(n - 1)):
        raise ValueError("values must be sorted ascending")
    if k < 1:
        raise ValueError("k must be >= 1")
    best = None
    witness = None
    count = 0
    max_part = 2 * k - 1 if enforce_max else None
    for sizes in _compositions(n, k, max_part):
        if num_parts is not None and len(sizes) != num_parts:
            continue
        count += 1
        total = 0
        pos = 0
        blocks = []
        for s in sizes:
            block = xs[pos:pos + s]
            total = total + cluster_cost_direct(block, kind)
            blocks.append(tuple(block))
            pos += s
        if best is None or total < best:
            best = total
            witness = tuple(blocks)
    if best is None:
        raise ValueError(f"no feasible ordered partition for n={n}, k={k}")
    return OracleResult(min_cost=float(best), witness=witness,
                        enumerated_count=count)


@lru_cache(maxsize=16)
def _set_partitions(n: int) -> tuple:
    """Restricted-growth strings for all set partitions of range(n)."""
    a = [0] * n
    out = []

    def rec(i, m):
        if i == n:
            out.append(tuple(a))
            return
        for v in range(m + 2):
            a[i] = v
            rec(i + 1, max(m, v))

    if n == 1:
        return (tuple(a),)
    rec(1, 0)
    return tuple(out)


def exhaustive_all_partitions(values, k: int, kind: str,
                              num_parts: int | None = None,
                              sizes: tuple | None = None,
                              exact: bool = False) -> OracleResult:
    """Minimum total cost over ALL set partitions with blocks of size >= k.

    Optionally restricts to partitions with a given number of parts or a
    given multiset of block sizes (the comparison the non-contiguous
    counterexamples are built on).  Supports the extended oracle kinds.
    """
    xs = _as_numbers(values, exact)
    xs.sort()
    n = len(xs)
    if not 1 <= n <= _MAX_N_PARTITIONS:
        raise ValueError(f"exhaustive_all_partitions supports 1 <= n <= "
                         f"{_MAX_N_PARTITIONS}, got {n}")
    if k < 1:
        raise ValueError("k must be >= 1")
    want_sizes = None if sizes is None else tuple(sorted(sizes))
    best = None
    witness = None
    count = 0
    block_cost: dict = {}  # identical blocks recur across partitions
    for a in _set_partitions(n):
        nblocks = max(a) + 1
        if num_parts is not None and nblocks != num_parts:
            continue
        blocks = [[] for _ in range(nblocks)]
        for idx, b in enumerate(a):
            blocks[b].append(xs[idx])
        if any(len(b) < k for b in blocks):
            continue
        if want_sizes is not None:
            if tuple(sorted(len(b) for b in blocks)) != want_sizes:
                continue
        count += 1
        total = 0
        for b in blocks:
            key = tuple(b)
            c = block_cost.get(key)
            if c is None:
                c = cluster_cost_direct(b, kind)
                block_cost[key] = c
            total = total + c
        if best is None or total < best:
            best = total
            witness = tuple(tuple(b) for b in blocks)
    if best is None:
        raise ValueError(f"no feasible partition for n={n}, k={k}")
    return OracleResult(min_cost=float(best), witness=witness,
                        enumerated_count=count)


@dataclass(frozen=True)
class FixtureReport:
    name: str
    universe: tuple
    split_sizes: tuple
    unordered_cost: float
    ordered_costs: tuple
    expected_unordered: float
    expected_ordered: tuple
    passed: bool


def _ordered_two_part_costs(xs, first_size: int, kind: str):
    left = xs[:first_size]
    right = xs[first_size:]
    return cluster_cost_direct(left, kind) + cluster_cost_direct(right, kind)


def verify_counterexamples() -> list[FixtureReport]:
    """Replay the four frozen universes where contiguity costs extra.

    Each fixture fixes a block-size profile, compares the cheapest
    partition with that profile against the two contiguous arrangements,
    and checks the exact expected numbers (rational arithmetic where the
    kind allows it).
    """
    sqrt2 = math.sqrt(2.0)
    l2_ordered = math.sqrt(0.5) + math.sqrt(2.0 / 3.0)
    fixtures = [
        ("mae", (-1, 0, 0, 0, 0, 1), (4, 2),
         Fraction(1, 2), (Fraction(3, 4), Fraction(3, 4))),
        ("l2", (-1, 0, 0, 0, 1), (3, 2),
         sqrt2, (l2_ordered, l2_ordered)),
        ("mean_rounddown", (0, 0, 0, 1, 1, 2), (4, 2),
         Fraction(1, 2), (Fraction(3, 4), Fraction(1, 1))),
        ("mean_roundup", (0, 1, 1, 2, 2, 2), (4, 2),
         Fraction(1, 2), (Fraction(1, 1), Fraction(3, 4))),
    ]
    reports = []
    for kind, universe, sizes, want_unordered, want_ordered in fixtures:
        exact = kind != "l2"
        xs = _as_numbers(universe, exact)
        xs.sort()
        res = exhaustive_all_partitions(universe, 2, kind, sizes=sizes,
                                        exact=exact)
        got_ordered = tuple(_ordered_two_part_costs(xs, s, kind)
                            for s in sizes)
        if exact:
            unordered_exact = min(
                sum(cluster_cost_direct(b, kind) for b in p)
                for p in _partitions_with_sizes(xs, sizes, kind))
            ok = (unordered_exact == want_unordered
                  and got_ordered == want_ordered
                  and unordered_exact < min(got_ordered))
            got_un = unordered_exact
        else:
            got_un = res.min_cost
            ok = (abs(got_un - want_unordered) < 1e-12
                  and all(abs(g - w) < 1e-12
                          for g, w in zip(got_ordered, want_ordered))
                  and got_un < min(got_ordered) - 1e-9)
        reports.append(FixtureReport(
            name=kind, universe=tuple(universe), split_sizes=sizes,
            unordered_cost=float(got_un),
            ordered_costs=tuple(float(c) for c in got_ordered),
            expected_unordered=float(want_unordered),
            expected_ordered=tuple(float(c) for c in want_ordered),
            passed=bool(ok)))
    return reports


def _partitions_with_sizes(xs, sizes, kind):
    """All partitions of xs matching the size multiset (helper for exact min)."""
    n = len(xs)
    want = tuple(sorted(sizes))
    for a in _set_partitions(n):
        nblocks = max(a) + 1
        blocks = [[] for _ in range(nblocks)]
        for idx, b in enumerate(a):
            blocks[b].append(xs[idx])
        if tuple(sorted(len(b) for b in blocks)) == want:
            yield [sorted(b) for b in blocks]
