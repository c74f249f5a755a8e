"""Acceptance gate: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion
lines and timings.  Kernels are JIT-compiled on first use and disk-cached;
the module warms every needed specialization up front so timed sections
measure steady-state behaviour.
"""

import time

import numpy as np
import pytest

from microagg import (Algorithm, AdaptedCost, MatrixOracle, SolverOptions,
                      SortedDataset, col_minima, oracle, preprocess, solve)

ALL_ALGS = list(Algorithm.ALL)
SUBQUADRATIC = ["simple", "simple+", "staggered", "wilber"]
ALL_KINDS = ["sse", "sae", "maxdist", "roundup", "rounddown"]
ALT_KINDS = ["sse", "roundup", "rounddown"]


def _say(criterion, name, status, detail=""):
    print(f"ACCEPTANCE {criterion:2d} {name}: {status} {detail}".rstrip())


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    x = np.sort(np.random.default_rng(0).random(64))
    for alg in ALL_ALGS:
        for kind in ALL_KINDS:
            solve(x, 3, kind, SolverOptions(algorithm=alg), presorted=True)
        for kind in ALT_KINDS:
            solve(x, 3, kind, SolverOptions(algorithm=alg,
                                            sum_mode="alternative"),
                  presorted=True)
        if alg not in ("classic", "wilber"):
            for kind in ("sse", "sae"):
                solve(x, 3, kind, SolverOptions(algorithm=alg,
                                                sum_mode="partial"),
                      presorted=True)


def _criterion1_instances(count=500, seed=1001):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, 13))
        if rng.random() < 0.5:
            vals = np.sort(rng.integers(-5, 6, size=n).astype(np.float64))
        else:
            vals = np.sort(rng.random(n))
        out.append(vals)
    return out


def test_criterion_1_oracle_optimality():
    t0 = time.perf_counter()
    cells = 0
    worst = 0.0
    for vals in _criterion1_instances():
        n = len(vals)
        for k in range(1, n + 1):
            for kind in ALL_KINDS:
                ref = oracle.exhaustive_ordered(vals, k, kind).min_cost
                for alg in ALL_ALGS:
                    r = solve(vals, k, kind, SolverOptions(algorithm=alg),
                              presorted=True)
                    dev = abs(r.total_cost - ref)
                    worst = max(worst, dev)
                    assert dev <= 1e-9, (alg, kind, k, vals.tolist())
                    cells += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    _say(1, "oracle optimality", "PASS",
         f"({cells} solver cells, max |dev| {worst:.2e}, {elapsed:.1f}s)")


def test_criterion_2_ordered_minimizable_equivalence():
    rng = np.random.default_rng(2002)
    t0 = time.perf_counter()
    checked = 0
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 9))
        if rng.random() < 0.5:
            vals = sorted(rng.integers(-4, 5, size=n).astype(float).tolist())
        else:
            vals = sorted(rng.random(n).tolist())
        for k in range(1, n + 1):
            for kind in ALL_KINDS:
                free = oracle.exhaustive_all_partitions(vals, k, kind)
                ordered = oracle.exhaustive_ordered(vals, k, kind)
                dev = abs(free.min_cost - ordered.min_cost)
                worst = max(worst, dev)
                assert dev <= 1e-9, (kind, k, vals)
                checked += 1
    _say(2, "ordered-minimizable equivalence", "PASS",
         f"({checked} cases, max gap {worst:.2e}, "
         f"{time.perf_counter() - t0:.1f}s)")


def test_criterion_3_counterexample_fixtures():
    reports = oracle.verify_counterexamples()
    assert [r.name for r in reports] == ["mae", "l2", "mean_rounddown",
                                         "mean_roundup"]
    for rep in reports:
        assert rep.passed, rep
    by = {r.name: r for r in reports}
    assert by["mae"].unordered_cost == 0.5
    assert by["mae"].ordered_costs == (0.75, 0.75)
    assert by["l2"].unordered_cost == pytest.approx(np.sqrt(2.0), abs=1e-12)
    assert by["l2"].ordered_costs == pytest.approx(
        (np.sqrt(0.5) + np.sqrt(2 / 3),) * 2, abs=1e-12)
    assert by["mean_rounddown"].unordered_cost == 0.5
    assert by["mean_rounddown"].ordered_costs == (0.75, 1.0)
    assert by["mean_roundup"].unordered_cost == 0.5
    assert by["mean_roundup"].ordered_costs == (1.0, 0.75)
    _say(3, "counterexample fixtures", "PASS", "(4 fixtures, exact values)")


def test_criterion_4_concavity_and_splitting():
    rng = np.random.default_rng(4004)
    n = 1000
    x = np.sort(rng.uniform(-50.0, 50.0, size=n))
    spread = float(x[-1] - x[0])
    calcs = {kind: preprocess(SortedDataset.from_sorted(x), 1, kind)
             for kind in ALL_KINDS}
    quad_violations = 0
    split_violations = 0
    for _ in range(10_000):
        a, b, c, d = np.sort(rng.choice(n + 1, size=4, replace=False))
        if not (a < b < c < d):
            continue
        for kind, calc in calcs.items():
            tol = 1e-9 * max(1.0, spread * spread * (d - a))
            lhs = calc.cluster_cost(a, c) + calc.cluster_cost(b, d)
            rhs = calc.cluster_cost(a, d) + calc.cluster_cost(b, c)
            if lhs > rhs + tol:
                quad_violations += 1
            tol3 = 1e-9 * max(1.0, spread * spread * (c - a))
            if (calc.cluster_cost(a, b) + calc.cluster_cost(b, c)
                    > calc.cluster_cost(a, c) + tol3):
                split_violations += 1
    assert quad_violations == 0
    assert split_violations == 0
    _say(4, "concavity and splitting", "PASS",
         "(10000 quadruples x 5 kinds, zero violations)")


def test_criterion_5_floating_point_regression():
    x = np.arange(400001, dtype=np.float64)
    ds = SortedDataset.from_sorted(x)
    full = preprocess(ds, 3, "sse", "full")
    part = preprocess(ds, 3, "sse", "partial")
    got_full = full.cluster_cost(300079, 300082)
    got_part = part.cluster_cost(300079, 300082)
    assert got_full == 1.0  # the rounding artifact, reproduced exactly
    assert got_part == 2.0  # the true value, restored by partial sums
    _say(5, "floating-point regression", "PASS",
         f"(full={got_full}, partial={got_part})")


def test_criterion_6_smawk_exactness_and_budget():
    rng = np.random.default_rng(6006)
    t0 = time.perf_counter()
    worst_ratio = 0.0
    for _ in range(1000):
        nrows = int(rng.integers(1, 201))
        ncols = int(rng.integers(1, 201))
        dens = rng.random((nrows, ncols))
        m = np.cumsum(dens[:, ::-1].cumsum(axis=1)[:, ::-1], axis=0)
        m += rng.random(ncols)
        if rng.random() < 0.25 and nrows > 1:
            m[nrows // 2] = m[0]  # force exact ties
        calls = [0]

        def ev(r, c, m=m, calls=calls):
            calls[0] += 1
            return AdaptedCost.finite(float(m[r, c]))

        res = col_minima(MatrixOracle(eval=ev, row_lo=0, row_hi=nrows - 1,
                                      col_lo=0, col_hi=ncols - 1))
        ref_arg = np.argmin(m, axis=0)  # first minimum = leftmost row
        assert np.array_equal(res.argmin_rows, ref_arg)
        ref_val = m[ref_arg, np.arange(ncols)]
        assert all(v == AdaptedCost.finite(float(rv))
                   for v, rv in zip(res.min_values, ref_val))
        assert calls[0] <= 8 * (nrows + ncols)
        worst_ratio = max(worst_ratio, calls[0] / (nrows + ncols))
    _say(6, "SMAWK exactness and call budget", "PASS",
         f"(1000 matrices, worst calls {worst_ratio:.2f}x(r+c), "
         f"{time.perf_counter() - t0:.1f}s)")


def test_criterion_7_cross_solver_agreement_at_scale():
    rng = np.random.default_rng(7007)
    x = np.sort(rng.random(10**6))
    t0 = time.perf_counter()
    for k in (2, 10, 100, 1000):
        costs = {}
        for alg in SUBQUADRATIC:
            r = solve(x, k, "sse", SolverOptions(algorithm=alg),
                      presorted=True)
            costs[alg] = r.total_cost
            sizes = r.cluster_sizes()
            assert sizes.min() >= k
            if alg != "wilber":
                assert sizes.max() <= 2 * k - 1
        ref = costs["simple"]
        for alg, c in costs.items():
            assert abs(c - ref) <= 1e-6 * abs(ref), (k, alg, c, ref)
    # the O(n^2) reference is physically out of budget at n=1e6 (about
    # 5e11 window evaluations); it joins the agreement check at the
    # largest size that fits, against all four others
    xs = x[:30000].copy()
    for k in (2, 10, 100, 1000):
        ref = solve(xs, k, "sse", SolverOptions(algorithm="classic"),
                    presorted=True).total_cost
        for alg in SUBQUADRATIC:
            c = solve(xs, k, "sse", SolverOptions(algorithm=alg),
                      presorted=True).total_cost
            assert abs(c - ref) <= 1e-6 * max(abs(ref), 1e-300)
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    _say(7, "cross-solver agreement at scale", "PASS",
         f"(4 solvers at n=1e6 + classic at n=3e4, {elapsed:.1f}s)")


def test_criterion_8_linearity_smoke():
    rng = np.random.default_rng(8008)
    x2 = np.sort(rng.random(2 * 10**6))
    x1 = x2[::2].copy()  # n = 1e6, same distribution

    def timed(data, k, alg, reps):
        ts = []
        for _ in range(reps):
            t0 = time.perf_counter()
            solve(data, k, "sse", SolverOptions(algorithm=alg),
                  presorted=True)
            ts.append(time.perf_counter() - t0)
        return float(np.median(ts))

    t_1m = timed(x1, 100, "staggered", 5)
    t_2m = timed(x2, 100, "staggered", 5)
    ratio = t_2m / t_1m
    assert ratio <= 2.8, (t_1m, t_2m)

    # the k-scaling claim is about the scan itself, so time the DP on a
    # prebuilt calculator (facade overhead is O(n) and k-independent)
    from microagg import solve_simple

    def timed_dp(k, reps):
        calc = preprocess(SortedDataset.from_sorted(x1), k, "sse")
        ts = []
        for _ in range(reps):
            t0 = time.perf_counter()
            solve_simple(calc)
            ts.append(time.perf_counter() - t0)
        return float(np.median(ts))

    t_k10 = timed_dp(10, 3)
    t_k200 = timed_dp(200, 3)
    kratio = t_k200 / t_k10
    assert kratio >= 5.0, (t_k10, t_k200)
    _say(8, "linearity smoke", "PASS",
         f"(staggered 2e6/1e6 = {ratio:.2f}x <= 2.8, "
         f"simple k200/k10 = {kratio:.1f}x >= 5)")


def test_criterion_9_rebase_safety():
    rng = np.random.default_rng(9009)
    ks = (2, 3, 8)
    for i in range(100):
        k = ks[i % 3]
        y = rng.random(10**4)
        plain = solve(y, k, "sse", SolverOptions(algorithm="simple+",
                                                 rebase=False))
        rebased = solve(y, k, "sse", SolverOptions(algorithm="simple+",
                                                   rebase=True))
        assert np.array_equal(plain.labels, rebased.labels), (i, k)
    z = rng.random(10**6) * 1e9
    plain = solve(z, 2, "sse", SolverOptions(algorithm="simple+",
                                             rebase=False))
    rebased = solve(z, 2, "sse", SolverOptions(algorithm="simple+",
                                               rebase=True))
    assert rebased.total_cost <= plain.total_cost
    _say(9, "rebase safety", "PASS",
         f"(100 label-identical runs; adversarial rebased "
         f"{rebased.total_cost:.6e} <= plain {plain.total_cost:.6e})")


def test_criterion_10_alternative_cost_equivalence():
    t0 = time.perf_counter()
    cells = 0
    for vals in _criterion1_instances():
        n = len(vals)
        for k in range(1, n + 1):
            for kind in ALT_KINDS:
                for alg in ALL_ALGS:
                    a = solve(vals, k, kind,
                              SolverOptions(algorithm=alg, sum_mode="full"),
                              presorted=True)
                    b = solve(vals, k, kind,
                              SolverOptions(algorithm=alg,
                                            sum_mode="alternative"),
                              presorted=True)
                    assert abs(a.total_cost - b.total_cost) <= 1e-9, \
                        (alg, kind, k, vals.tolist())
                    cells += 1
    # at scale the surrogate needs the bounded live window of the
    # size-restricted solvers (plus rebasing) to stay well conditioned
    rng = np.random.default_rng(1010)
    x = np.sort(rng.random(10**6))
    for alg in ("simple", "simple+", "staggered"):
        for kind in ALT_KINDS:
            a = solve(x, 5, kind, SolverOptions(algorithm=alg,
                                                sum_mode="full"),
                      presorted=True)
            b = solve(x, 5, kind, SolverOptions(algorithm=alg,
                                                sum_mode="alternative"),
                      presorted=True)
            assert abs(a.total_cost - b.total_cost) <= 1e-6 * abs(a.total_cost)
    _say(10, "alternative-cost equivalence", "PASS",
         f"({cells} small cells + n=1e6 sweep, "
         f"{time.perf_counter() - t0:.1f}s)")
