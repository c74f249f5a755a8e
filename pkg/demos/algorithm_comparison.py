"""Five routes to the same optimum, from O(n^2) to O(n).

All solvers minimize the same objective, so their recomputed totals
agree to rounding; what differs is how much of the cost matrix they
touch.  The size-restricted scans (simple, simple+) win for small k, the
SMAWK-based solvers (staggered, wilber) stay flat as k grows.
"""

import time

import numpy as np

from microagg import Algorithm, SolverOptions, solve

rng = np.random.default_rng(0)
n = 200_000
data = np.sort(rng.random(n))

# small run first so timings below measure the algorithms, not the JIT
for alg in Algorithm.ALL:
    solve(data[:4000], 10, "sse", SolverOptions(algorithm=alg),
          presorted=True)

for k in (5, 50, 500):
    print(f"\nn={n:,}  k={k}")
    for alg in Algorithm.ALL:
        if alg == "classic" and n > 50_000:
            print(f"  {alg:10s}        --  (quadratic scan, skipped)")
            continue
        t0 = time.perf_counter()
        r = solve(data, k, "sse", SolverOptions(algorithm=alg),
                  presorted=True)
        dt = time.perf_counter() - t0
        print(f"  {alg:10s} {dt * 1000:9.1f} ms   cost={r.total_cost:.9f}  "
              f"clusters={r.num_clusters}")

print("\n'auto' picks simple+ below k=256 and staggered above:")
for k in (50, 500):
    r = solve(data, k, "sse", presorted=True)
    print(f"  k={k:4d} -> {r.algorithm_used}")
