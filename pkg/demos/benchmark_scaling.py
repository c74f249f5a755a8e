"""Runtime scaling of the solvers, reproducible from the command line too.

The same sweep is available as `microagg bench --n 1000000 --k-list
2,10,100,1000 --algorithms simple,simple+,staggered,wilber`, which emits
a CSV (algorithm,sum_mode,n,k,repeat,seconds,total_cost) plus a
sort-only baseline row per repeat.
"""

import time

import numpy as np

from microagg import SolverOptions, solve
from microagg.cli import main

n = 300_000
rng = np.random.default_rng(42)
data = rng.random(n)
data_sorted = np.sort(data)

for alg in ("simple", "simple+", "staggered", "wilber"):
    solve(data_sorted[:4000], 10, "sse", SolverOptions(algorithm=alg),
          presorted=True)  # warm the JIT cache

t0 = time.perf_counter()
np.sort(data)
print(f"sort baseline: {(time.perf_counter() - t0) * 1000:8.1f} ms\n")

print(f"{'k':>6} " + "".join(f"{a:>12}" for a in
                             ("simple", "simple+", "staggered", "wilber")))
for k in (2, 20, 200, 2000):
    row = [f"{k:>6}"]
    for alg in ("simple", "simple+", "staggered", "wilber"):
        t0 = time.perf_counter()
        solve(data_sorted, k, "sse", SolverOptions(algorithm=alg),
              presorted=True)
        row.append(f"{(time.perf_counter() - t0) * 1000:10.1f}ms")
    print(" ".join(row))

print("\nsame thing through the CLI (tiny run):")
main(["bench", "--n", "2000", "--k-list", "2,10", "--repeats", "1",
      "--algorithms", "simple+,staggered", "--seed", "7"])
