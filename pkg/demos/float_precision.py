"""Where 64-bit floats bend the answer, and the two countermeasures.

Running sums over a long array grow until a window difference loses its
last bits: on plain consecutive integers, the prefix-sum SSE of a
three-point window comes out 1 instead of 2.  Restarting the sums every
k positions (partial sums) keeps each stored value small and the window
exact.  Independently, the running total of the dynamic program can be
rebased toward zero every few columns, where floats are densest.
"""

import numpy as np

from microagg import SolverOptions, SortedDataset, preprocess, solve

x = np.arange(400_001, dtype=np.float64)
ds = SortedDataset.from_sorted(x)

full = preprocess(ds, 3, "sse", "full")
part = preprocess(ds, 3, "sse", "partial")
i, j = 300_079, 300_082
w = x[i:j]
print(f"window x[{i}:{j}] = {w.astype(int).tolist()}")
print(f"  exact SSE:                 {((w - w.mean()) ** 2).sum():g}")
print(f"  via full prefix sums:      {full.cluster_cost(i, j):g}   <- rounded")
print(f"  via partial (k-block) sums: {part.cluster_cost(i, j):g}")

run_full = solve(x, 3, "sse", SolverOptions(algorithm="staggered"),
                 presorted=True)
run_part = solve(x, 3, "sse",
                 SolverOptions(algorithm="staggered", sum_mode="partial"),
                 presorted=True)
print(f"\nfull-prefix clustering total:    {run_full.total_cost:.6f}")
print(f"partial-prefix clustering total: {run_part.total_cost:.6f}")

# rebasing: identical labels on ordinary data, never worse on huge ones
rng = np.random.default_rng(1)
big = rng.random(200_000) * 1e9
plain = solve(big, 2, "sse", SolverOptions(algorithm="simple+"))
rebased = solve(big, 2, "sse", SolverOptions(algorithm="simple+",
                                             rebase=True))
print(f"\nvalues ~1e9, n=200k: plain total   {plain.total_cost:.6e}")
print(f"                     rebased total {rebased.total_cost:.6e}")
print("rebased is never costlier: the stored totals stay near zero, so")
print("candidate comparisons keep their low-order bits.")
