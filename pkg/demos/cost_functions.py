"""The five distortion costs and their release values on one dataset.

Each cost kind pairs with the representative that minimizes it within a
cluster: mean for squared error, median for absolute error, midrange for
maximum distance, max/min for the round-up/round-down costs (useful when
released values must never under- or over-state the original).
"""

import numpy as np

from microagg import solve

rng = np.random.default_rng(7)
data = np.round(np.concatenate([rng.normal(20, 2, 6), rng.normal(50, 4, 6)]))
print("data:", np.sort(data).astype(int).tolist(), "\n")

K = 3
print(f"{'cost kind':>10} {'total':>8}  clusters -> representative")
for kind in ("sse", "sae", "maxdist", "roundup", "rounddown"):
    r = solve(data, K, kind)
    xs = np.sort(data)
    parts = []
    for c in range(r.num_clusters):
        lo, hi = r.boundaries[c], r.boundaries[c + 1]
        parts.append(f"{xs[lo:hi].astype(int).tolist()} -> "
                     f"{r.representatives[c]:g}")
    print(f"{kind:>10} {r.total_cost:8.2f}  " + " | ".join(parts))

print("\nround-up releases never exceed any original value from below;")
print("round-down never understates: handy for conservative reporting.")
