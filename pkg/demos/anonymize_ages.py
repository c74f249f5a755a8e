"""Anonymize a quasi-identifying column while keeping it useful.

A toy medical table has an age column that, combined with outside
knowledge, could single out individuals.  Replacing each age by the mean
of its cluster (clusters chosen optimally, each holding at least k
people) makes every row blend in with at least k-1 others.
"""

import numpy as np

from microagg import solve

ages = np.array([23, 25, 24, 31, 33, 58, 60, 61, 59, 44, 45, 46, 27, 30],
                dtype=float)
conditions = ["flu", "ok", "ok", "asthma", "flu", "ok", "diabetes", "ok",
              "flu", "ok", "asthma", "ok", "ok", "flu"]

K = 3
result = solve(ages, K, "sse")

print(f"optimal clustering with k={K}, SSE distortion "
      f"{result.total_cost:.2f}, {result.num_clusters} clusters\n")
print(f"{'age':>5} {'released':>9}  condition")
for age, label, cond in zip(ages, result.labels, conditions):
    released = result.representatives[label]
    print(f"{age:5.0f} {released:9.2f}  {cond}")

sizes = result.cluster_sizes()
print(f"\ncluster sizes: {sizes.tolist()} (every size >= {K}, "
      f"so each released age is shared by >= {K} rows)")
