"""
From Gini partitioning to weighted k-means
"""

import numpy as np

from ginipart import GiniInstance, merge_identical, normalize, objective_equivalence, optimal_centers
from ginipart.reduction import c1_check, gini_gap_identity, gini_gap_printed_factor, kmeans_cost

## Same-norm sets: the Gini gap is a scaled squared error
X = [[1, 1], [2, 0]]
lhs, rhs = gini_gap_identity(X)
print("gap =", lhs, " (1/L)*spread =", rhs)
print("with factor L instead:", gini_gap_printed_factor(X)[1])

## Every vector becomes a direction with a multiplicity
V = GiniInstance([[4, 0], [0, 4], [3, 1], [6, 2]], k=2)
km = normalize(V)
print(km.coords, km.weights, km.total_weight)

# (3,1) and (6,2) point the same way; merging folds them into one weighted point
merged, index_map = merge_identical(km)
print(merged.coords, merged.weights, index_map)

## Any grouping scores the same on both sides
labels = np.array([0, 1, 0, 0])
print(objective_equivalence(V, labels))
centers = optimal_centers(km, labels)
print("centers", centers.centers, "cost", kmeans_cost(km, labels, centers))

## On same-norm inputs the optimal groupings coincide
rep = c1_check(GiniInstance([[1, 1], [2, 0], [0, 2], [1, 1]], k=2))
print(rep.argmin_eq1 == rep.argmin_km, sorted(rep.argmin_eq1), rep.max_affine_residual)
