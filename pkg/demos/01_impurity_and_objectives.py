"""
Impurity of class-count vectors and the two ways of scoring a split
"""

import numpy as np

from ginipart import GiniInstance, entropy_impurity, gini_impurity, partition_cost_eq1, partition_cost_eq2, weighted_gini

## Impurity of a single node
# counts per class: 3 examples of class 0, 1 of class 1
u = np.array([3, 1])
print("gini     ", gini_impurity(u))             # 0.375
print("entropy  ", entropy_impurity(u))          # 0.5623...
print("bits     ", entropy_impurity(u, base2=True))
print("weighted ", weighted_gini(u))             # 4 * 0.375

# scaling all counts changes the weighted Gini but not the impurity
print(gini_impurity(10 * u), weighted_gini(10 * u))

## A nominal attribute with three values
# row j counts the examples per class that take attribute value a_j
V = GiniInstance([[4, 0], [0, 4], [3, 1]], k=2)

for labels in ([0, 1, 0], [0, 0, 1], [0, 1, 1]):
    print(labels, "eq1 =", partition_cost_eq1(V, labels), "eq2 =", partition_cost_eq2(V, labels))

# keeping every value on its own branch makes the second objective vanish
print("singletons:", partition_cost_eq2(V.with_k(3), [0, 1, 2]))
