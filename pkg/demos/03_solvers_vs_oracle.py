"""
Exact, Lloyd and sampling-based solvers compared with the exhaustive optimum
"""

import numpy as np

from ginipart import PtasConfig, approximation_ratio, solve_brute_force, solve_lloyd, solve_ptas
from ginipart.bench import random_instance, run_bench

rng = np.random.default_rng(0)
inst = random_instance(rng, n_range=(9, 9), d_range=(3, 3), k_choices=(3,))
print(inst.vectors)

oracle = solve_brute_force(inst)
lloyd = solve_lloyd(inst, seed=1, restarts=10)
ptas = solve_ptas(inst, PtasConfig(epsilon=0.1, boost_rounds=20, rng_seed=1))

for res in (oracle, lloyd, ptas):
    print(
        f"{res.solver_name:6s} eq1={res.objective1:9.4f} eq2={res.objective2:8.4f} "
        f"ratio2={approximation_ratio(res, oracle, 'eq2'):.4f} groups={res.groups()}"
    )

## Lloyd's weighted cost never goes up
hist = lloyd.trace["cost_history"]
print("monotone:", all(b <= a + 1e-12 for a, b in zip(hist, hist[1:])))

## What the sampling search did
print({key: ptas.trace[key] for key in ("distinct_points", "total_weight", "draws", "search_steps_per_draw")})

## A small ratio table
table = run_bench(seed=3, trials=10, rounds=5)
for name, row in table["summary"].items():
    print(name, row)
