from __future__ import annotations

import time

import numpy as np

from ..impurity import ContractViolation, GiniInstance
from ..partitions import branch_and_bound_min
from .base import SolveResult

MAX_BRUTE_N = 14


def _gini_block(total: np.ndarray, count: int) -> float:
    s = total.sum()
    return 0.0 if s == 0 else float(s - total.dot(total) / s)


def solve_brute_force(inst: GiniInstance, max_n: int = MAX_BRUTE_N) -> SolveResult:
    """Exact minimizer of the weighted-Gini partition cost.

    Walks restricted-growth strings depth first and cuts any branch whose
    partial cost already reaches the incumbent (adding a vector to a group
    never lowers its weighted Gini).  Among optimal partitions the
    lexicographically smallest RGS is returned.
    """
    if inst.n > max_n:
        raise ContractViolation(
            f"brute force refuses n={inst.n} > {max_n}: the number of partitions grows like the Bell numbers"
        )
    started = time.perf_counter()
    if inst.k == 1:
        return SolveResult.build(inst, np.zeros(inst.n, dtype=np.int64), "brute", started, trace={"nodes": 1})
    rgs, _, nodes = branch_and_bound_min(
        inst.vectors, inst.k, _gini_block, lambda row: np.asarray(row, dtype=np.float64)
    )
    return SolveResult.build(inst, rgs, "brute", started, iterations=nodes, trace={"nodes": nodes})
