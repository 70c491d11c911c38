from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from ..impurity import GiniInstance, partition_cost_eq1, partition_cost_eq2
from ..partitions import canonical_labels


@dataclass
class SolveResult:
    assignment: np.ndarray
    objective1: float
    objective2: float
    solver_name: str
    iterations: int = 0
    seed: int = 0
    wall_time: float = 0.0
    trace: dict = field(default_factory=dict)

    @classmethod
    def build(cls, inst: GiniInstance, assignment, solver_name: str, started: float, **kw) -> "SolveResult":
        a = np.array(canonical_labels(assignment), dtype=np.int64)
        return cls(
            assignment=a,
            objective1=partition_cost_eq1(inst, a),
            objective2=partition_cost_eq2(inst, a),
            solver_name=solver_name,
            wall_time=time.perf_counter() - started,
            **kw,
        )

    def groups(self) -> list[list[int]]:
        return [np.flatnonzero(self.assignment == g).tolist() for g in range(int(self.assignment.max()) + 1)]


def spawn_seeds(seed: int, count: int) -> list[np.random.SeedSequence]:
    """Independent per-round seed sequences derived from one 64-bit seed."""
    return np.random.SeedSequence(int(seed)).spawn(count)


def run_rounds(fn, seeds, threads: int = 1):
    """Apply ``fn`` to every seed, serially or on a thread pool; order is preserved."""
    if threads <= 1:
        return [fn(s) for s in seeds]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, seeds))
