"""Seeded random corpora and the solver-vs-oracle ratio table."""

from __future__ import annotations

import numpy as np

from .impurity import GiniInstance
from .solvers import (
    PtasConfig,
    approximation_ratio,
    dominance_holds,
    solve_brute_force,
    solve_lloyd,
    solve_ptas,
)


def random_instance(
    rng: np.random.Generator,
    n_range: tuple[int, int] = (3, 10),
    d_range: tuple[int, int] = (2, 4),
    count_max: int = 30,
    k_choices=(2, 3),
) -> GiniInstance:
    """Instance with n, d drawn uniformly from the inclusive ranges and counts in [0, count_max]."""
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    d = int(rng.integers(d_range[0], d_range[1] + 1))
    k = int(rng.choice(k_choices))
    while True:
        v = rng.integers(0, count_max + 1, size=(n, d))
        if np.all(v.sum(axis=1) > 0):
            break
    return GiniInstance(v, min(k, n))


def random_same_norm_set(rng: np.random.Generator, size: int, d: int, norm: int) -> np.ndarray:
    """``size`` count vectors in ``d`` classes, each summing to ``norm`` (uniform compositions)."""
    # stars and bars: sorted cut points give a uniform composition
    cuts = np.sort(rng.integers(0, norm + 1, size=(size, d - 1)), axis=1)
    edges = np.concatenate([np.zeros((size, 1), dtype=np.int64), cuts, np.full((size, 1), norm)], axis=1)
    return np.diff(edges, axis=1)


def random_assignment(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    return rng.integers(0, k, size=n)


def corpus(seed: int, trials: int, **kw) -> list[GiniInstance]:
    rng = np.random.default_rng(seed)
    return [random_instance(rng, **kw) for _ in range(trials)]


def run_bench(
    seed: int = 0,
    trials: int = 30,
    solvers=("lloyd", "ptas"),
    epsilon: float = 0.1,
    rounds: int = 20,
    restarts: int = 10,
    threads: int = 1,
    **corpus_kw,
) -> dict:
    """Ratio of every solver to the exact oracle, per instance and in summary.

    Also counts violations of the rule that an objective2 ratio bounds the
    objective1 ratio (only meaningful where the objective2 optimum is positive).
    """
    rows = []
    summary = {s: {"ratios_eq1": [], "ratios_eq2": [], "dominance_violations": 0} for s in solvers}
    for t, inst in enumerate(corpus(seed, trials, **corpus_kw)):
        oracle = solve_brute_force(inst)
        row = {
            "trial": t,
            "n": inst.n,
            "d": inst.d,
            "k": inst.k,
            "oracle_objective1": oracle.objective1,
            "oracle_objective2": oracle.objective2,
        }
        for name in solvers:
            sub_seed = seed * 1_000_003 + t
            if name == "lloyd":
                res = solve_lloyd(inst, seed=sub_seed, restarts=restarts, threads=threads)
            elif name == "ptas":
                res = solve_ptas(inst, PtasConfig(epsilon=epsilon, boost_rounds=rounds, rng_seed=sub_seed, threads=threads))
            elif name == "brute":
                res = solve_brute_force(inst)
            else:
                raise ValueError(f"unknown solver {name!r}")
            r1 = approximation_ratio(res, oracle, "eq1")
            r2 = approximation_ratio(res, oracle, "eq2")
            ok = dominance_holds(res, oracle)
            row[name] = {"ratio_eq1": r1, "ratio_eq2": r2, "dominance_ok": ok}
            summary[name]["ratios_eq1"].append(r1)
            summary[name]["ratios_eq2"].append(r2)
            summary[name]["dominance_violations"] += int(not ok)
        rows.append(row)
    table = {}
    for name, s in summary.items():
        r2 = np.array(s["ratios_eq2"])
        finite = r2[np.isfinite(r2)]
        table[name] = {
            "max_ratio_eq1": float(np.max(s["ratios_eq1"])) if rows else 1.0,
            "max_ratio_eq2": float(np.max(r2)) if rows else 1.0,
            "mean_ratio_eq2": float(finite.mean()) if finite.size else float("nan"),
            "within_1_plus_eps": int(np.sum(r2 <= 1.0 + epsilon + 1e-12)),
            "dominance_violations": s["dominance_violations"],
        }
    return {"seed": seed, "trials": trials, "epsilon": epsilon, "summary": table, "rows": rows}
