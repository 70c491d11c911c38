"""Recursive superset-sampling approximation scheme on the multiplicity representation.

The weighted instance keeps each distinct normalized vector once together
with its multiplicity.  A node of the recursion holds the remaining weight
per distinct point (``R``), the number of centers still to place (``l``) and
the centers fixed so far (``C``), and branches two ways:

* sampling: draw a multiset of ``sample_size`` points from ``R`` with
  probability proportional to remaining weight (prefix sums + binary search,
  so each draw costs ``O(log n)`` over the distinct points), then recurse with
  the centroid of every candidate subset of the sample appended to ``C``;
* pruning: drop the half of ``R``'s weight that lies closest to ``C``, walking
  the distinct points in order of distance and splitting the boundary point's
  multiplicity, and recurse with the same ``l``.

Every completed center set is scored by the Voronoi assignment it induces,
evaluated at that assignment's own weighted centroids.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass

import numpy as np

from ..impurity import ContractViolation, GiniInstance
from ..reduction import merge_identical, normalize
from .base import SolveResult, run_rounds, spawn_seeds

MAX_PTAS_K = 4


@dataclass
class PtasConfig:
    epsilon: float = 0.1
    k: int | None = None
    boost_rounds: int = 20
    sample_size: int | None = None
    subset_size: int = 1
    rng_seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ContractViolation(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.boost_rounds < 1:
            raise ContractViolation("boost_rounds must be >= 1")
        if self.sample_size is None:
            self.sample_size = 4 * math.ceil(1.0 / self.epsilon)
        if self.sample_size < 1 or self.subset_size < 1:
            raise ContractViolation("sample_size and subset_size must be >= 1")


def weighted_draws(weights: np.ndarray, size: int, rng: np.random.Generator) -> np.ndarray:
    """Indices drawn proportionally to ``weights`` by binary search in the prefix sums."""
    prefix = np.cumsum(weights, dtype=np.float64)
    u = rng.random(size) * prefix[-1]
    return np.searchsorted(prefix, u, side="right")


def closest_half(coords: np.ndarray, remaining: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Remove the half of the remaining weight nearest to ``centers``.

    Works on distinct points only: they are visited by increasing distance
    (lowest index first on ties) and whole multiplicities are removed until
    the boundary point, which loses just the amount still owed.
    """
    live = np.flatnonzero(remaining > 0)
    diff = coords[live][:, None, :] - centers[None, :, :]
    dist = np.einsum("ijk,ijk->ij", diff, diff).min(axis=1)
    order = live[np.lexsort((live, dist))]
    owed = max(1, int(remaining.sum()) // 2)
    out = remaining.copy()
    for i in order:
        take = min(owed, int(out[i]))
        out[i] -= take
        owed -= take
        if owed == 0:
            break
    return out


def sample_candidates(sample: np.ndarray, coords: np.ndarray, subset_size: int) -> np.ndarray:
    """Candidate centers from sub-multisets of the sample.

    A sub-multiset is identified with the set of distinct points it keeps;
    each kept point enters the centroid with its multiplicity in the sample.
    All sub-multisets with at most ``subset_size`` distinct points are used,
    plus the whole sample.
    """
    types, counts = np.unique(sample, return_counts=True)
    out = [coords[types]]
    for r in range(2, min(subset_size, len(types)) + 1):
        for combo in itertools.combinations(range(len(types)), r):
            idx = list(combo)
            out.append(np.average(coords[types[idx]], axis=0, weights=counts[idx])[None, :])
    if len(types) > subset_size:
        out.append(np.average(coords[types], axis=0, weights=counts)[None, :])
    return np.vstack(out)


class _RoundSearch:
    def __init__(self, coords: np.ndarray, weights: np.ndarray, k: int, cfg: PtasConfig, rng: np.random.Generator):
        self.coords = coords
        self.weights = weights
        self.k = k
        self.cfg = cfg
        self.rng = rng
        self.leaves: list[np.ndarray] = []
        self.seen: set[bytes] = set()
        self.nodes = 0
        self.draws = 0

    def emit(self, centers: list[np.ndarray]):
        arr = np.array(centers)
        key = np.round(arr, 12)
        key = key[np.lexsort(key.T[::-1])].tobytes()
        if key not in self.seen:
            self.seen.add(key)
            self.leaves.append(arr)

    def run(self, remaining: np.ndarray, l: int, centers: list[np.ndarray]):
        self.nodes += 1
        if l == 0:
            self.emit(centers)
            return
        live = np.flatnonzero(remaining > 0)
        if len(live) <= l:
            extra = [self.coords[i] for i in live]
            # pad with copies; duplicate centers leave groups empty
            pad = [extra[-1] if extra else centers[-1]] * (l - len(extra))
            self.emit(centers + extra + pad)
            return
        sample = weighted_draws(remaining, self.cfg.sample_size, self.rng)
        self.draws += len(sample)
        for c in sample_candidates(sample, self.coords, self.cfg.subset_size):
            self.run(remaining, l - 1, centers + [c])
        if centers:
            self.run(closest_half(self.coords, remaining, np.array(centers)), l, centers)


def _score(coords: np.ndarray, weights: np.ndarray, center_sets: np.ndarray):
    """Voronoi labels and their weighted SSE at recomputed centroids, batched over center sets."""
    diff = coords[None, :, None, :] - center_sets[:, None, :, :]
    labels = np.einsum("pikd,pikd->pik", diff, diff).argmin(axis=2)
    k = center_sets.shape[1]
    onehot = (labels[:, :, None] == np.arange(k)).astype(np.float64) * weights[None, :, None]
    wsum = onehot.sum(axis=1)
    lin = np.einsum("pig,id->pgd", onehot, coords)
    sq = np.einsum("pig,i->pg", onehot, np.einsum("id,id->i", coords, coords))
    safe = np.where(wsum > 0, wsum, 1.0)
    cost = (sq - np.einsum("pgd,pgd->pg", lin, lin) / safe).sum(axis=1)
    return labels, cost


def solve_ptas(inst: GiniInstance, cfg: PtasConfig | None = None) -> SolveResult:
    """(1+eps)-style approximation for fixed small k on the weighted reduction.

    Runs ``cfg.boost_rounds`` independent rounds (each with its own child
    seed) and keeps the lowest objective2 value, earliest round on ties.
    """
    cfg = cfg or PtasConfig()
    k = inst.k if cfg.k is None else cfg.k
    if k > MAX_PTAS_K:
        raise ContractViolation(f"ptas is limited to k <= {MAX_PTAS_K} at this scale, got k={k}")
    if not 1 <= k <= inst.n:
        raise ContractViolation(f"k must satisfy 1 <= k <= n={inst.n}, got {k}")
    started = time.perf_counter()
    inst = inst.with_k(k)
    merged, index_map = merge_identical(normalize(inst))
    coords, weights = merged.coords, merged.weights

    if merged.n_points <= k:
        return SolveResult.build(
            inst, index_map, "ptas", started, seed=int(cfg.rng_seed), trace={"degenerate": True, "distinct": merged.n_points}
        )

    def one_round(ss):
        search = _RoundSearch(coords, weights, k, cfg, np.random.default_rng(ss))
        search.run(weights.copy(), k, [])
        labels, cost = _score(coords, weights.astype(np.float64), np.array(search.leaves))
        best = int(np.argmin(cost))
        return labels[best], float(cost[best]), search.nodes, search.draws, len(search.leaves)

    rounds = run_rounds(one_round, spawn_seeds(cfg.rng_seed, cfg.boost_rounds), cfg.threads)
    costs = [r[1] for r in rounds]
    best = int(np.argmin(costs))
    n_distinct = merged.n_points
    return SolveResult.build(
        inst,
        rounds[best][0][index_map],
        "ptas",
        started,
        iterations=int(sum(r[2] for r in rounds)),
        seed=int(cfg.rng_seed),
        trace={
            "best_round": best,
            "round_costs": costs,
            "nodes": [r[2] for r in rounds],
            "leaves": [r[4] for r in rounds],
            "draws": int(sum(r[3] for r in rounds)),
            "search_steps_per_draw": math.ceil(math.log2(max(n_distinct, 2))),
            "distinct_points": n_distinct,
            "total_weight": merged.total_weight,
        },
    )
