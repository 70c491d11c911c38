from __future__ import annotations

import time

import numpy as np

from ..impurity import ContractViolation, GiniInstance
from ..reduction import KMeansInstance, normalize, weighted_sse
from .base import SolveResult, run_rounds, spawn_seeds

MAX_ITER = 200
REL_TOL = 1e-10


def sq_dists(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centers[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def weighted_d2_seeding(km: KMeansInstance, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ seeding on weighted points.

    The first center is drawn proportionally to weight, the rest proportionally
    to ``weight * D^2`` where ``D`` is the distance to the nearest chosen
    center.  If every point already sits on a center the draw falls back to
    weight alone.
    """
    w = km.weights.astype(np.float64)
    first = rng.choice(km.n_points, p=w / w.sum())
    centers = [km.coords[first]]
    d2 = sq_dists(km.coords, np.array(centers))[:, 0]
    for _ in range(1, k):
        mass = w * d2
        total = mass.sum()
        p = mass / total if total > 0 else w / w.sum()
        idx = rng.choice(km.n_points, p=p)
        centers.append(km.coords[idx])
        d2 = np.minimum(d2, sq_dists(km.coords, km.coords[idx][None, :])[:, 0])
    return np.array(centers)


def _cost(km: KMeansInstance, labels: np.ndarray, centers: np.ndarray) -> float:
    diff = km.coords - centers[labels]
    return float(np.dot(km.weights, np.einsum("ij,ij->i", diff, diff)))


def _centroids(km: KMeansInstance, labels: np.ndarray, centers: np.ndarray):
    k = len(centers)
    wsum = np.bincount(labels, weights=km.weights, minlength=k)
    acc = np.zeros_like(centers)
    np.add.at(acc, labels, km.coords * km.weights[:, None])
    filled = wsum > 0
    out = centers.copy()
    out[filled] = acc[filled] / wsum[filled, None]
    return out, filled


def lloyd_once(km: KMeansInstance, k: int, rng: np.random.Generator, max_iter: int = MAX_ITER):
    """One seeded run of weighted Lloyd iterations.

    Returns ``(labels, centers, cost_history, iterations)``; ``cost_history``
    holds the weighted cost after every assignment and center update, so it
    is non-increasing.
    """
    centers = weighted_d2_seeding(km, k, rng)
    labels = np.argmin(sq_dists(km.coords, centers), axis=1)
    history = [_cost(km, labels, centers)]
    it = 0
    for it in range(1, max_iter + 1):
        centers, filled = _centroids(km, labels, centers)
        # empty group: take over the point farthest from its own center
        for g in np.flatnonzero(~filled):
            diff = km.coords - centers[labels]
            own = np.einsum("ij,ij->i", diff, diff)
            far = int(np.argmax(own))
            if own[far] <= 0.0:
                break
            labels[far] = g
            centers, _ = _centroids(km, labels, centers)
        history.append(_cost(km, labels, centers))

        d2 = sq_dists(km.coords, centers)
        new_labels = np.argmin(d2, axis=1)
        # exact ties keep the current label so the loop can settle
        rows = np.arange(km.n_points)
        new_labels = np.where(d2[rows, labels] <= d2[rows, new_labels], labels, new_labels)
        cost = _cost(km, new_labels, centers)
        history.append(cost)
        stable = np.array_equal(new_labels, labels)
        labels = new_labels
        prev = history[-3]
        if stable or prev - cost <= REL_TOL * prev:
            break
    return labels, centers, history, it


def solve_lloyd(
    inst: GiniInstance,
    k: int | None = None,
    seed: int = 0,
    restarts: int = 10,
    threads: int = 1,
    max_iter: int = MAX_ITER,
) -> SolveResult:
    """Weighted Lloyd heuristic on the normalized instance, best of ``restarts``.

    Every restart gets its own child seed, so the result does not depend on
    ``threads``.  Restarts are ranked by their objective2 value (equal to the
    weighted k-means cost at optimal centers); ties keep the earliest restart.
    """
    k = inst.k if k is None else k
    if not 1 <= k <= inst.n:
        raise ContractViolation(f"k must satisfy 1 <= k <= n={inst.n}, got {k}")
    if restarts < 1:
        raise ContractViolation("restarts must be >= 1")
    started = time.perf_counter()
    inst = inst.with_k(k)
    km = normalize(inst)

    def one(ss):
        labels, _, history, it = lloyd_once(km, k, np.random.default_rng(ss), max_iter)
        return labels, history, it

    runs = run_rounds(one, spawn_seeds(seed, restarts), threads)
    finals = [weighted_sse(km, labels, k) for labels, _, _ in runs]
    best = int(np.argmin(finals))
    labels, history, it = runs[best]
    return SolveResult.build(
        inst,
        labels,
        "lloyd",
        started,
        iterations=int(sum(r[2] for r in runs)),
        seed=int(seed),
        trace={"best_restart": best, "cost_history": history, "restart_costs": finals},
    )
