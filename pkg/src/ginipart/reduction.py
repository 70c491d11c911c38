"""Bridge between Gini partitioning and (weighted) geometric k-means.

Each count vector ``v`` becomes the point ``v / |v|_1`` carrying integer
weight ``|v|_1``.  For any fixed grouping, the objective2 cost of the grouping
equals the weighted squared error of the points to their weighted group
centroids, so k-means machinery can be applied to Gini minimization.

For a set of count vectors sharing one l1 norm ``L`` the unweighted form
holds as well::

    Gini(sum X) - sum_{v in X} Gini(v) = (1/L) * sum_{v in X} |v - c|^2

with ``c`` the plain centroid of ``X``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .impurity import (
    ContractViolation,
    DomainError,
    GiniInstance,
    as_counts,
    check_assignment,
    partition_cost_eq2,
    weighted_gini,
    weighted_gini_rows,
)
from .partitions import restricted_growth_strings


@dataclass(frozen=True)
class WeightedPoint:
    coords: np.ndarray
    weight: int
    origin_index: int

    def to_counts(self) -> np.ndarray:
        return np.rint(self.coords * self.weight).astype(np.int64)


@dataclass(frozen=True)
class KMeansInstance:
    """Weighted point set: ``coords[i]`` carries multiplicity ``weights[i]``.

    ``origins[i]`` lists the source-vector indices folded into point ``i``
    (a single index unless ``merge_identical`` was applied).
    """

    coords: np.ndarray
    weights: np.ndarray
    origins: tuple[tuple[int, ...], ...]
    k: int

    @property
    def n_points(self) -> int:
        return self.coords.shape[0]

    @property
    def d(self) -> int:
        return self.coords.shape[1]

    @property
    def total_weight(self) -> int:
        return int(self.weights.sum())

    @property
    def points(self) -> list[WeightedPoint]:
        return [
            WeightedPoint(self.coords[i], int(self.weights[i]), self.origins[i][0])
            for i in range(self.n_points)
        ]

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "points": [
                {"coords": self.coords[i].tolist(), "weight": int(self.weights[i]), "origin": int(self.origins[i][0])}
                for i in range(self.n_points)
            ],
            "total_weight": self.total_weight,
        }


@dataclass
class CentroidSet:
    centers: np.ndarray
    empty: np.ndarray = field(default=None)

    def __post_init__(self):
        self.centers = np.asarray(self.centers, dtype=np.float64)
        if self.empty is None:
            self.empty = np.zeros(len(self.centers), dtype=bool)


def normalize(inst: GiniInstance) -> KMeansInstance:
    """One weighted point per source vector: coords ``v/|v|_1``, weight ``|v|_1``."""
    vecs = inst.vectors
    weights = vecs.sum(axis=1)
    if np.any(weights == 0):
        raise DomainError("cannot normalize a zero vector")
    coords = vecs / weights[:, None]
    return KMeansInstance(coords, weights.astype(np.int64), tuple((i,) for i in range(inst.n)), inst.k)


def merge_identical(km: KMeansInstance) -> tuple[KMeansInstance, np.ndarray]:
    """Fold identical points into one, summing weights.

    Returns the merged instance and ``index_map`` with ``index_map[i]`` the
    merged point holding original point ``i``.  Identity is decided on the
    exact rational direction, i.e. on the reduced integer vector, so float
    noise never splits a class of identical points.
    """
    keys: dict[tuple, int] = {}
    index_map = np.empty(km.n_points, dtype=np.int64)
    coords, weights, origins = [], [], []
    for i in range(km.n_points):
        counts = np.rint(km.coords[i] * km.weights[i]).astype(np.int64)
        g = int(np.gcd.reduce(counts))
        key = tuple((counts // g).tolist())
        j = keys.get(key)
        if j is None:
            j = keys[key] = len(coords)
            coords.append(km.coords[i])
            weights.append(int(km.weights[i]))
            origins.append(list(km.origins[i]))
        else:
            weights[j] += int(km.weights[i])
            origins[j].extend(km.origins[i])
        index_map[i] = j
    merged = KMeansInstance(
        np.array(coords, dtype=np.float64),
        np.array(weights, dtype=np.int64),
        tuple(tuple(o) for o in origins),
        min(km.k, len(coords)),
    )
    return merged, index_map


def materialize_copies(km: KMeansInstance) -> np.ndarray:
    """Unweighted view: each point repeated ``weight`` times (pseudo-polynomial size)."""
    return np.repeat(km.coords, km.weights, axis=0)


def _check_points_assignment(km: KMeansInstance, assignment, k: int) -> np.ndarray:
    a = np.asarray(assignment)
    if a.shape != (km.n_points,):
        raise ContractViolation(f"assignment must have length {km.n_points}, got shape {a.shape}")
    a = a.astype(np.int64)
    if np.any(a < 0) or np.any(a >= k):
        raise ContractViolation(f"assignment labels must lie in [0, {k})")
    return a


def kmeans_cost(km: KMeansInstance, assignment, centers: CentroidSet | np.ndarray) -> float:
    """``sum_i weight_i * |coords_i - center_{a_i}|^2``."""
    c = centers.centers if isinstance(centers, CentroidSet) else np.asarray(centers, dtype=np.float64)
    if c.ndim != 2 or c.shape[1] != km.d:
        raise ContractViolation(f"centers must have shape (k, {km.d}), got {c.shape}")
    a = _check_points_assignment(km, assignment, c.shape[0])
    diff = km.coords - c[a]
    return float(np.dot(km.weights, np.einsum("ij,ij->i", diff, diff)))


def optimal_centers(km: KMeansInstance, assignment, k: int | None = None) -> CentroidSet:
    """Weighted centroid of every group.

    Empty groups get a NaN center and are flagged in ``CentroidSet.empty``.
    """
    k = km.k if k is None else k
    a = _check_points_assignment(km, assignment, k)
    wsum = np.bincount(a, weights=km.weights, minlength=k)
    acc = np.zeros((k, km.d))
    np.add.at(acc, a, km.coords * km.weights[:, None])
    empty = wsum == 0
    with np.errstate(invalid="ignore", divide="ignore"):
        centers = acc / wsum[:, None]
    centers[empty] = np.nan
    return CentroidSet(centers, empty)


def weighted_sse(km: KMeansInstance, assignment, k: int | None = None) -> float:
    """k-means cost of ``assignment`` at its optimal centers (empty groups cost 0)."""
    k = km.k if k is None else k
    cs = optimal_centers(km, assignment, k)
    a = np.asarray(assignment, dtype=np.int64)
    centers = np.where(cs.empty[:, None], 0.0, cs.centers)
    return kmeans_cost(km, a, centers)


def common_norm(vectors) -> int:
    vecs = np.vstack([as_counts(v) for v in vectors])
    norms = vecs.sum(axis=1)
    if norms[0] == 0:
        raise DomainError("vectors must have positive l1 norm")
    if np.any(norms != norms[0]):
        raise DomainError(f"vectors must share one l1 norm, got norms {sorted(set(norms.tolist()))}")
    return int(norms[0])


def squared_spread(vectors) -> float:
    """``sum_v |v - c|^2`` around the plain centroid ``c``."""
    x = np.asarray(vectors, dtype=np.float64)
    c = x.mean(axis=0)
    return float(np.sum((x - c) ** 2))


def gini_gap_identity(vectors) -> tuple[float, float]:
    """Both sides of the same-norm gap identity.

    ``lhs = Gini(sum X) - sum Gini(v)`` and ``rhs = (1/L) * sum |v - c|^2``.
    Raises ``DomainError`` unless all vectors share one l1 norm ``L``.
    """
    L = common_norm(vectors)
    vecs = np.vstack([as_counts(v) for v in vectors])
    lhs = weighted_gini(vecs.sum(axis=0)) - float(weighted_gini_rows(vecs).sum())
    rhs = squared_spread(vecs) / L
    return lhs, rhs


def gini_gap_printed_factor(vectors) -> tuple[float, float]:
    """Same as ``gini_gap_identity`` but with factor ``L`` instead of ``1/L``.

    Kept for comparison; it disagrees with the left side whenever ``L != 1``
    and the spread is nonzero.
    """
    L = common_norm(vectors)
    lhs, _ = gini_gap_identity(vectors)
    return lhs, L * squared_spread(vectors)


def objective_equivalence(inst: GiniInstance, assignment) -> tuple[float, float]:
    """``(partition_cost_eq2, weighted k-means cost at optimal centers)`` for one grouping."""
    a = check_assignment(inst, assignment)
    gini2 = partition_cost_eq2(inst, a)
    km = weighted_sse(normalize(inst), a, inst.k)
    return gini2, km


@dataclass
class C1Report:
    norm: int
    n_partitions: int
    argmin_eq1: set
    argmin_eq2: set
    argmin_km: set
    max_affine_residual: float
    opt_eq1: float
    opt_km: float

    @property
    def argmins_coincide(self) -> bool:
        return self.argmin_eq1 == self.argmin_eq2 == self.argmin_km

    @property
    def ok(self) -> bool:
        return self.argmins_coincide and self.max_affine_residual <= 1e-9


def all_partition_labels(n: int, k: int) -> np.ndarray:
    """Every RGS of length ``n`` with at most ``k`` blocks, one per row."""
    return np.array(list(restricted_growth_strings(n, k)), dtype=np.int64).reshape(-1, n)


def batch_group_sums(vectors: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    """(P, k, d) group sums for a (P, n) batch of assignments."""
    onehot = labels[:, :, None] == np.arange(k)[None, None, :]
    return np.einsum("pig,id->pgd", onehot.astype(np.float64), np.asarray(vectors, dtype=np.float64))


def batch_sse(vectors: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    """Unweighted squared error to group centroids for a batch of assignments."""
    x = np.asarray(vectors, dtype=np.float64)
    onehot = (labels[:, :, None] == np.arange(k)[None, None, :]).astype(np.float64)
    counts = onehot.sum(axis=1)
    sums = np.einsum("pig,id->pgd", onehot, x)
    sq = np.einsum("pig,i->pg", onehot, np.einsum("ij,ij->i", x, x))
    safe = np.where(counts > 0, counts, 1.0)
    per_group = sq - np.einsum("pgd,pgd->pg", sums, sums) / safe
    return per_group.sum(axis=1)


def _argmin_set(values: np.ndarray, labels: np.ndarray, tol: float) -> set:
    best = values.min()
    hits = np.flatnonzero(values <= best + tol * max(1.0, abs(best)))
    return {tuple(labels[i].tolist()) for i in hits}


def c1_check(inst: GiniInstance, tol: float = 1e-9) -> C1Report:
    """Exhaustively compare objective1, objective2 and k-means optima on a same-norm instance.

    Every partition into at most ``k`` groups is enumerated once (as an RGS,
    so relabelings are identified), and the affine relation
    ``Gini = (1/L) Cost_KM + sum Gini(v)`` is checked on each.
    """
    L = common_norm(inst.vectors)
    if inst.n > 12:
        raise ContractViolation(f"c1_check enumerates all partitions; n={inst.n} exceeds 12")
    labels = all_partition_labels(inst.n, inst.k)
    sums = batch_group_sums(inst.vectors, labels, inst.k)
    eq1 = weighted_gini_rows(sums).sum(axis=1)
    offset = float(weighted_gini_rows(inst.vectors).sum())
    eq2 = eq1 - offset
    km = batch_sse(inst.vectors, labels, inst.k)
    residual = np.abs(eq1 - (km / L + offset))
    return C1Report(
        norm=L,
        n_partitions=len(labels),
        argmin_eq1=_argmin_set(eq1, labels, tol),
        argmin_eq2=_argmin_set(eq2, labels, tol),
        argmin_km=_argmin_set(km, labels, tol),
        max_affine_residual=float(residual.max()),
        opt_eq1=float(eq1.min()),
        opt_km=float(km.min()),
    )


__all__ = [
    "WeightedPoint",
    "KMeansInstance",
    "CentroidSet",
    "normalize",
    "merge_identical",
    "materialize_copies",
    "kmeans_cost",
    "optimal_centers",
    "weighted_sse",
    "gini_gap_identity",
    "gini_gap_printed_factor",
    "objective_equivalence",
    "c1_check",
    "C1Report",
]
