"""Impurity measures for class-count vectors and the two partition objectives.

A count vector ``u`` holds, per class, the number of examples that fall in a
node.  The weighted Gini of ``u`` is ``|u|_1 * gini_impurity(u)``; a partition
of a collection of count vectors is scored either by the sum of the weighted
Ginis of its group sums (``partition_cost_eq1``) or by that sum minus the
weighted Ginis of the individual vectors (``partition_cost_eq2``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class DomainError(ValueError):
    """Input violates a mathematical precondition (zero vector, mixed norms...)."""


class ContractViolation(ValueError):
    """Caller passed arguments that break an operation's contract."""


def as_counts(u) -> np.ndarray:
    """Coerce ``u`` to a 1-d int64 array of non-negative counts."""
    arr = np.asarray(u)
    if arr.ndim != 1 or arr.size == 0:
        raise ContractViolation(f"count vector must be 1-d and non-empty, got shape {arr.shape}")
    if arr.dtype.kind == "f":
        if not np.all(arr == np.round(arr)):
            raise DomainError("count vector must hold integers")
    elif arr.dtype.kind not in "iub":
        raise ContractViolation(f"count vector must be numeric, got dtype {arr.dtype}")
    arr = arr.astype(np.int64)
    if np.any(arr < 0):
        raise DomainError("count vector components must be non-negative")
    return arr


def gini_impurity(u) -> float:
    """Gini impurity ``sum_i p_i (1 - p_i)`` of the class proportions of ``u``."""
    u = as_counts(u)
    total = int(u.sum())
    if total == 0:
        raise DomainError("impurity of the zero vector is undefined")
    p = u / total
    return float(np.sum(p * (1.0 - p)))


def entropy_impurity(u, base2: bool = False) -> float:
    """Shannon entropy of the class proportions of ``u``.

    Natural log by default; ``base2=True`` reports bits.  Empty classes
    contribute nothing (``0 log 0 = 0``).
    """
    u = as_counts(u)
    total = int(u.sum())
    if total == 0:
        raise DomainError("impurity of the zero vector is undefined")
    p = u[u > 0] / total
    h = float(-np.sum(p * np.log(p)))
    if base2:
        h /= np.log(2.0)
    # -0.0 for pure vectors
    return h + 0.0


def _weighted_gini_raw(u: np.ndarray) -> float:
    # |u| * sum p(1-p) == |u| - sum u_i^2 / |u|
    total = float(u.sum())
    if total == 0.0:
        return 0.0
    return total - float(np.dot(u, u)) / total


def weighted_gini(v) -> float:
    """``|v|_1 * gini_impurity(v)``; the zero vector scores 0."""
    return _weighted_gini_raw(as_counts(v).astype(np.float64))


def weighted_gini_rows(matrix: np.ndarray) -> np.ndarray:
    """Row-wise weighted Gini of a 2-d array of counts (zero rows give 0)."""
    m = np.asarray(matrix, dtype=np.float64)
    totals = m.sum(axis=-1)
    sq = np.einsum("...i,...i->...", m, m)
    safe = np.where(totals > 0, totals, 1.0)
    return np.where(totals > 0, totals - sq / safe, 0.0)


@dataclass(frozen=True)
class GiniInstance:
    """``n`` count vectors over ``d`` classes plus the group count ``k``."""

    vectors: np.ndarray
    k: int

    def __post_init__(self):
        vecs = np.asarray(self.vectors)
        if vecs.ndim != 2 or vecs.shape[0] == 0 or vecs.shape[1] == 0:
            raise ContractViolation(f"vectors must form a non-empty n x d matrix, got shape {vecs.shape}")
        vecs = np.vstack([as_counts(row) for row in vecs])
        if np.any(vecs.sum(axis=1) == 0):
            bad = int(np.flatnonzero(vecs.sum(axis=1) == 0)[0])
            raise DomainError(f"vector {bad} is all-zero")
        if not 1 <= int(self.k) <= vecs.shape[0]:
            raise ContractViolation(f"k must satisfy 1 <= k <= n={vecs.shape[0]}, got {self.k}")
        vecs.setflags(write=False)
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "k", int(self.k))

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def d(self) -> int:
        return self.vectors.shape[1]

    def with_k(self, k: int) -> "GiniInstance":
        return GiniInstance(self.vectors, k)

    def __eq__(self, other):
        if not isinstance(other, GiniInstance):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.vectors, other.vectors)

    __hash__ = None


def check_assignment(inst: GiniInstance, assignment) -> np.ndarray:
    a = np.asarray(assignment)
    if a.shape != (inst.n,):
        raise ContractViolation(f"assignment must have length n={inst.n}, got shape {a.shape}")
    if a.dtype.kind not in "iu":
        if not np.all(a == np.round(a)):
            raise ContractViolation("assignment labels must be integers")
    a = a.astype(np.int64)
    if np.any(a < 0) or np.any(a >= inst.k):
        raise ContractViolation(f"assignment labels must lie in [0, {inst.k})")
    return a


def group_sums(inst: GiniInstance, assignment) -> np.ndarray:
    """k x d matrix of componentwise group sums (empty groups are zero rows)."""
    a = check_assignment(inst, assignment)
    sums = np.zeros((inst.k, inst.d), dtype=np.int64)
    np.add.at(sums, a, inst.vectors)
    return sums


def singleton_cost(inst: GiniInstance) -> float:
    """``sum_v weighted_gini(v)``, the objective2 offset."""
    return float(weighted_gini_rows(inst.vectors).sum())


def partition_cost_eq1(inst: GiniInstance, assignment) -> float:
    """Sum of the weighted Ginis of the group sums."""
    return float(weighted_gini_rows(group_sums(inst, assignment)).sum())


def partition_cost_eq2(inst: GiniInstance, assignment) -> float:
    """``partition_cost_eq1`` minus the per-vector weighted Ginis.

    Computed group by group so the per-group gaps (each non-negative by
    concavity) are not swamped by the two large totals.
    """
    a = check_assignment(inst, assignment)
    per_vec = weighted_gini_rows(inst.vectors)
    sums = np.zeros((inst.k, inst.d), dtype=np.int64)
    np.add.at(sums, a, inst.vectors)
    gaps = weighted_gini_rows(sums) - np.bincount(a, weights=per_vec, minlength=inst.k)
    return float(gaps.sum())


@dataclass
class Partition:
    """An assignment of the instance vectors to groups with cached objectives."""

    assignment: np.ndarray
    group_sums: np.ndarray
    objective1: float
    objective2: float
    k: int = field(default=0)

    @classmethod
    def from_assignment(cls, inst: GiniInstance, assignment) -> "Partition":
        a = check_assignment(inst, assignment)
        return cls(
            assignment=a,
            group_sums=group_sums(inst, a),
            objective1=partition_cost_eq1(inst, a),
            objective2=partition_cost_eq2(inst, a),
            k=inst.k,
        )

    def groups(self) -> list[list[int]]:
        return [np.flatnonzero(self.assignment == g).tolist() for g in range(self.k)]
