"""Set-partition enumeration via restricted-growth strings.

A restricted-growth string (RGS) ``a`` of length ``n`` satisfies ``a[0] = 0``
and ``a[i] <= 1 + max(a[:i])``; each set partition of ``{0..n-1}`` has exactly
one such encoding, so enumerating RGSs visits every partition once.
"""

from __future__ import annotations

from typing import Callable, Iterator

import numpy as np


def restricted_growth_strings(n: int, max_blocks: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield every RGS of length ``n`` using at most ``max_blocks`` blocks, in lexicographic order."""
    if n <= 0:
        return
    if max_blocks is None:
        max_blocks = n
    if max_blocks < 1:
        return
    a = [0] * n
    # m[i] = max(a[:i+1])
    m = [0] * n

    def rec(i: int):
        if i == n:
            yield tuple(a)
            return
        top = min(m[i - 1] + 1, max_blocks - 1)
        for label in range(top + 1):
            a[i] = label
            m[i] = max(m[i - 1], label)
            yield from rec(i + 1)

    yield from rec(1)


def count_partitions(n: int, max_blocks: int) -> int:
    """Number of partitions of an n-set into at most ``max_blocks`` nonempty blocks."""
    # Stirling numbers of the second kind, row by row
    row = [1] + [0] * max_blocks
    for _ in range(n):
        new = [0] * (max_blocks + 1)
        for j in range(1, max_blocks + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return sum(row[1:])


def is_restricted_growth(a) -> bool:
    top = -1
    for x in a:
        if x < 0 or x > top + 1:
            return False
        top = max(top, x)
    return True


def canonical_labels(assignment) -> tuple[int, ...]:
    """Relabel groups by first appearance, giving the RGS of the partition."""
    mapping: dict[int, int] = {}
    out = []
    for g in np.asarray(assignment).tolist():
        if g not in mapping:
            mapping[g] = len(mapping)
        out.append(mapping[g])
    return tuple(out)


def branch_and_bound_min(
    items: np.ndarray,
    max_blocks: int,
    block_cost: Callable[[np.ndarray, np.ndarray], float],
    stat: Callable[[np.ndarray], np.ndarray],
    rtol: float = 1e-12,
) -> tuple[tuple[int, ...], float, int]:
    """Exact minimum of a sum of per-block costs over partitions into <= ``max_blocks`` blocks.

    ``stat(row)`` maps an item to an additive sufficient statistic and
    ``block_cost(stat_sum, count)`` scores a block from the summed statistic.
    The block cost must be monotone under adding items (true for weighted Gini
    and for squared error to the centroid), which makes the cost of a partial
    assignment a lower bound on every completion.

    Returns ``(rgs, cost, nodes_visited)``.  Ties go to the lexicographically
    smallest RGS because the search runs in lexicographic order and only
    replaces the incumbent on strict improvement.
    """
    n = len(items)
    stats = np.array([stat(row) for row in items], dtype=np.float64)
    sums = np.zeros((max_blocks, stats.shape[1]), dtype=np.float64)
    counts = np.zeros(max_blocks, dtype=np.int64)
    costs = np.zeros(max_blocks, dtype=np.float64)
    a = [0] * n
    best_rgs: list[tuple[int, ...] | None] = [None]
    best = [np.inf]
    nodes = [0]

    def rec(i: int, used: int, partial: float):
        nodes[0] += 1
        if best[0] < np.inf and partial >= best[0] - rtol * max(1.0, abs(best[0])):
            return
        if i == n:
            best[0] = partial
            best_rgs[0] = tuple(a)
            return
        for label in range(min(used + 1, max_blocks)):
            old = costs[label]
            sums[label] += stats[i]
            counts[label] += 1
            new = block_cost(sums[label], counts[label])
            costs[label] = new
            a[i] = label
            rec(i + 1, max(used, label + 1), partial - old + new)
            sums[label] -= stats[i]
            counts[label] -= 1
            costs[label] = old

    rec(0, 0, 0.0)
    return best_rgs[0], float(best[0]), nodes[0]
