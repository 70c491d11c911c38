import pytest

from ginipart.partitions import (
    canonical_labels,
    count_partitions,
    is_restricted_growth,
    restricted_growth_strings,
)
from oracles import all_partitions_product

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140]


@pytest.mark.parametrize("n", range(1, 9))
def test_bell_numbers(n):
    assert len(list(restricted_growth_strings(n))) == BELL[n]
    assert count_partitions(n, n) == BELL[n]


@pytest.mark.parametrize("n, k", [(1, 1), (3, 2), (5, 2), (6, 3), (7, 4)])
def test_matches_product_enumeration(n, k):
    got = list(restricted_growth_strings(n, k))
    assert got == sorted(got)
    assert got == all_partitions_product(n, k)
    assert count_partitions(n, k) == len(got)
    assert all(is_restricted_growth(a) for a in got)


def test_canonical_labels():
    assert canonical_labels([2, 2, 0, 1, 0]) == (0, 0, 1, 2, 1)
    assert not is_restricted_growth([1, 0])
    assert is_restricted_growth([0, 1, 0, 2])
