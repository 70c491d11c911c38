import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ginipart.impurity import (
    ContractViolation,
    DomainError,
    GiniInstance,
    Partition,
    entropy_impurity,
    gini_impurity,
    partition_cost_eq1,
    partition_cost_eq2,
    weighted_gini,
)
from oracles import eq1_frac, eq2_frac, gini_frac, weighted_gini_frac

V3 = [[4, 0], [0, 4], [3, 1]]

count_vectors = st.lists(st.integers(0, 50), min_size=1, max_size=6).filter(lambda u: sum(u) > 0)


@pytest.mark.parametrize("u, expected", [((5, 0), 0.0), ((1, 1), 0.5), ((3, 1), 0.375)])
def test_gini_examples(u, expected):
    assert gini_impurity(u) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("u, expected", [((7, 0), 0.0), ((1, 1), math.log(2)), ((3, 1), 0.5623351446188083)])
def test_entropy_examples(u, expected):
    assert entropy_impurity(u) == pytest.approx(expected, abs=1e-15)


def test_entropy_base2():
    assert entropy_impurity((1, 1), base2=True) == pytest.approx(1.0)
    assert entropy_impurity((1, 1, 1, 1), base2=True) == pytest.approx(2.0)


@pytest.mark.parametrize("u, expected", [((2, 0), 0.0), ((1, 1), 1.0), ((3, 1), 1.5)])
def test_weighted_gini_examples(u, expected):
    assert weighted_gini(u) == pytest.approx(expected, abs=1e-15)


def test_zero_vector():
    with pytest.raises(DomainError):
        gini_impurity((0, 0))
    with pytest.raises(DomainError):
        entropy_impurity((0, 0, 0))
    assert weighted_gini((0, 0)) == 0.0


def test_negative_counts_rejected():
    with pytest.raises(DomainError):
        gini_impurity((-1, 2))


def test_eq1_examples():
    inst = GiniInstance(V3, 2)
    assert partition_cost_eq1(inst, [0, 1, 0]) == pytest.approx(1.75, abs=1e-12)
    assert partition_cost_eq1(inst, [0, 0, 1]) == pytest.approx(5.5, abs=1e-12)


def test_eq2_examples():
    inst = GiniInstance(V3, 2)
    assert partition_cost_eq2(inst, [0, 1, 0]) == pytest.approx(0.25, abs=1e-12)
    assert partition_cost_eq2(GiniInstance([[1, 1], [1, 1]], 1), [0, 0]) == pytest.approx(0.0, abs=1e-12)


def test_singletons():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(1, 8))
        v = rng.integers(1, 20, size=(n, 3))
        inst = GiniInstance(v, n)
        a = np.arange(n)
        assert partition_cost_eq2(inst, a) == 0.0
        assert partition_cost_eq1(inst, a) == pytest.approx(sum(weighted_gini(x) for x in v))


def test_label_out_of_range():
    inst = GiniInstance(V3, 2)
    with pytest.raises(ContractViolation):
        partition_cost_eq1(inst, [0, 2, 0])
    with pytest.raises(ContractViolation):
        partition_cost_eq2(inst, [0, 1])


def test_instance_invariants():
    with pytest.raises(DomainError):
        GiniInstance([[1, 0], [0, 0]], 1)
    with pytest.raises(ContractViolation):
        GiniInstance([[1, 0]], 2)
    with pytest.raises(ContractViolation):
        GiniInstance([[1, 0]], 0)


def test_partition_record():
    inst = GiniInstance(V3, 3)
    p = Partition.from_assignment(inst, [0, 2, 0])
    assert p.group_sums.tolist() == [[7, 1], [0, 0], [0, 4]]
    assert p.objective1 == pytest.approx(1.75)
    assert p.objective2 == pytest.approx(0.25)
    assert p.groups() == [[0, 2], [], [1]]


@given(count_vectors)
def test_gini_matches_exact(u):
    assert gini_impurity(u) == pytest.approx(float(gini_frac(u)), abs=1e-12)
    assert weighted_gini(u) == pytest.approx(float(weighted_gini_frac(u)), rel=1e-12, abs=1e-12)


@given(count_vectors, st.integers(1, 1000))
def test_scale_invariance(u, m):
    assert abs(gini_impurity([m * x for x in u]) - gini_impurity(u)) <= 1e-12
    assert weighted_gini([m * x for x in u]) == pytest.approx(m * weighted_gini(u), rel=1e-12, abs=1e-9)


@given(count_vectors)
def test_range(u):
    d = len(u)
    g = gini_impurity(u)
    assert -1e-15 <= g <= 1 - 1 / d + 1e-12


@pytest.mark.parametrize("d", [1, 2, 3, 6])
def test_range_attained(d):
    assert gini_impurity([0] * (d - 1) + [9]) == 0.0
    assert gini_impurity([4] * d) == pytest.approx(1 - 1 / d)


@given(count_vectors.flatmap(lambda a: st.tuples(st.just(a), st.lists(st.integers(0, 50), min_size=len(a), max_size=len(a)))))
def test_superadditivity(pair):
    a, b = pair
    s = [x + y for x, y in zip(a, b)]
    assert weighted_gini(s) >= weighted_gini(a) + weighted_gini(b) - 1e-9


@settings(max_examples=200)
@given(st.data())
def test_eq_costs_match_exact(data):
    n = data.draw(st.integers(1, 6))
    d = data.draw(st.integers(1, 4))
    vecs = [data.draw(st.lists(st.integers(0, 20), min_size=d, max_size=d).filter(lambda v: sum(v) > 0)) for _ in range(n)]
    k = data.draw(st.integers(1, n))
    labels = data.draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
    inst = GiniInstance(vecs, k)
    assert partition_cost_eq1(inst, labels) == pytest.approx(float(eq1_frac(vecs, labels, k)), rel=1e-12, abs=1e-10)
    assert partition_cost_eq2(inst, labels) == pytest.approx(float(eq2_frac(vecs, labels, k)), rel=1e-9, abs=1e-10)


def test_eq2_nonnegative_random():
    rng = np.random.default_rng(20240611)
    worst = 0.0
    for _ in range(10_000):
        n = int(rng.integers(1, 9))
        d = int(rng.integers(1, 6))
        v = rng.integers(0, 21, size=(n, d))
        v[v.sum(axis=1) == 0, 0] = 1
        k = int(rng.integers(1, n + 1))
        worst = min(worst, partition_cost_eq2(GiniInstance(v, k), rng.integers(0, k, size=n)))
    assert worst >= -1e-9
