import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from psiclass.symmetric import (
    DegreeMismatchError,
    Partition,
    Permutation,
    canonical_permutation,
    centralizer_order,
    compose,
    conjugacy_class_size,
    cycle_type,
    is_transitive,
    orbits,
    partitions_of,
    product,
)


def perms(d):
    return st.permutations(range(1, d + 1)).map(Permutation)


@st.composite
def perm_pairs(draw):
    d = draw(st.integers(1, 9))
    return draw(perms(d)), draw(perms(d))


def test_worked_product_is_the_four_cycle():
    ts = [Permutation.parse(c, 4) for c in ("(12)", "(13)", "(24)", "(14)", "(13)")]
    s = product(ts)
    assert s == Permutation.parse("(1 2 4 3)")
    assert cycle_type(s) == Partition((4,))


def test_compose_identity_and_inverse():
    p = Permutation.parse("(1 3 2)(4 5)")
    e = Permutation.identity(5)
    assert compose(e, p) == p
    assert compose(p, p.inverse()) == e


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatchError):
        compose(Permutation.identity(3), Permutation.identity(4))


def test_cycle_type_examples():
    assert cycle_type(Permutation.identity(3)) == Partition((1, 1, 1))
    assert cycle_type(Permutation.parse("(12)", 4)) == Partition((2, 1, 1))


def test_class_sizes():
    assert conjugacy_class_size(Partition((2,))) == 1
    assert conjugacy_class_size(Partition((2, 1, 1))) == 6
    s3 = [Permutation(p) for p in itertools.permutations((1, 2, 3))]
    assert conjugacy_class_size(Partition((3,))) == sum(cycle_type(p) == Partition((3,)) for p in s3)


def test_transitivity_examples():
    t = Permutation.transposition
    assert not is_transitive([t(1, 2, 3)], 3)
    assert is_transitive([t(1, 2, 3), t(2, 3, 3)], 3)
    assert not is_transitive([t(1, 2, 4), t(3, 4, 4)], 4)
    assert orbits([t(1, 2, 4), t(3, 4, 4)], 4) == [[1, 2], [3, 4]]


def _count_partitions(d, m):
    if d == 0:
        return 1
    return sum(_count_partitions(d - k, k) for k in range(1, min(d, m) + 1))


def test_partition_counts():
    assert partitions_of(0) == [Partition(())]
    assert len(partitions_of(4)) == 5
    assert len(partitions_of(10)) == _count_partitions(10, 10) == 42
    ps = [p.parts for p in partitions_of(7)]
    assert ps == sorted(ps, reverse=True)


def test_serialization_round_trip():
    assert str(Partition.parse("4,2,1")) == "4,2,1"
    p = Permutation.parse("(1 2 4 3)")
    assert Permutation.parse(str(p), 4) == p


@given(perm_pairs())
def test_conjugation_invariance(pq):
    p, q = pq
    assert cycle_type(compose(q.inverse(), compose(p, q))) == cycle_type(p)


@given(st.integers(0, 9))
def test_class_sizes_sum_to_factorial(d):
    assert sum(conjugacy_class_size(mu) for mu in partitions_of(d)) == math.factorial(d)


@given(st.integers(1, 9).flatmap(lambda d: st.tuples(st.just(d), st.lists(perms(d), max_size=4), perms(d))))
def test_transitivity_is_monotone(args):
    d, gens, extra = args
    if is_transitive(gens, d):
        assert is_transitive(gens + [extra], d)


@given(st.lists(st.integers(1, 5), min_size=1, max_size=6))
def test_aut_times_rearrangements(parts):
    mu = Partition.from_parts(parts)
    rearrangements = len(set(itertools.permutations(mu.parts)))
    assert mu.aut_order * rearrangements == math.factorial(mu.length)


@given(st.integers(1, 8).flatmap(lambda d: st.sampled_from(partitions_of(d))))
def test_canonical_permutation_and_centralizer(mu):
    assert cycle_type(canonical_permutation(mu)) == mu
    assert centralizer_order(mu) * conjugacy_class_size(mu) == math.factorial(mu.size)
