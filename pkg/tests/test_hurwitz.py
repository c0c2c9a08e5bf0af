import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psiclass.hurwitz import (
    Factorization,
    HurwitzQuery,
    InfeasibleQueryError,
    ResourceBudgetError,
    asymptotic_ratio,
    hurwitz,
    hurwitz_brute,
    hurwitz_characters,
    iter_factorizations,
    riemann_hurwitz_r,
)
from psiclass.symmetric import (
    Partition,
    canonical_permutation,
    conjugacy_class_size,
    is_transitive,
    product,
    transpositions,
)
from psiclass.verify import hurwitz_grid


def naive_hurwitz(g, mu):
    """Every r-tuple of transpositions, no pruning."""
    mu = Partition.from_parts(mu)
    d, r = mu.size, riemann_hurwitz_r(g, mu)
    s = canonical_permutation(mu)
    ts = transpositions(d)
    count = sum(1 for tup in itertools.product(ts, repeat=r)
                if product(list(tup), d) == s and is_transitive(tup, d))
    return Fraction(count * conjugacy_class_size(mu), math.factorial(d))


def test_riemann_hurwitz():
    assert riemann_hurwitz_r(0, Partition((3,))) == 2
    assert riemann_hurwitz_r(1, Partition((4,))) == 5
    assert riemann_hurwitz_r(0, Partition((1, 1, 1))) == 4
    with pytest.raises(InfeasibleQueryError):
        HurwitzQuery(0, Partition(()))
    with pytest.raises(InfeasibleQueryError):
        riemann_hurwitz_r(-1, Partition((2,)))


@pytest.mark.parametrize("g,mu,want", [
    (0, (2,), Fraction(1, 2)),
    (0, (3,), 1),
    (0, (1, 1, 1), 4),
    (1, (2,), Fraction(1, 2)),
    (1, (1,), 0),
    (0, (1,), 1),
])
def test_anchor_values(g, mu, want):
    q = HurwitzQuery(g, Partition.from_parts(mu))
    assert hurwitz_brute(q) == want
    assert hurwitz_characters(q) == want


@pytest.mark.parametrize("g,mu", [(0, (2, 1)), (0, (2, 2)), (1, (3,)), (0, (1, 1, 1)), (0, (3, 1)), (1, (2, 1))])
def test_brute_against_naive_enumeration(g, mu):
    assert hurwitz_brute(HurwitzQuery(g, Partition.from_parts(mu))) == naive_hurwitz(g, mu)


def test_full_grid_brute_equals_characters():
    for g, mu in hurwitz_grid(6, 8):
        q = HurwitzQuery(g, mu)
        assert hurwitz_brute(q) == hurwitz_characters(q), (g, mu)


@given(st.integers(1, 7).flatmap(lambda d: st.sampled_from([mu for _, mu in hurwitz_grid(7, 10) if mu.size == d])),
       st.integers(0, 2))
def test_nonnegative_with_bounded_denominator(mu, g):
    v = hurwitz_characters(HurwitzQuery(g, mu))
    assert v >= 0
    assert math.factorial(mu.size) % v.denominator == 0


def test_jobs_do_not_change_result():
    q = HurwitzQuery(1, Partition((3, 2)))
    assert hurwitz_brute(q, jobs=1) == hurwitz_brute(q, jobs=2)


def test_budget_error():
    with pytest.raises(ResourceBudgetError):
        hurwitz_brute(HurwitzQuery(2, Partition((5, 1))), budget=10)


def test_auto_method_switches():
    assert hurwitz(0, (3, 2, 1)) == hurwitz(0, (3, 2, 1), "characters")
    with pytest.raises(ValueError):
        hurwitz(0, (2,), "nope")


def test_iter_factorizations_matches_count():
    for g, mu in [(0, (3,)), (1, (2,)), (0, (2, 2)), (1, (4,))]:
        mu = Partition.from_parts(mu)
        fs = list(iter_factorizations(g, mu))
        assert all(f.is_transitive() and f.genus == g for f in fs)
        want = hurwitz_brute(HurwitzQuery(g, mu)) * math.factorial(mu.size) / conjugacy_class_size(mu)
        assert len(fs) == want


def test_factorization_validates_product():
    t = transpositions(3)
    with pytest.raises(ValueError):
        Factorization((t[0],), canonical_permutation(Partition((3,))))


def test_asymptotic_ratio_trend():
    for x in [(1,), (1, 2)]:
        ratios = [asymptotic_ratio(0, x, N).ratio for N in (5, 10, 15, 20)]
        assert all(a < b for a, b in zip(ratios, ratios[1:]))
        assert abs(ratios[-1] - 1) < 0.25


def test_asymptotic_ratio_rejects_repeated_parts():
    with pytest.raises(ValueError):
        asymptotic_ratio(0, (1, 1), 5)
