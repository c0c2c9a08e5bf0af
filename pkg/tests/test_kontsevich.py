import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from psiclass.kontsevich import (
    ConsistencyError,
    TauTable,
    double_factorial,
    expand_and_extract,
    extract_coefficients,
    kontsevich_sum,
    string_equation_check,
    tau_generating_function,
    tau_table,
)
from psiclass.poly import Polynomial, RationalFunction
from psiclass.ribbon import UnstableError

ANCHORS = {
    (0, (0, 0, 0)): 1,
    (1, (1,)): Fraction(1, 24),
    (0, (1, 0, 0, 0)): 1,
}


def test_double_factorial():
    assert double_factorial(-1) == 1
    assert double_factorial(1) == 1
    assert double_factorial(5) == 15
    with pytest.raises(ValueError):
        double_factorial(4)


def test_small_sums_exact():
    assert kontsevich_sum(0, 3) == RationalFunction.monomial_inverse(3, 1, [1, 1, 1])
    assert kontsevich_sum(1, 1) == RationalFunction.monomial_inverse(1, Fraction(1, 24), [3])
    with pytest.raises(UnstableError):
        kontsevich_sum(0, 2)


@pytest.mark.parametrize("key,value", sorted(ANCHORS.items()))
def test_anchor_values(key, value):
    g, k = key
    assert tau_table(g, len(k)).get(g, k) == value


@pytest.mark.parametrize("g,n", [(0, 3), (1, 1), (0, 4), (1, 2), (2, 1), (0, 5), (1, 3)])
def test_tables_are_positive_and_closed_under_string_equation(g, n):
    t = tau_table(g, n)
    assert len(t) == len({tuple(sorted(k, reverse=True)) for k in TauTable.kvectors(g, n)})
    assert all(v > 0 for _, v in t.items())


def test_string_equation_across_tables():
    t = TauTable()
    for g, n in [(0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (1, 3)]:
        t.update(tau_table(g, n))
    assert string_equation_check(t) == []
    assert string_equation_check(TauTable()) == []
    t2 = TauTable()
    t2.update(tau_table(0, 3))
    t2.set(0, (1, 0, 0, 0), 2)
    assert string_equation_check(t2)


def test_sum_round_trips_through_its_table():
    for g, n in [(0, 4), (1, 2)]:
        K = kontsevich_sum(g, n)
        assert K == tau_generating_function(tau_table(g, n), g, n)


def test_extraction_rejects_wrong_shape():
    # 1/((z1 + z2) z3) is not a polynomial in the 1/z_i
    bad = RationalFunction(3, [(Polynomial.constant(3, 1), {(0, 1): 1, (2,): 1})])
    with pytest.raises(ConsistencyError):
        extract_coefficients(bad, 0, 3)


@given(st.permutations(range(4)), st.lists(st.integers(1, 50), min_size=4, max_size=4))
def test_sum_is_symmetric(perm, pt):
    K = kontsevich_sum(0, 4)
    assert K(pt) == K([pt[i] for i in perm])


@given(st.lists(st.fractions(min_value=Fraction(1, 10), max_value=10), min_size=2, max_size=2))
def test_only_odd_inverse_powers(pt):
    K = kontsevich_sum(1, 2)
    total = Fraction(0)
    t = tau_table(1, 2)
    for k in TauTable.kvectors(1, 2):
        total += t.get(1, k) * double_factorial(2 * k[0] - 1) * double_factorial(2 * k[1] - 1) / (
            pt[0] ** (2 * k[0] + 1) * pt[1] ** (2 * k[1] + 1))
    assert K(pt) == total


def test_table_set_rejects_conflicts():
    t = TauTable()
    t.set(0, (0, 0, 0), 1)
    with pytest.raises(ConsistencyError):
        t.set(0, (0, 0, 0), 2)
    with pytest.raises(ValueError):
        t.set(0, (1, 0, 0), 1)
