import itertools
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psiclass.elsv import (
    elsv_fit,
    elsv_prefactor,
    hodge_from_elsv,
    laplace_variable_map,
    tau_from_elsv,
)
from psiclass.hurwitz import HurwitzQuery, hurwitz_brute, hurwitz_characters
from psiclass.kontsevich import ConsistencyError, tau_table
from psiclass.symmetric import Partition


def chars(g, mu):
    return hurwitz_characters(HurwitzQuery(g, mu))


def brute(g, mu):
    return hurwitz_brute(HurwitzQuery(g, mu))


def test_prefactor():
    assert elsv_prefactor(0, (1, 1, 1)) == 4
    assert elsv_prefactor(1, (2,)) == 12
    assert elsv_prefactor(0, (1, 1, 1, 1)) == 30


def test_small_fits():
    p03 = elsv_fit(0, 3, chars)
    assert p03.coefficients == {(0, 0, 0): 1}
    p04 = elsv_fit(0, 4, chars)
    assert p04.coefficients == {k: 1 for k in [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]}
    p11 = elsv_fit(1, 1, brute)
    assert p11.coefficients == {(1,): Fraction(1, 24), (0,): Fraction(-1, 24)}


@pytest.mark.parametrize("g,n", [(0, 3), (1, 1), (0, 4), (1, 2), (2, 1), (0, 5)])
def test_tau_from_fit_equals_graph_sum(g, n):
    assert tau_from_elsv(elsv_fit(g, n, chars)) == tau_table(g, n)


def test_hodge_values():
    assert hodge_from_elsv(elsv_fit(1, 1, brute)).get(1, 1, (0,)) == Fraction(1, 24)
    assert len(hodge_from_elsv(elsv_fit(0, 4, chars))) == 0
    h12 = hodge_from_elsv(elsv_fit(1, 2, chars))
    # lambda_1 is pulled back from M_{1,1}, so a tau_0 insertion leaves the value unchanged
    assert h12.get(1, 1, (1, 0)) == Fraction(1, 24)
    assert h12.get(1, 1, (0, 1)) == Fraction(1, 24)


def test_fit_reproduces_fresh_points():
    p = elsv_fit(1, 2, chars)
    for mu in [(5, 3), (6, 1), (4, 4), (2, 2)]:
        part = Partition.from_parts(mu)
        assert p(mu) == chars(1, part) / elsv_prefactor(1, part)


def test_fit_does_not_depend_on_grid():
    assert elsv_fit(0, 4, chars).coefficients == elsv_fit(0, 4, chars, start=3).coefficients
    assert elsv_fit(1, 2, chars).coefficients == elsv_fit(1, 2, chars, start=4).coefficients


def test_forbidden_degrees_vanish():
    for g, n in [(1, 1), (1, 2), (2, 1)]:
        p = elsv_fit(g, n, chars)
        allowed = {3 * g - 3 + n - j for j in range(g + 1)}
        assert all(sum(k) in allowed for k in p.coefficients)


def test_corrupted_source_is_caught():
    def corrupt(g, mu):
        v = chars(g, mu)
        return v + 1 if mu.parts == (2, 2) else v

    with pytest.raises(ConsistencyError):
        elsv_fit(1, 2, corrupt)


def test_unstable_fit_rejected():
    with pytest.raises(ValueError):
        elsv_fit(0, 2)


def test_laplace_map():
    assert laplace_variable_map([Fraction(1, 2)]) == [1]
    assert laplace_variable_map([2, 2]) == [2, 2]
    with mpmath.workdps(50):
        assert abs(laplace_variable_map([1])[0] - mpmath.sqrt(2)) < mpmath.mpf(10) ** -45
    with pytest.raises(ValueError):
        laplace_variable_map([0])


@settings(max_examples=25)
@given(st.lists(st.integers(1, 7), min_size=3, max_size=3))
def test_genus_zero_three_point_fit_is_one(mu):
    part = Partition.from_parts(mu)
    assert chars(0, part) == elsv_prefactor(0, part)
