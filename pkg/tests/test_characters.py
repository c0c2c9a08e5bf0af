import math

from hypothesis import given
from hypothesis import strategies as st

from psiclass.characters import character, character_column, content_sum, dimension
from psiclass.symmetric import centralizer_order, partitions_of

shapes = st.integers(1, 9).flatmap(lambda d: st.tuples(st.sampled_from(partitions_of(d)),
                                                       st.sampled_from(partitions_of(d))))


def test_small_table():
    # S3: trivial, standard, sign on classes (1,1,1), (2,1), (3)
    assert [character((3,), r) for r in [(1, 1, 1), (2, 1), (3,)]] == [1, 1, 1]
    assert [character((2, 1), r) for r in [(1, 1, 1), (2, 1), (3,)]] == [2, 0, -1]
    assert [character((1, 1, 1), r) for r in [(1, 1, 1), (2, 1), (3,)]] == [1, -1, 1]


@given(shapes)
def test_column_agrees_with_removal(lr):
    lam, rho = lr
    assert character_column(rho.parts).get(lam.parts, 0) == character(lam.parts, rho.parts)


@given(st.integers(1, 9))
def test_dimensions(d):
    assert sum(dimension(l.parts) ** 2 for l in partitions_of(d)) == math.factorial(d)
    for lam in partitions_of(d):
        assert dimension(lam.parts) == character(lam.parts, (1,) * d)


@given(st.integers(1, 8).flatmap(lambda d: st.sampled_from(partitions_of(d))))
def test_column_orthogonality(rho):
    assert sum(v * v for v in character_column(rho.parts).values()) == centralizer_order(rho)


@given(st.integers(2, 9).flatmap(lambda d: st.sampled_from(partitions_of(d))))
def test_content_sum_is_central_character(lam):
    d = lam.size
    rho = (2,) + (1,) * (d - 2)
    assert content_sum(lam.parts) * dimension(lam.parts) == math.comb(d, 2) * character(lam.parts, rho)
