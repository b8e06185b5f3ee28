import pytest
from sympy import QQ

from src.algebra.linalg import exact_rank, independent_columns, inverse, nullspace, sdm_matmul, sdm_sub, solve
from src.series.level import LEVEL_FIELD, k

ONE = QQ.one
SINGULAR = {0: {0: QQ(1), 1: QQ(2)}, 1: {0: QQ(2), 1: QQ(4)}}


def test_rank_and_nullspace_over_q():
    assert exact_rank(SINGULAR, ONE) == 1
    assert nullspace(SINGULAR, 2, ONE) == [{0: QQ(-2), 1: QQ(1)}]
    assert independent_columns(SINGULAR, ONE) == [0]


def test_nullspace_of_empty_matrix_is_everything():
    assert nullspace({}, 3, ONE) == [{0: ONE}, {1: ONE}, {2: ONE}]


@pytest.mark.parametrize("matrix,expected", [
    ({0: {0: k, 1: LEVEL_FIELD.one}, 1: {0: k * k, 1: k}}, 1),
    ({0: {0: k, 1: LEVEL_FIELD.one}, 1: {0: LEVEL_FIELD.one, 1: k}}, 2),
    ({0: {0: 1 / (k + 2), 1: k}, 1: {0: 2 / (k + 2), 1: 2 * k}, 2: {2: k - 1}}, 2),
])
def test_rank_over_the_level_field(matrix, expected):
    assert exact_rank(matrix, LEVEL_FIELD.one) == expected


def test_solve_consistent_and_inconsistent():
    x = solve(SINGULAR, {0: QQ(3), 1: QQ(6)}, 2, ONE)
    assert x == {0: QQ(3)}
    assert solve(SINGULAR, {0: QQ(1), 1: QQ(1)}, 2, ONE) is None


def test_inverse():
    A = {0: {0: QQ(1), 1: QQ(2)}, 1: {0: QQ(3), 1: QQ(4)}}
    assert inverse(A, 2, ONE) == {0: {0: QQ(-2), 1: QQ(1)}, 1: {0: QQ(3, 2), 1: QQ(-1, 2)}}
    assert sdm_matmul(A, inverse(A, 2, ONE)) == {0: {0: ONE}, 1: {1: ONE}}
    with pytest.raises(ZeroDivisionError):
        inverse(SINGULAR, 2, ONE)


def test_products_mix_rationals_and_levels():
    A = {0: {0: QQ(2)}}
    B = {0: {0: k, 1: LEVEL_FIELD.one}}
    assert sdm_matmul(A, B) == {0: {0: 2 * k, 1: 2 * LEVEL_FIELD.one}}
    assert sdm_sub(B, B) == {}
