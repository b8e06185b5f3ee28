import pytest
from sympy import QQ

from src.algebra.ids import AlgebraId
from src.series.graded import GradedSeries
from src.series.invariants import invariant_part
from src.series.level import ExponentShift, format_level, k, level_scalar, rational_part, substitute_level
from src.series.products import eta_like_product, heisenberg_series, loop_minus_series
from src.utils.errors import HookdualError, LevelDependenceError, TruncationError
from src.utils.exact import format_level_scalar, format_rational, parse_half, parse_rational

SL2 = (("sl2", 1),)
GL1 = (("gl1", 1),)
PARTITIONS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_rational_codec():
    assert format_rational(QQ(-3, 4)) == "-3/4"
    assert format_rational(QQ(6, 3)) == "2"
    assert parse_rational(" 5/10 ") == QQ(1, 2)
    with pytest.raises(HookdualError):
        parse_rational("1/0")
    assert parse_half("5/2") == 5
    with pytest.raises(HookdualError):
        parse_half("1/3")


def test_level_codec_is_monic_in_the_denominator():
    assert format_level_scalar(level_scalar("1/(2*k+4)")) == {"num": ["1/2"], "den": ["2", "1"]}


def test_level_arithmetic():
    value = level_scalar("1/(k+2)")
    assert value * (k + 2) == 1
    assert substitute_level(value, k - 2) == 1 / k
    assert rational_part(level_scalar("k + 3/2 + 1/k")) == QQ(3, 2)
    with pytest.raises(HookdualError):
        level_scalar("k + n")


def test_exponent_shift():
    shift = ExponentShift(level_scalar("3/2 + 3/(4*(k+2))"))
    assert shift.rational_part == QQ(3, 2)
    assert not shift.is_level_free()
    with pytest.raises(LevelDependenceError):
        shift.doubled()
    assert ExponentShift(QQ(5, 2)).doubled() == 5
    assert ExponentShift(QQ(1)) < ExponentShift(QQ(3, 2))
    with pytest.raises(LevelDependenceError):
        ExponentShift(k) < ExponentShift(QQ(1))


def test_product_with_one_is_identity():
    series = GradedSeries.monomial(SL2, 6, 2, (1,)) + GradedSeries.monomial(SL2, 6, 4, (-1,), parity=1)
    assert (series * GradedSeries.one(SL2, 6)).equals(series)


def test_difference_of_squares():
    q_chi = GradedSeries.monomial(SL2, 6, 2, (1,)) + GradedSeries.monomial(SL2, 6, 2, (-1,))
    one = GradedSeries.one(SL2, 6)
    product = (one + q_chi) * (one - q_chi)
    assert product.equals(one - q_chi * q_chi)
    assert product.coefficient(4) == {((2,), 0): -1, ((0,), 0): -2, ((-2,), 0): -1}


def test_truncation_is_enforced():
    series = GradedSeries.one(SL2, 4)
    with pytest.raises(TruncationError):
        series.coefficient(5)


def test_heisenberg_series_counts_partitions():
    series = heisenberg_series(GL1, 12)
    for n, p in enumerate(PARTITIONS[:7]):
        assert series.coefficient(2 * n) == {((0,), 0): p}


def test_two_boson_character_against_enumeration():
    series = heisenberg_series(GL1, 20, copies=2)
    # Number of pairs of partitions with total size n.
    expected = [sum(PARTITIONS[a] * PARTITIONS[n - a] for a in range(n + 1)) for n in range(11)]
    for n, count in enumerate(expected):
        assert series.character(2 * n) == {(0,): count}


def test_gl1_product_has_no_root_factors():
    product = eta_like_product(AlgebraId.parse("gl1"), 6)
    # (1 - q)(1 - q^2)(1 - q^3) = 1 - q - q^2 + q^4 + q^5 - q^6 up to q^3.
    assert product.character(0) == {(0,): 1}
    assert product.character(2) == {(0,): -1}
    assert product.character(4) == {(0,): -1}
    assert product.character(6) == {}


def test_sl2_product_first_order():
    product = eta_like_product(AlgebraId.parse("sl2"), 6)
    assert product.character(2) == {(2,): -1, (0,): -1, (-2,): -1}


def test_loop_minus_series_inverts_the_product():
    algebra = AlgebraId.parse("osp12")
    order = 6
    product = eta_like_product(algebra, order) * loop_minus_series(algebra, order)
    assert product.equals(GradedSeries.one(((algebra.label, 1),), order))


def test_invariant_part():
    chi = GradedSeries.monomial(SL2, 4, 0, (1,)) + GradedSeries.monomial(SL2, 4, 0, (-1,))
    assert invariant_part(chi).is_zero()
    square = invariant_part(chi * chi)
    assert square.alphabet == ()
    assert square.coefficient(0) == {((), 0): 1}
    three = GradedSeries.monomial(SL2, 4, 2, (0,), coeff=3)
    assert invariant_part(three).coefficient(2) == {((), 0): 3}


def test_format_level():
    assert format_level(level_scalar("1/(k+2)")) == "1/(k + 2)"
