import pytest

from src.affine.conformal import delta_lowest, weyl_module_char
from src.affine.free_fields import FreeField, invariant_gram_check, ope_leading_check, ope_leading_coefficient
from src.affine.kernel import KernelSpec, check_delta_K, check_kernel_relation, kernel_char, swap_factors
from src.algebra.ids import AlgebraId
from src.checks.rules import pair_b_algebras
from src.models.tables import load_hook_tables
from src.reps.weights import Weight
from src.series.graded import GradedSeries
from src.series.level import k, level_scalar
from src.series.products import pbw_series
from src.utils.errors import IdentityError, UnsupportedAlgebraError


def w(label, *coords):
    return Weight(AlgebraId.parse(label), tuple(coords))


@pytest.mark.parametrize("weight,expected", [
    (("sl2", 0), "0"),
    (("sl2", 1), "3/(4*(k+2))"),
    (("so5", 1, 0), "2/(k+3)"),
])
def test_lowest_conformal_weight(weight, expected):
    assert delta_lowest(w(*weight), k).value == level_scalar(expected)


def test_weyl_module_bottom_is_the_finite_character():
    series = weyl_module_char(w("sl2", 1), k, 4)
    assert series.character(0) == {(1,): 1, (-1,): 1}
    assert series.shift.value == level_scalar("3/(4*(k+2))")


def test_weyl_module_graded_dimensions_against_pbw_count():
    lam = w("sl2", 1)
    series = weyl_module_char(lam, k, 6)
    loop = pbw_series((("sl2", 1),), 6, [((0,), 0), ((2,), 0), ((-2,), 0)])
    for e in (0, 2, 4, 6):
        total = sum(series.character(e).values())
        assert total == 2 * sum(loop.character(e).values())


@pytest.mark.parametrize("pa,pb,sign", [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, -1)])
def test_ope_leading_sign(pa, pb, sign):
    a1, a2 = FreeField("a1", pa), FreeField("a2", pa)
    b1, b2 = FreeField("b1", pb), FreeField("b2", pb)
    value = ope_leading_check(a1, b1, a2, b2, alpha=2, beta=3)
    assert value == level_scalar(6 * sign)


def test_ope_rejects_mixed_parity_pairs():
    fields = (FreeField("a1", 0), FreeField("b1", 1), FreeField("a2", 0), FreeField("b2", 0))
    with pytest.raises(IdentityError):
        ope_leading_coefficient(*fields)


def test_ope_two_bosons_at_pole_four():
    fields = [FreeField(name) for name in ("a1", "b1", "a2", "b2")]
    assert ope_leading_coefficient(*fields) == level_scalar(1)


def test_ope_rejects_high_poles():
    fields = [FreeField(name) for name in ("a1", "b1", "a2", "b2")]
    with pytest.raises(UnsupportedAlgebraError):
        ope_leading_coefficient(*fields, pole_a=5)


def test_ope_needs_distinct_fields():
    a, b = FreeField("a"), FreeField("b")
    with pytest.raises(IdentityError):
        ope_leading_coefficient(a, b, a, b)


@pytest.mark.parametrize("label,flip", [("sl2", 0), ("sl2", 1), ("osp12", 0)])
def test_invariant_gram(label, flip):
    assert invariant_gram_check(AlgebraId.parse(label), 2, flip)["passed"]


@pytest.mark.parametrize("algebra", pair_b_algebras([1, 2]), ids=str)
@pytest.mark.parametrize("n", [-2, -1, 1, 2])
def test_kernel_rows(algebra, n):
    spec = KernelSpec(algebra, n)
    check_delta_K(spec)
    check_kernel_relation(spec)


def test_only_the_sl_kernel_row_is_derived():
    assert [row.family for row in load_hook_tables().kernels if row.derived] == ["SL"]
    assert check_kernel_relation(KernelSpec(AlgebraId.parse("sl2"), 1))["derived"]
    assert not check_kernel_relation(KernelSpec(AlgebraId.parse("gl2"), 1))["derived"]


def test_kernel_needs_nonzero_n():
    with pytest.raises(UnsupportedAlgebraError):
        KernelSpec(AlgebraId.parse("sl2"), 0)


def test_kernel_character_needs_positive_n():
    with pytest.raises(UnsupportedAlgebraError):
        kernel_char(KernelSpec(AlgebraId.parse("gl1"), -1), 4)


def test_gl1_kernel_character():
    result = kernel_char(KernelSpec(AlgebraId.parse("gl1"), 1), 4)
    zero = GradedSeries.zero_weight(result.series.alphabet)
    assert result.series.coefficient(0) == {(zero, 0): 1}
    assert swap_factors(swap_factors(result.series)).equals(result.series)
