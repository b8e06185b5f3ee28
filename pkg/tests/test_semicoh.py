import random

import pytest

from src.algebra.ids import AlgebraId
from src.algebra.random_algebras import abelian_basis, random_superalgebra
from src.algebra.structure import build_algebra
from src.reps.weights import Weight
from src.semicoh import (CHAIN, COCHAIN, F, G, LieData, WeylForm, build_ce, build_witness, cohomology_of_loop_plus,
                         complement_level, ep_check, euler_poincare_char, filtration_split_check,
                         free_module_homology, free_tensor_homology, homology_of_loop_minus, homology_of_tensor,
                         pairing_check, relative_semicoh, small_algebra, trivial_module, wedge_supercharacter_check,
                         weyl_form_check)
from src.semicoh.affine_modules import WeylModule
from src.series.level import k
from src.utils.errors import ComplexError, TruncationError, UnsupportedAlgebraError


def w(label, *coords):
    return Weight(AlgebraId.parse(label), tuple(coords))


def basis_of(label):
    return build_algebra(AlgebraId.parse(label))[0]


def test_sl2_cohomology_with_trivial_coefficients():
    complex_ = build_ce(LieData.from_basis(basis_of("sl2")), trivial_module(), COCHAIN, 3)
    assert complex_.total_cohomology() == {0: 1, 1: 0, 2: 0, 3: 1}


def test_abelian_cohomology_is_the_exterior_algebra():
    complex_ = build_ce(LieData.from_basis(abelian_basis(2)), trivial_module(), COCHAIN, 2)
    assert complex_.total_cohomology() == {0: 1, 1: 2, 2: 1}


@pytest.mark.parametrize("seed", range(5))
def test_random_superalgebras_square_to_zero(seed):
    basis = random_superalgebra(random.Random(seed))
    lie = LieData.from_basis(basis)
    for direction in (COCHAIN, CHAIN):
        build_ce(lie, trivial_module(), direction, 2)


def test_unknown_direction():
    with pytest.raises(ComplexError):
        build_ce(LieData.from_basis(basis_of("sl2")), trivial_module(), "sideways", 1)


@pytest.mark.parametrize("label", ["sl2", "osp12"])
def test_free_module_has_homology_in_degree_zero(label):
    homology = free_module_homology(basis_of(label), 2)
    assert homology[0] == 1
    assert not any(d for n, d in homology.items() if n > 0)


def test_small_algebra_limits():
    with pytest.raises(UnsupportedAlgebraError):
        small_algebra(AlgebraId.parse("sl3"))
    with pytest.raises(UnsupportedAlgebraError):
        small_algebra(AlgebraId.parse("gl2"))


def test_complement_level_of_sl2():
    assert complement_level(basis_of("sl2"), k) == -k - 4


def test_loop_minus_homology_is_the_top():
    assert homology_of_loop_minus(AlgebraId.parse("sl2"), w("sl2", 0), depth=3) == {0: {0: 1}}
    assert homology_of_loop_minus(AlgebraId.parse("sl2"), w("sl2", 1), depth=2) == {0: {0: 2}}
    assert homology_of_loop_minus(AlgebraId.parse("gl1"), w("gl1", 2), depth=3) == {0: {0: 1}}


def test_loop_plus_cohomology_is_the_top():
    assert cohomology_of_loop_plus(AlgebraId.parse("sl2"), w("sl2", 1), depth=2) == {0: {0: 2}}


@pytest.mark.parametrize("label,lam,mu,expected", [
    ("sl2", (1,), (1,), {0: {0: 4}, 1: {0: 12}, 2: {0: 36}}),
    ("gl1", (0,), (0,), {0: {0: 1}, 1: {0: 1}, 2: {0: 2}}),
])
def test_tensor_module_is_free(label, lam, mu, expected):
    algebra = AlgebraId.parse(label)
    homology = homology_of_tensor(algebra, w(label, *lam), w(label, *mu), depth=2)
    assert homology == expected
    assert all(set(dims) == {0} for dims in homology.values())
    assert free_tensor_homology(algebra, w(label, *lam), w(label, *mu), depth=2) == expected


def test_loop_depth_is_bounded():
    with pytest.raises(TruncationError):
        homology_of_loop_minus(AlgebraId.parse("sl2"), w("sl2", 0), depth=6)


@pytest.mark.parametrize("lam,mu", [((1,), (-1,)), ((2,), (-2,)), ((0,), (0,))])
def test_gl1_dual_fock_pair(lam, mu):
    report = relative_semicoh(AlgebraId.parse("gl1"), w("gl1", *lam), w("gl1", *mu), max_weight=2)
    assert report.passed
    assert report.total(0) == 1
    assert report.witness is not None


def test_gl1_mismatched_fock_pair_has_no_cohomology():
    report = relative_semicoh(AlgebraId.parse("gl1"), w("gl1", 1), w("gl1", 1), max_weight=2)
    assert report.passed
    assert report.total(0) == 0


def test_sl2_self_dual_pair():
    report = relative_semicoh(AlgebraId.parse("sl2"), w("sl2", 1), w("sl2", 1), max_weight=1)
    assert report.formal
    assert report.total(0) == 1
    assert report.witness["class"] == "str_[1]"


def test_sl2_non_dual_pair():
    report = relative_semicoh(AlgebraId.parse("sl2"), w("sl2", 1), w("sl2", 0), max_weight=1)
    assert report.passed
    assert report.expected == 0
    assert report.total(0) == 0


def test_semicoh_weight_is_bounded():
    with pytest.raises(TruncationError):
        relative_semicoh(AlgebraId.parse("sl2"), w("sl2", 0), w("sl2", 0), max_weight=6)


@pytest.mark.slow
def test_osp12_formality():
    report = relative_semicoh(AlgebraId.parse("osp12"), w("osp12", 1), w("osp12", 1), max_weight=3)
    assert report.passed
    assert report.total(0) == 1
    assert report.total(1) == report.total(-1) == 0


@pytest.mark.parametrize("label", ["gl1", "sl2", "osp12"])
def test_wedge_matches_product_square(label):
    assert all(wedge_supercharacter_check(AlgebraId.parse(label), 2).values())


def test_euler_characteristic_vacuum():
    series = euler_poincare_char(w("sl2", 0), w("sl2", 0), order=4)
    assert series.coefficient(0) == {((), 0): 1}
    assert series.coefficient(2) == {}
    assert series.coefficient(4) == {}


def test_ep_check_self_dual():
    assert ep_check(w("sl2", 1), w("sl2", 1), order=6).passed


def test_ep_check_non_dual_vanishes():
    check = ep_check(w("sl2", 1), w("sl2", 0), order=4)
    assert check.passed
    assert check.series.is_zero()


def test_ep_check_against_slice_cohomology():
    lam = w("sl2", 1)
    report = relative_semicoh(AlgebraId.parse("sl2"), lam, lam, max_weight=1)
    check = ep_check(lam, lam, order=2, report=report)
    assert check.passed
    assert all("cohomology_euler" in row for row in check.rows)


@pytest.mark.parametrize("which", [F, G])
def test_filtrations_split_the_differential(which):
    report = relative_semicoh(AlgebraId.parse("sl2"), w("sl2", 1), w("sl2", 1), max_weight=1)
    for slice_ in report.slices:
        assert filtration_split_check(slice_, which).passed


def test_gl1_first_filtration_differential_vanishes():
    report = relative_semicoh(AlgebraId.parse("gl1"), w("gl1", 1), w("gl1", -1), max_weight=1)
    for slice_ in report.slices:
        assert filtration_split_check(slice_, F).passed


def test_pairing_on_sl2():
    report = pairing_check(build_witness(w("sl2", 1)), max_degree=2)
    assert report.passed
    assert report.cohomology == {0: 0, 1: 0, 2: 0}


def test_pairing_on_trivial_sl2_module():
    report = pairing_check(build_witness(w("sl2", 0)), max_degree=2)
    assert report.passed
    assert report.cohomology[0] == report.homology[0] == 1


@pytest.mark.slow
def test_pairing_on_osp12():
    assert pairing_check(build_witness(w("osp12", 1)), max_degree=2).passed


def test_pairing_degree_is_bounded():
    with pytest.raises(TruncationError):
        pairing_check(build_witness(w("sl2", 0)), max_degree=7)


@pytest.mark.parametrize("label,coords", [("sl2", (0,)), ("sl2", (1,)), ("osp12", (1,))])
def test_weyl_form_is_nondegenerate(label, coords):
    assert weyl_form_check(AlgebraId.parse(label), w(label, *coords), depth=2)["nondegenerate"]


@pytest.mark.parametrize("coords", [(1,), (2,)])
def test_osp12_forms_are_invariant(coords):
    assert build_witness(w("osp12", *coords)).invariance_residual() is None
    form = WeylForm(WeylModule(small_algebra(AlgebraId.parse("osp12")), w("osp12", *coords), k, 1))
    assert form.invariance_residual() is None
