import pytest
from sympy import QQ

from src.algebra.ids import AlgebraId
from src.algebra.structure import build_algebra
from src.reps.characters import character, is_weyl_invariant, tensor_decompose, trivial_multiplicity, weyl_dimension
from src.reps.modules import SimpleModule
from src.reps.weights import Weight, bo_inverse, bo_map, dual_weight, in_R, parse_weight
from src.utils.errors import WeightError


def w(label, *coords):
    return Weight(AlgebraId.parse(label), tuple(coords))


def test_parse_weight():
    assert parse_weight(AlgebraId.parse("sl3"), "1,0") == w("sl3", 1, 0)
    assert parse_weight(AlgebraId.parse("sl3"), "") == Weight.zero(AlgebraId.parse("sl3"))
    with pytest.raises(WeightError):
        parse_weight(AlgebraId.parse("sl3"), "1")
    with pytest.raises(WeightError):
        parse_weight(AlgebraId.parse("sl3"), "a,b")


def test_dominance():
    assert not w("sl2", -1).is_dominant()
    with pytest.raises(WeightError):
        w("sl2", -1).require_dominant()
    # The gl center and so2 are unconstrained.
    assert w("gl1", -3).is_dominant()
    assert w("gl2", 1, -5).is_dominant()


@pytest.mark.parametrize("lam,expected", [
    (("sl3", 1, 0), ("sl3", 0, 1)),
    (("sp4", 0, 1), ("sp4", 0, 1)),
    (("gl3", 1, 0, 1), ("gl3", 0, 1, -1)),
])
def test_dual_weight(lam, expected):
    assert dual_weight(w(*lam)) == w(*expected)


def test_lattice_R():
    assert in_R(w("gl3", 1, 1, 0))
    assert not in_R(w("so5", 0, 1))
    assert in_R(w("so5", 0, 2))
    assert in_R(w("osp(1|4)", 3, 5))


def test_bo_map_doubles_the_last_coordinate():
    assert bo_map(w("osp(1|4)", 1, 3)) == w("so5", 1, 6)
    assert bo_map(w("osp12", 2)) == w("so3", 4)
    assert bo_map(w("sp4", 1, 0)) == w("sp4", 1, 0)
    assert bo_inverse(w("so5", 1, 6)) == w("osp(1|4)", 1, 3)
    with pytest.raises(WeightError):
        bo_inverse(w("so5", 0, 1))


def test_sl2_natural_character():
    char = character(w("sl2", 1))
    assert char.terms == {(1,): 1, (-1,): 1}
    assert char.dimension() == 2
    assert is_weyl_invariant(char)


def test_osp12_natural_character_has_odd_middle_weight():
    char = character(w("osp12", 1))
    assert char.dimension() == 3
    assert char.superdimension() == 1
    assert char.parity_split[(1,)] == (1, 0)
    assert char.parity_split[(-1,)] == (1, 0)
    assert char.parity_split[(0,)] == (0, 1)


def test_spin_module_of_so5():
    char = character(w("so5", 0, 1))
    assert char.dimension() == 4
    assert weyl_dimension(w("so5", 0, 1)) == QQ(4)


@pytest.mark.parametrize("lam", [("sl3", 1, 1), ("sp4", 1, 0), ("so5", 1, 0), ("sl2", 3)])
def test_character_dimension_matches_weyl_formula(lam):
    assert character(w(*lam)).dimension() == weyl_dimension(w(*lam))


def test_clebsch_gordan():
    assert tensor_decompose(w("sl2", 1), w("sl2", 1)) == {w("sl2", 2): 1, w("sl2", 0): 1}
    assert tensor_decompose(w("sl3", 1, 0), w("sl3", 1, 0)) == {w("sl3", 2, 0): 1, w("sl3", 0, 1): 1}


def test_osp14_tensor_square_matches_so5_under_bo_map():
    rho = w("osp(1|4)", 1, 0)
    osp = {bo_map(nu): c for nu, c in tensor_decompose(rho, rho).items()}
    so = tensor_decompose(bo_map(rho), bo_map(rho))
    assert osp == {nu: c for nu, c in so.items() if in_R(nu)}


def test_trivial_multiplicity():
    multiplicity, witness = trivial_multiplicity(w("sl3", 1, 0), w("sl3", 0, 1))
    assert multiplicity == 1
    assert witness is not None and witness.weight == w("sl3", 0, 1)
    assert trivial_multiplicity(w("sl3", 1, 0), w("sl3", 1, 0)) == (0, None)
    assert trivial_multiplicity(w("osp12", 1), w("osp12", 1))[0] == 1


def test_cartan_values_count_each_direction_once():
    basis, _ = build_algebra(AlgebraId.parse("osp12"))
    h = basis.cartan_indices[0]
    assert basis.cartan_value(h, w("osp12", 1).eps) == 1
    assert basis.cartan_value(h, w("osp12", 2).eps) == 2


@pytest.mark.parametrize("lam", [("sl2", 1), ("osp12", 1), ("osp12", 2), ("sp4", 1, 0), ("so5", 1, 0)])
def test_simple_module_is_a_representation(lam):
    weight = w(*lam)
    module = SimpleModule(build_algebra(weight.algebra)[0], weight)
    assert module.dim == character(weight).dimension()
    assert module.representation_residual() is None
