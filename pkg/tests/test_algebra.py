import random

import pytest
from sympy import QQ

from src.algebra.ids import AlgebraId, Family, descriptor_from_text
from src.algebra.random_algebras import random_superalgebra
from src.algebra.structure import build_algebra
from src.algebra.transpose import (anti_homomorphism_residuals, chevalley_transpose, form_residuals,
                                   transpose_is_involutive)
from src.utils.errors import UnsupportedAlgebraError


@pytest.mark.parametrize("label,family,m", [
    ("sl2", Family.SL, 2),
    ("gl1", Family.GL, 1),
    ("so5", Family.SO_ODD, 2),
    ("so4", Family.SO_EVEN, 2),
    ("sp4", Family.SP, 2),
    ("osp12", Family.OSP_1_2M, 1),
    ("osp(1|4)", Family.OSP_1_2M, 2),
])
def test_parse_labels(label, family, m):
    algebra = AlgebraId.parse(label)
    assert algebra.family == family
    assert algebra.m == m


@pytest.mark.parametrize("label", ["e8", "sp3", "osp(1|3)", "so1", ""])
def test_parse_rejects_unknown_labels(label):
    with pytest.raises(UnsupportedAlgebraError):
        AlgebraId.parse(label)


@pytest.mark.parametrize("label,h_vee", [
    ("sl2", QQ(2)), ("gl3", QQ(3)), ("so5", QQ(3)), ("so6", QQ(4)), ("sp4", QQ(3)), ("osp12", QQ(3, 2)),
])
def test_dual_coxeter_under_kappa0(label, h_vee):
    assert AlgebraId.parse(label).dual_coxeter == h_vee


def test_sl2_basis_and_roots():
    basis, roots = build_algebra(AlgebraId.parse("sl2"))
    assert basis.dim == 3
    assert len(roots.reduced_positive_roots) == 1


def test_so5_dimension_matches_roots_plus_rank():
    algebra = AlgebraId.parse("so5")
    basis, roots = build_algebra(algebra)
    assert basis.dim == 10
    assert 2 * len(roots.reduced_positive_roots) + algebra.rank == basis.dim


def test_osp12_has_two_odd_generators():
    basis, _ = build_algebra(AlgebraId.parse("osp12"))
    assert basis.dim == 5
    assert sum(basis.parities) == 2


def test_gl_is_abelian_only_in_rank_one():
    assert AlgebraId.parse("gl1").is_abelian
    assert AlgebraId.parse("so2").is_abelian
    assert not AlgebraId.parse("gl2").is_abelian


def test_superdimension_of_ambient_descriptor():
    descriptor = descriptor_from_text("sl(3|1)")
    assert descriptor.superdimension == (9, 6)


@pytest.mark.parametrize("label", ["sl2", "osp12", "sp4", "so5"])
def test_chevalley_transpose_is_an_anti_involution(label):
    basis, _ = build_algebra(AlgebraId.parse(label))
    image = chevalley_transpose(basis)
    assert anti_homomorphism_residuals(basis, image) == []
    assert form_residuals(basis, image) == []
    assert transpose_is_involutive(basis, image)


def test_sl2_transpose_swaps_e_and_f():
    basis, _ = build_algebra(AlgebraId.parse("sl2"))
    image = chevalley_transpose(basis)
    h = basis.cartan_indices[0]
    assert image[h] == {h: QQ(1)}
    others = [i for i in range(basis.dim) if i != h]
    assert set(image[others[0]]) == {others[1]}
    assert set(image[others[1]]) == {others[0]}


def test_random_superalgebras_are_reproducible():
    first = random_superalgebra(random.Random(7))
    second = random_superalgebra(random.Random(7))
    assert first.parities == second.parities
    assert first.brackets == second.brackets
    assert first.dim <= 8
