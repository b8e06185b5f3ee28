"""The Chevalley anti-involution X -> D X^T D^-1 of a matrix (super)algebra."""
from itertools import product
from typing import Dict

from sympy import QQ

from src.utils.errors import UnsupportedAlgebraError
from .structure import SuperBasis, mat_lin


def _transpose_matrix(basis: SuperBasis, mat):
    signs = basis.realization.transpose_signs
    return {(c, r): v * signs[c] * signs[r] for (r, c), v in mat.items()}


def chevalley_transpose(basis: SuperBasis) -> Dict[int, Dict[int, object]]:
    """Map i -> {j: coefficient} with tX_i = sum_j coefficient * X_j.

    The map is even, fixes the Cartan subalgebra, swaps the positive and
    negative root spaces and satisfies t[x, y] = [ty, tx].
    """
    if not basis.is_matrix_algebra():
        raise UnsupportedAlgebraError("The anti-involution is defined through a matrix realization")
    out = {}
    for i, mat in enumerate(basis.matrices):
        out[i] = basis.coordinates(_transpose_matrix(basis, mat))
    return out


def apply_linear(image: Dict[int, Dict[int, object]], vector: Dict[int, object]) -> Dict[int, object]:
    out: Dict[int, object] = {}
    for i, c in vector.items():
        for j, v in image[i].items():
            out[j] = out.get(j, QQ.zero) + c * v
    return {j: v for j, v in out.items() if v}


def anti_homomorphism_residuals(basis: SuperBasis, image: Dict[int, Dict[int, object]]):
    """Pairs (i, j) where t[x_i, x_j] != [tx_j, tx_i]."""
    bad = []
    for i, j in product(range(basis.dim), repeat=2):
        lhs = apply_linear(image, basis.bracket(i, j))
        rhs: Dict[int, object] = {}
        for a, ca in image[j].items():
            for b, cb in image[i].items():
                for c, v in basis.bracket(a, b).items():
                    rhs[c] = rhs.get(c, QQ.zero) + ca * cb * v
        rhs = {c: v for c, v in rhs.items() if v}
        if lhs != rhs:
            bad.append((i, j))
    return bad


def form_residuals(basis: SuperBasis, image: Dict[int, Dict[int, object]]):
    """Pairs (i, j) where (tx_i | tx_j) != (x_j | x_i)."""
    bad = []
    for i, j in product(range(basis.dim), repeat=2):
        value = sum((ca * cb * basis.form_value(a, b)
                     for a, ca in image[i].items() for b, cb in image[j].items()), QQ.zero)
        if value != basis.form_value(j, i):
            bad.append((i, j))
    return bad


def transpose_is_involutive(basis: SuperBasis, image: Dict[int, Dict[int, object]]) -> bool:
    for i in range(basis.dim):
        if apply_linear(image, image[i]) != {i: QQ.one}:
            return False
    return True


def transpose_matrix_of(basis: SuperBasis, mat):
    """Image of an arbitrary element given as a matrix."""
    return mat_lin((1, _transpose_matrix(basis, mat)))
