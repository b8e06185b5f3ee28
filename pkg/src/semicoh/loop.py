"""(Co)homology of the positive and negative loop algebras with Weyl module coefficients."""
from typing import Dict

from src.algebra.ids import AlgebraId
from src.reps.modules import SimpleModule
from src.reps.weights import Weight
from src.series.level import k, level_scalar
from src.utils import config
from src.utils.errors import TruncationError
from .affine_modules import LoopAlgebra, TensorModule, WeylModule, complement_level, small_algebra
from .ce import CHAIN, COCHAIN, build_ce


def _require_depth(depth: int):
    if depth > config.MAX_SEMICOH_WEIGHT:
        raise TruncationError(f"Conformal weight {depth} exceeds MAX_SEMICOH_WEIGHT = {config.MAX_SEMICOH_WEIGHT}")


def _by_grade(cohomology: Dict[int, Dict[int, int]], sign: int) -> Dict[int, Dict[int, int]]:
    """grade -> degree -> dimension, with grades reported as conformal weights and zeros dropped."""
    out = {}
    for grade, dims in sorted(cohomology.items()):
        nonzero = {n: d for n, d in dims.items() if d}
        if nonzero:
            out[sign * grade] = nonzero
    return out


def homology_of_loop_minus(algebra: AlgebraId, weight: Weight, level=k, depth: int = 3) -> Dict[int, Dict[int, int]]:
    """H_n(L^- g, V^k_lambda) per conformal weight; V is free over U(L^- g), so only H_0 = L_lambda at weight 0.

    Weight-w pieces need chains of at most w letters, so every degree shown is exact.
    """
    _require_depth(depth)
    basis = small_algebra(algebra)
    lie, modes = LoopAlgebra(basis, level).truncated(-1, depth)
    module = WeylModule(basis, weight, level, depth)
    complex_ = build_ce(lie, module.module_data(modes), CHAIN, depth, max_grade=depth)
    result = _by_grade(complex_.cohomology(), 1)
    print(f"[LoopHomology] {algebra.label} V_{list(weight.coords)}: {result}")
    return result


def homology_of_tensor(algebra: AlgebraId, lam: Weight, mu: Weight, level=k, depth: int = 2) -> Dict[int, Dict[int, int]]:
    """H_n(L^- g, V^k_lambda (x) V^l_mu) per conformal weight.

    The tensor product is free over U(L^- g), so only H_0 = L_lambda (x) V^l_mu
    survives; see ``free_tensor_homology`` for its graded dimensions.
    """
    _require_depth(depth)
    basis = small_algebra(algebra)
    level = level_scalar(level)
    lie, modes = LoopAlgebra(basis, level).truncated(-1, depth)
    module = TensorModule(WeylModule(basis, lam, level, depth),
                          WeylModule(basis, mu, complement_level(basis, level), depth))
    complex_ = build_ce(lie, module.module_data(modes), CHAIN, depth, max_grade=depth)
    return _by_grade(complex_.cohomology(), 1)


def free_tensor_homology(algebra: AlgebraId, lam: Weight, mu: Weight, depth: int = 2) -> Dict[int, Dict[int, int]]:
    """dim L_lambda times the graded dimensions of V_mu, all in degree 0."""
    basis = small_algebra(algebra)
    top = SimpleModule(basis, lam).dim
    weyl = WeylModule(basis, mu, k, depth)
    return {d: {0: top * len(weyl.states(d))} for d in range(depth + 1)}


def cohomology_of_loop_plus(algebra: AlgebraId, weight: Weight, level=k, depth: int = 2) -> Dict[int, Dict[int, int]]:
    """H^n(L^+ g, V^k_lambda) per conformal weight: the singular vectors, L_lambda at weight 0 for symbolic k."""
    _require_depth(depth)
    basis = small_algebra(algebra)
    lie, modes = LoopAlgebra(basis, level).truncated(1, depth)
    module = WeylModule(basis, weight, level, depth)
    complex_ = build_ce(lie, module.module_data(modes), COCHAIN, depth, max_grade=depth)
    return _by_grade(complex_.cohomology(), 1)


__all__ = ["homology_of_loop_minus", "homology_of_tensor", "free_tensor_homology", "cohomology_of_loop_plus"]
