"""Duality pairs X+ / Y-: level maps, alpha levels and the symbolic identities tying them together."""
from dataclasses import dataclass, field
from typing import Dict, Optional

from sympy import QQ
from sympy.polys.fields import FracElement

from src.affine.conformal import delta_lowest
from src.affine.kernel import KernelSpec
from src.algebra.ids import AlgebraId, Family
from src.reps.weights import Weight, bo_inverse, bo_map, dual_weight, natural_weight
from src.series.level import ExponentShift, constant_value, format_level, is_constant, k, level_scalar, substitute_level
from src.utils.errors import IdentityError
from .tables import MINUS, PLUS, HookLabel, pair_record

PLUS_TO_MINUS, MINUS_TO_PLUS = "plus_to_minus", "minus_to_plus"


@dataclass(frozen=True)
class DualityPair:
    """X+(n, m) at level k against Y-(n, m) at the dual level l."""
    X: str
    n: int
    m: int
    r_override: Optional[object] = field(default=None, compare=False)

    @property
    def record(self):
        return pair_record(self.X, self.n, self.m)

    @property
    def Y(self) -> str:
        return self.record.Y

    @property
    def plus(self) -> HookLabel:
        return HookLabel(self.X, PLUS, self.n, self.m)

    @property
    def minus(self) -> HookLabel:
        return HookLabel(self.Y, MINUS, self.n, self.m)

    @property
    def r(self):
        return QQ.convert(self.r_override) if self.r_override is not None else self.record.r

    @property
    def b_plus(self) -> AlgebraId:
        return self.plus.b_algebra

    @property
    def b_minus(self) -> AlgebraId:
        return self.minus.b_algebra

    @property
    def conjectural(self) -> bool:
        return self.X in ("B", "O") and self.m > 1

    def __str__(self) -> str:
        return f"{self.X}+/{self.Y}-({self.n},{self.m})"


def level_map(pair: DualityPair, direction: str = PLUS_TO_MINUS, level: FracElement = k) -> FracElement:
    """l = 1/(r (k + h+)) - h-; the reverse direction solves the same relation for k."""
    h_plus, h_minus = level_scalar(pair.plus.h_vee), level_scalar(pair.minus.h_vee)
    r = level_scalar(pair.r)
    level = level_scalar(level)
    if direction == PLUS_TO_MINUS:
        return 1 / (r * (level + h_plus)) - h_minus
    if direction == MINUS_TO_PLUS:
        return 1 / (r * (level + h_minus)) - h_plus
    raise IdentityError(f"Unknown level map direction '{direction}'")


def duality_relation_residual(pair: DualityPair) -> FracElement:
    """r (k + h+)(l + h-) - 1 with l = level_map(k)."""
    ell = level_map(pair)
    return level_scalar(pair.r) * (k + level_scalar(pair.plus.h_vee)) * (ell + level_scalar(pair.minus.h_vee)) - 1


def derived_b_dual_coxeter(pair: DualityPair):
    """h_vee of b+ forced by k_b+ + alpha_+ = -2 h_vee with alpha_+ written without its h_vee term."""
    p, q = pair.record.pq_plus
    value = -(pair.plus.k_b() - level_scalar(p) * (k + level_scalar(pair.plus.h_vee)) + level_scalar(q))
    if not is_constant(value):
        raise IdentityError(f"{pair}: k_b+ - p+(k + h+) + q+ depends on k ({format_level(value)})")
    return constant_value(value)


def alpha_levels(pair: DualityPair):
    """(alpha_+, alpha_-) as elements of Q(k); both identities with k_b are asserted."""
    ell = level_map(pair)
    p_plus, q_plus = pair.record.pq_plus
    p_minus, q_minus = pair.record.pq_minus
    h_b_plus = level_scalar(pair.b_plus.dual_coxeter)
    h_b_minus = level_scalar(pair.b_minus.dual_coxeter)
    alpha_plus = -level_scalar(p_plus) * (k + level_scalar(pair.plus.h_vee)) + level_scalar(q_plus) - h_b_plus
    alpha_minus = level_scalar(p_minus) * (ell + level_scalar(pair.minus.h_vee)) - level_scalar(q_minus) - h_b_minus
    plus_sum = pair.plus.k_b() + alpha_plus
    minus_sum = pair.minus.k_b(ell) + alpha_minus
    if plus_sum != -2 * h_b_plus:
        raise IdentityError(f"{pair}: k_b+ + alpha_+ = {format_level(plus_sum)}, expected {-2 * pair.b_plus.dual_coxeter}")
    if minus_sum != -2 * h_b_minus:
        raise IdentityError(f"{pair}: l_b- + alpha_- = {format_level(minus_sum)}, expected {-2 * pair.b_minus.dual_coxeter}")
    return alpha_plus, alpha_minus


def _kernel(algebra: AlgebraId, n: int) -> KernelSpec:
    return KernelSpec(algebra, n)


def check_alpha_gluing(pair: DualityPair) -> Dict:
    """(alpha_+, l_b-) glue as a kernel of b+ with n = 1 and (alpha_-, k_b+) as one of b- with n = -1."""
    alpha_plus, alpha_minus = alpha_levels(pair)
    ell = level_map(pair)
    forward = _kernel(pair.b_plus, 1).gluing_residual(alpha_plus, pair.minus.k_b(ell))
    backward = _kernel(pair.b_minus, -1).gluing_residual(alpha_minus, pair.plus.k_b())
    if forward:
        raise IdentityError(f"{pair}: (alpha_+, l_b-) violates the gluing relation by {format_level(forward)}")
    if backward:
        raise IdentityError(f"{pair}: (alpha_-, k_b+) violates the gluing relation by {format_level(backward)}")
    return {"alpha_plus": format_level(alpha_plus), "alpha_minus": format_level(alpha_minus)}


def check_pairing_level(pair: DualityPair) -> Dict:
    """Delta^{k_b+}_lambda + Delta^{alpha_+}_{lambda dagger} = 0 on the natural weight."""
    alpha_plus, _ = alpha_levels(pair)
    lam = natural_weight(pair.b_plus)
    total = delta_lowest(lam, pair.plus.k_b(), _heisenberg_level(pair, PLUS)) \
        + delta_lowest(dual_weight(lam), alpha_plus, _negated_heisenberg_level(pair))
    if total.value:
        raise IdentityError(f"{pair}: lowest weights at k_b+ and alpha_+ do not cancel ({total})")
    return {"natural": str(lam)}


def _heisenberg_level(pair: DualityPair, side: str) -> Optional[FracElement]:
    """Level of the gl_m center direction on either side (type A only).

    Both are linear in the level of their own side: h+ pairs with itself to
    m (n (k + h+) - n - m)/(n + m) and h- to m (n - (n + m)(l + h-))/n, so the
    minus side sees k only through the level map.
    """
    if pair.X != "A":
        return None
    n, m = pair.n, pair.m
    if side == PLUS:
        shifted = k + level_scalar(pair.plus.h_vee)
        return level_scalar(m) * (n * shifted - n - m) / (n + m)
    shifted = level_map(pair) + level_scalar(pair.minus.h_vee)
    return level_scalar(m) * (n - (n + m) * shifted) / n


def _negated_heisenberg_level(pair: DualityPair) -> Optional[FracElement]:
    plus = _heisenberg_level(pair, PLUS)
    return -plus if plus is not None else None


def sector_partner(pair: DualityPair, weight: Weight) -> Weight:
    """The weight of b- matched with a weight of b+."""
    if pair.b_plus.family == Family.SO_ODD:
        return bo_inverse(weight)
    if pair.b_plus.family == Family.OSP_1_2M:
        return bo_map(weight)
    return weight


def sector_shift(pair: DualityPair, weight: Weight) -> ExponentShift:
    """s(lambda) = Delta^{l_b-}_{s lambda} - Delta^{k_b+}_lambda for a weight of b+."""
    ell = level_map(pair)
    partner = sector_partner(pair, weight)
    return delta_lowest(partner, pair.minus.k_b(ell), _heisenberg_level(pair, MINUS)) \
        - delta_lowest(weight, pair.plus.k_b(), _heisenberg_level(pair, PLUS))


def check_primary_weight(pair: DualityPair) -> Dict:
    """Delta_rho(Y-) - Delta_rho(X+) equals s on the natural weight and Delta_K at n = 1."""
    shift = sector_shift(pair, natural_weight(pair.b_plus))
    if not shift.is_level_free():
        raise IdentityError(f"{pair}: natural sector shift {shift} depends on k")
    difference = pair.minus.delta_rho - pair.plus.delta_rho
    delta_K = _kernel(pair.b_plus, 1).delta_K
    if shift.rational_part != difference or difference != delta_K:
        raise IdentityError(
            f"{pair}: Delta_rho difference {difference}, natural sector shift {shift.rational_part}, Delta_K {delta_K}")
    return {"difference": str(difference)}


def check_parity_match(pair: DualityPair) -> Dict:
    """Parity of the natural kernel sector composed with the X+ primary parity gives the Y- primary parity."""
    spec = _kernel(pair.b_plus, 1)
    flip = spec.sector_parity(natural_weight(pair.b_plus))
    composed = pair.plus.primary_hw_parity ^ flip
    if composed != pair.minus.primary_hw_parity:
        raise IdentityError(
            f"{pair}: primary parity {pair.plus.primary_hw_parity} with sector flip {flip} "
            f"does not give {pair.minus.primary_hw_parity}")
    return {"plus": pair.plus.primary_hw_parity, "flip": flip, "minus": pair.minus.primary_hw_parity}


def level_round_trip(pair: DualityPair) -> FracElement:
    return substitute_level(level_map(pair, MINUS_TO_PLUS), level_map(pair))
