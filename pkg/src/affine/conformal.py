"""Lowest conformal weights and characters of Weyl modules V^k_lambda."""
from typing import Optional, Tuple

from sympy import QQ

from src.algebra.ids import AlgebraId, Family
from src.reps.characters import FiniteChar, character
from src.reps.weights import Weight, root_datum
from src.series.graded import GradedSeries
from src.series.level import ExponentShift, level_scalar
from src.series.products import embed_weight, loop_minus_series


def casimir(weight: Weight):
    """(lambda | lambda + 2 rho) under kappa_0; for gl_m only the sl_m part."""
    rd = root_datum(weight.algebra)
    lam = rd.canonical(weight.eps)
    if weight.algebra.family == Family.GL:
        mean = sum(lam, QQ.zero) / weight.algebra.m
        lam = tuple(x - mean for x in lam)
    return rd.inner(lam, tuple(a + 2 * r for a, r in zip(lam, rd.rho)))


def center_charge(weight: Weight):
    """Eigenvalue of the identity matrix on L_lambda of gl_m."""
    return QQ(weight.coords[-1]) if weight.algebra.family == Family.GL else QQ(0)


def default_heisenberg_level(algebra: AlgebraId, level):
    """(Id | Id) at level k: m k under the trace form."""
    return level_scalar(level) * algebra.m


def delta_lowest(weight: Weight, level, heisenberg_level=None) -> ExponentShift:
    """Delta_lambda = (lambda | lambda + 2 rho) / 2(k + h^vee), plus a^2 / 2 kappa_H on the gl center."""
    weight.require_dominant()
    algebra = weight.algebra
    k = level_scalar(level)
    value = level_scalar(0)
    cas = casimir(weight)
    if cas:
        value += level_scalar(cas) / (2 * (k + level_scalar(algebra.dual_coxeter)))
    a = center_charge(weight)
    if a:
        kappa = level_scalar(heisenberg_level) if heisenberg_level is not None else default_heisenberg_level(algebra, k)
        value += level_scalar(a * a) / (2 * kappa)
    return ExponentShift(value)


def finite_char_series(char: FiniteChar, order: int, alphabet: Optional[Tuple] = None, slot: int = 0) -> GradedSeries:
    """A finite character sitting at q^0."""
    alphabet = alphabet or (char.algebra.alphabet_block,)
    terms = {(embed_weight(alphabet, slot, w), p): c for (w, p), c in char.parts.items()}
    return GradedSeries(alphabet, order, {0: terms})


def weyl_module_char(weight: Weight, level, order: int, alphabet: Optional[Tuple] = None, slot: int = 0,
                     heisenberg_level=None, parity: int = 0) -> GradedSeries:
    """q^{Delta_lambda} chi_lambda(z) / Pi(z, q); Delta_lambda is the global shift."""
    weight.require_dominant()
    alphabet = alphabet or (weight.algebra.alphabet_block,)
    char = character(weight).scaled(1, parity)
    base = finite_char_series(char, order, alphabet, slot) * loop_minus_series(weight.algebra, order, alphabet, slot)
    return base.with_shift(delta_lowest(weight, level, heisenberg_level))
