"""Euler-Poincare characters of the relative complex from characters alone.

Sum_n (-1)^n ch H^n(V^k_lambda (x) V^l_mu) is the invariant part of
ch V^k_lambda * ch V^l_mu * Pi(z, q)^2, where Pi is taken with the parity
variable set to +1: the relative wedge then contributes exactly the
ghost-degree signs.
"""
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Tuple

from sympy import QQ

from src.algebra.ids import AlgebraId
from src.affine.conformal import weyl_module_char
from src.reps.characters import character
from src.reps.weights import Weight, dual_weight, root_datum
from src.series.graded import GradedSeries
from src.series.level import format_level, k, level_scalar
from src.series.products import eta_like_product
from src.utils import config
from src.utils.errors import IdentityError, NonInvariantError, TruncationError
from .affine_modules import complement_level, small_algebra
from .fock import GhostFock
from .relative import SemicohReport


def flatten_parity(series: GradedSeries) -> GradedSeries:
    return series.map_keys(lambda w, p: (w, 0))


def flat_invariant_part(series: GradedSeries, algebra: AlgebraId) -> GradedSeries:
    """Multiplicity of the trivial character in every coefficient of a parity-flattened series.

    Coefficients are stripped from the top by flattened simple characters;
    signed multiplicities are allowed. Raises NonInvariantError when a highest
    remaining weight is not dominant.
    """
    rd = root_datum(algebra)
    zero = Weight.zero(algebra)
    flat = {}
    coeffs: Dict[int, Dict] = {}
    for e, terms in series.coeffs.items():
        remaining = defaultdict(int)
        for (w, _), c in terms.items():
            remaining[w] += c
        remaining = {w: c for w, c in remaining.items() if c}
        trivial = 0
        while remaining:
            w, c = max(remaining.items(), key=lambda item: (rd.height(rd.to_eps(item[0])), item[0]))
            top = Weight(algebra, w)
            if not top.is_dominant():
                raise NonInvariantError(
                    f"Coefficient at q^({e}/2) has non-dominant highest weight {list(w)} for {algebra.label}"
                )
            if top == zero:
                trivial += c
            if top not in flat:
                flat[top] = character(top).terms
            for key, d in flat[top].items():
                value = remaining.get(key, 0) - c * d
                if value:
                    remaining[key] = value
                else:
                    remaining.pop(key, None)
        if trivial:
            coeffs[e] = {((), 0): trivial}
    return GradedSeries((), series.order, coeffs, series.shift)


def euler_poincare_char(lam: Weight, mu: Weight, level=k, order: int = 4) -> GradedSeries:
    """The invariant part of ch V^k_lambda ch V^l_mu Pi^2, with the bottom shift Delta_lambda(k) + Delta_mu(l)."""
    if order > 2 * config.MAX_SERIES_ORDER:
        raise TruncationError(f"Order {order} exceeds 2 * MAX_SERIES_ORDER = {2 * config.MAX_SERIES_ORDER}")
    algebra = lam.algebra
    level = level_scalar(level)
    dual_level = complement_level(small_algebra(algebra), level)
    first = weyl_module_char(lam, level, order)
    second = weyl_module_char(mu, dual_level, order)
    wedge = eta_like_product(algebra, order)
    product = flatten_parity(first * second * wedge * wedge)
    return flat_invariant_part(product, algebra)


@dataclass
class EulerCheck:
    algebra: AlgebraId
    lam: Weight
    mu: Weight
    order: int
    series: GradedSeries
    expected: int
    rows: List[Dict]
    passed: bool

    def to_json(self) -> Dict:
        return {
            "algebra": self.algebra.label,
            "lambda": list(self.lam.coords),
            "mu": list(self.mu.coords),
            "order": self.order,
            "shift": format_level(self.series.shift.value),
            "expected_classes": self.expected,
            "rows": self.rows,
            "series": self.series.to_json(),
            "passed": self.passed,
        }


def ep_check(lam: Weight, mu: Weight, level=k, order: int = 4, report: SemicohReport = None) -> EulerCheck:
    """EP char against delta_{lambda, mu^dagger} and, when a report is given, against the slice cohomology."""
    series = euler_poincare_char(lam, mu, level, order)
    expected = 1 if dual_weight(mu) == lam else 0
    rows = []
    passed = True
    for e in range(0, order + 1, 2):
        coefficient = series.coeffs.get(e, {}).get(((), 0), 0)
        want = expected if e == 0 else 0
        row = {"weight": e // 2, "euler": int(coefficient), "expected": want}
        if report is not None and e // 2 <= report.max_weight:
            row["cohomology_euler"] = report.slices[e // 2].cohomology_euler()
            passed &= row["cohomology_euler"] == coefficient
        passed &= coefficient == want
        rows.append(row)
    passed &= all(e % 2 == 0 for e in series.coeffs)
    if expected:
        passed &= series.shift.is_level_free() and series.shift.rational_part == 0
    print(f"[EulerCheck] {lam.algebra.label} lambda={list(lam.coords)} mu={list(mu.coords)}: "
          f"{'ok' if passed else 'mismatch'}")
    return EulerCheck(lam.algebra, lam, mu, order, series, expected, rows, passed)


def wedge_supercharacter_check(algebra: AlgebraId, depth: int = 3) -> Dict[int, bool]:
    """The ghost Fock supercharacter agrees with Pi(z, q)^2 weight by weight."""
    basis = small_algebra(algebra)
    rd = root_datum(algebra)
    ghosts = GhostFock(basis.parities, basis.weights, depth)
    zero = rd.canonical(tuple(QQ(0) for _ in range(rd.eps_dim)))
    wedge = eta_like_product(algebra, 2 * depth)
    square = flatten_parity(wedge * wedge)
    out = {}
    for c in range(depth + 1):
        fock: Dict[Tuple, object] = defaultdict(int)
        for eps, v in ghosts.supercharacter_terms(c, zero).items():
            fock[rd.from_eps(eps)] += v
        fock = {w: v for w, v in fock.items() if v}
        expected = square.character(2 * c)
        out[c] = fock == expected
        if not out[c]:
            raise IdentityError(f"Relative wedge of {algebra.label} disagrees with Pi^2 at conformal weight {c}")
    return out


__all__ = ["euler_poincare_char", "ep_check", "flat_invariant_part", "wedge_supercharacter_check", "EulerCheck"]
