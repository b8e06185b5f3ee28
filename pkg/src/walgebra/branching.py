"""Branching functions of a W-algebra character over its affine subalgebra V^k(b).

ch W = sum_lambda B_lambda(q) chi_lambda(z) / Pi_b(z, q): each coefficient of
ch W * Pi_b is a finite character of b, and stripping highest weights from it
gives the multiplicities that make up B_lambda.
"""
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from joblib import Parallel, delayed
from sympy import QQ

from src.affine.conformal import delta_lowest, finite_char_series
from src.algebra.ids import AlgebraId
from src.reps.characters import FiniteChar, character, decompose
from src.reps.weights import Weight, in_R
from src.series.graded import GradedSeries, first_difference
from src.series.level import ExponentShift
from src.series.products import eta_like_product, loop_minus_series
from src.utils import config
from src.utils.errors import HookdualError, WeightError
from src.utils.exact import format_half, to_jsonable


@dataclass
class BranchingFunction:
    """B_lambda as {(doubled exponent, parity): multiplicity}."""
    weight: Weight
    terms: Dict[Tuple[int, int], object] = field(default_factory=dict)

    @property
    def valuation(self) -> int:
        return min(e for e, _ in self.terms)

    def series(self, alphabet: Tuple, order: int) -> GradedSeries:
        """B_lambda as a series of trivial weight in ``alphabet``."""
        zero = GradedSeries.zero_weight(alphabet)
        coeffs: Dict[int, Dict] = defaultdict(dict)
        for (e, p), c in self.terms.items():
            coeffs[e][(zero, p)] = c
        return GradedSeries(alphabet, order, coeffs)

    def coset_series(self, level, order: int, heisenberg_level=None) -> GradedSeries:
        """q^{-Delta_lambda} B_lambda: the coset character, with the level in its global shift."""
        alphabet = (self.weight.algebra.alphabet_block,)
        shift = -delta_lowest(self.weight, level, heisenberg_level)
        return self.series(alphabet, order).with_shift(shift)

    def to_json(self) -> Dict:
        return {
            "lambda": list(self.weight.coords),
            "terms": [
                {"exponent": format_half(e), "parity": p, "multiplicity": to_jsonable(c)}
                for (e, p), c in sorted(self.terms.items())
            ],
        }


@dataclass
class Branching:
    algebra: AlgebraId
    order: int
    functions: Dict[Weight, BranchingFunction]

    def weights(self) -> List[Weight]:
        return sorted(self.functions, key=lambda w: (self.functions[w].valuation, w.coords))

    def vacuum(self) -> Optional[BranchingFunction]:
        return self.functions.get(Weight.zero(self.algebra))

    def to_json(self) -> Dict:
        return {
            "algebra": self.algebra.label,
            "order": format_half(self.order),
            "functions": [self.functions[w].to_json() for w in self.weights()],
        }


def _decompose_coefficient(algebra: AlgebraId, e: int, terms: Dict) -> List[Tuple[Weight, int, int, object]]:
    char = FiniteChar(algebra, {(tuple(w), p): c for (w, p), c in terms.items()})
    return [(lam, e, p, c) for (lam, p), c in decompose(char).items()]


def extract_branching(w_char: GradedSeries, algebra: AlgebraId, require_R: bool = True) -> Branching:
    """Splits a character graded by weights of ``algebra`` into branching functions.

    The series must carry no global shift; multiplicities come out exact.
    Raises NegativeMultiplicityError when a coefficient is not a true
    character and WeightError when a highest weight falls outside R.
    """
    if w_char.alphabet != (algebra.alphabet_block,):
        raise HookdualError(f"Series alphabet {w_char.alphabet} is not that of {algebra.label}")
    if w_char.shift != ExponentShift.zero():
        raise HookdualError("Branching extraction needs a series without global shift")
    product = w_char * eta_like_product(algebra, w_char.order)
    parts = Parallel(n_jobs=config.HOOKDUAL_THREADS, prefer="threads")(
        delayed(_decompose_coefficient)(algebra, e, product.coefficient(e)) for e in product.exponents()
    )
    functions: Dict[Weight, BranchingFunction] = {}
    for chunk in parts:
        for lam, e, p, c in chunk:
            if require_R and not in_R(lam):
                raise WeightError(f"Highest weight {list(lam.coords)} of {algebra.label} at q^({e}/2) is outside R")
            functions.setdefault(lam, BranchingFunction(lam)).terms[(e, p)] = c
    return Branching(algebra, product.order, functions)


def reconstruct(branching: Branching) -> GradedSeries:
    """sum_lambda B_lambda chi_lambda / Pi_b back in the z-alphabet of b."""
    algebra = branching.algebra
    alphabet = (algebra.alphabet_block,)
    order = branching.order
    total = GradedSeries.zero(alphabet, order)
    for lam in branching.weights():
        total = total + branching.functions[lam].series(alphabet, order) * finite_char_series(character(lam), order)
    return total * loop_minus_series(algebra, order)


def check_reconstruction(w_char: GradedSeries, branching: Branching) -> Dict:
    """Reconstruction against the original series up to the branching order."""
    rebuilt = reconstruct(branching)
    diff = first_difference(w_char, rebuilt, min(w_char.order, rebuilt.order))
    if diff is not None:
        e, key, lhs, rhs = diff
        return {"passed": False, "exponent": format_half(e), "cell": [list(key[0]), key[1]],
                "lhs": to_jsonable(lhs), "rhs": to_jsonable(rhs)}
    return {"passed": True, "order": format_half(rebuilt.order), "sectors": len(branching.functions)}


def vacuum_leading_terms(branching: Branching, upto: int = 4) -> List[object]:
    """Even-parity coefficients of B_0 at q^0, q^{1/2}, ..., q^{upto/2}."""
    vacuum = branching.vacuum()
    if vacuum is None:
        return [QQ.zero] * (upto + 1)
    return [vacuum.terms.get((e, 0), QQ.zero) for e in range(upto + 1)]
