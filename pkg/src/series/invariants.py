"""Multiplicity of the trivial module in each coefficient of a series."""
from collections import defaultdict
from typing import Dict, Optional, Tuple

from src.algebra.ids import AlgebraId
from src.reps.characters import FiniteChar, decompose
from src.reps.weights import Weight
from .graded import GradedSeries


def _block_bounds(alphabet: Tuple, slot: int) -> Tuple[int, int]:
    start = sum(int(block[1]) for block in alphabet[:slot])
    return start, start + int(alphabet[slot][1])


def block_algebra(alphabet: Tuple, slot: int) -> AlgebraId:
    return AlgebraId.parse(alphabet[slot][0])


def invariant_part(series: GradedSeries, slot: Optional[int] = None, check_sign: bool = True) -> GradedSeries:
    """Keeps only trivial isotypic components of one alphabet block (all blocks when slot is None).

    Coefficients must be characters of the block's algebra; the removed block
    disappears from the alphabet. Parity is kept: an invariant carried by an
    odd vector stays odd.
    """
    if slot is None:
        result = series
        while result.alphabet:
            result = invariant_part(result, len(result.alphabet) - 1, check_sign)
        return result
    algebra = block_algebra(series.alphabet, slot)
    lo, hi = _block_bounds(series.alphabet, slot)
    zero = Weight.zero(algebra)
    alphabet = series.alphabet[:slot] + series.alphabet[slot + 1:]
    coeffs: Dict[int, Dict] = {}
    for e, terms in series.coeffs.items():
        groups: Dict[Tuple, Dict] = defaultdict(dict)
        for (w, p), c in terms.items():
            rest = w[:lo] + w[hi:]
            groups[rest][(w[lo:hi], p)] = c
        bucket = {}
        for rest, parts in groups.items():
            for (top, parity), mult in decompose(FiniteChar(algebra, parts), check_sign).items():
                if top == zero and mult:
                    bucket[(rest, parity)] = bucket.get((rest, parity), 0) + mult
        if bucket:
            coeffs[e] = bucket
    return GradedSeries(alphabet, series.order, coeffs, series.shift)
