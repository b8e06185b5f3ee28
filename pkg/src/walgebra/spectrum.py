"""Free strong generators of hook-type W-superalgebras and their vacuum characters.

The generating type is W(1^{dim b}, e_1, ..., e_{rank a}, Delta_rho^{dim rho}):
currents of b, coset generators at the shifted exponents of a, and the
primary multiplet rho_b (together with its dual for type A).
"""
from dataclasses import dataclass
from typing import Dict, List, Tuple

from sympy import QQ

from src.algebra.ids import AlgebraId, Family
from src.reps.characters import character
from src.reps.weights import dual_weight, natural_weight
from src.series.graded import GradedSeries
from src.series.products import algebra_generators, free_field_factor
from src.utils.errors import IdentityError, UnsupportedAlgebraError
from .tables import HookLabel

AFFINE, COSET, PRIMARY = "affine", "coset", "primary"


def shifted_exponents(algebra: AlgebraId) -> List[int]:
    """Exponents of a shifted by one; their weights 2e - 1 add up to dim a."""
    N = algebra.rank
    family = algebra.family
    if family == Family.SL:
        exps = list(range(2, algebra.m + 1))
    elif family in (Family.SO_ODD, Family.SP):
        exps = [2 * i for i in range(1, N + 1)]
    elif family == Family.SO_EVEN:
        exps = [2 * i for i in range(1, N)] + ([N] if N >= 2 else [])
    else:
        raise UnsupportedAlgebraError(f"No exponent list for {algebra.label}")
    if sum(2 * e - 1 for e in exps) != algebra.dimension:
        raise IdentityError(f"Shifted exponents {exps} of {algebra.label} do not account for dim = {algebra.dimension}")
    return exps


@dataclass(frozen=True)
class Generator:
    delta: object
    weight: Tuple[int, ...]
    parity: int
    block: str

    @property
    def doubled_delta(self) -> int:
        twice = QQ.convert(self.delta) * 2
        if twice.denominator != 1:
            raise IdentityError(f"Generator weight {self.delta} is not a half-integer")
        return int(twice.numerator)


@dataclass
class GeneratorSpectrum:
    label: HookLabel
    affine_block: List[Generator]
    coset_block: List[Generator]
    primary_block: List[Generator]

    @property
    def generators(self) -> List[Generator]:
        return self.affine_block + self.coset_block + self.primary_block

    @property
    def has_conformal_coset(self) -> bool:
        """A weight-2 coset generator is the conformal vector of the coset."""
        return any(g.delta == 2 for g in self.coset_block)

    def check_counts(self) -> Dict:
        label = self.label
        b = label.b_algebra
        natural_dim = character(natural_weight(b)).dimension()
        expected_primary = natural_dim * (2 if label.primary.with_dual else 1)
        if len(self.affine_block) != b.dimension:
            raise IdentityError(f"{label}: {len(self.affine_block)} currents for dim {b.label} = {b.dimension}")
        if len(self.primary_block) != expected_primary:
            raise IdentityError(f"{label}: {len(self.primary_block)} primary generators, expected {expected_primary}")
        coset_total = sum(2 * QQ.convert(g.delta) - 1 for g in self.coset_block)
        if coset_total != label.a_algebra.dimension:
            raise IdentityError(f"{label}: coset weights sum to {coset_total}, dim a = {label.a_algebra.dimension}")
        return {
            "affine": len(self.affine_block),
            "coset": [str(g.delta) for g in self.coset_block],
            "primary": len(self.primary_block),
            "delta_rho": str(label.delta_rho),
        }

    def to_json(self) -> Dict:
        return {
            "label": str(self.label),
            "b": self.label.b_algebra.label,
            "generators": [
                {"block": g.block, "delta": str(g.delta), "weight": list(g.weight), "parity": g.parity}
                for g in self.generators
            ],
        }


def _primary_weights(label: HookLabel):
    b = label.b_algebra
    lam = natural_weight(b)
    chars = [character(lam)]
    if label.primary.with_dual:
        chars.append(character(dual_weight(lam)))
    for char in chars:
        for (w, p), c in sorted(char.parts.items()):
            for _ in range(int(c)):
                yield w, (p + label.primary_hw_parity) % 2


def generator_spectrum(label: HookLabel) -> GeneratorSpectrum:
    b = label.b_algebra
    affine = [Generator(QQ(1), tuple(w), p, AFFINE) for w, p in algebra_generators(b)]
    zero = tuple(0 for _ in range(b.rank))
    a = label.a_algebra
    coset = [Generator(QQ(e), zero, 0, COSET) for e in shifted_exponents(a)]
    primary = [Generator(label.delta_rho, tuple(w), p, PRIMARY) for w, p in _primary_weights(label)]
    return GeneratorSpectrum(label, affine, coset, primary)


def vacuum_char(label: HookLabel, order: int) -> GradedSeries:
    """ch W_{X+-}(n, m) in the z-alphabet of b, truncated at q^(order/2)."""
    alphabet = (label.b_algebra.alphabet_block,)
    result = GradedSeries.one(alphabet, order)
    for g in generator_spectrum(label).generators:
        result = result * free_field_factor(alphabet, order, g.doubled_delta, g.weight, g.parity)
    return result
