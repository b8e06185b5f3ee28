"""The relative semi-infinite wedge: the ghost Fock space of phi_i and phi*_i.

phi_i(z) = sum phi_{i,n} z^{-n-1} and phi*_i(z) = sum phi*_{i,n} z^{-n}
have the parity opposite to x_i and [phi_{i,m}, phi*_{j,n}] = delta_ij
delta_{m+n,0}. The relative subspace is generated from the vacuum by
phi_{i,-n} and phi*_{i,-n} with n >= 1 (the derivatives of phi*_i together
with phi_i); phi*_{i,0} never appears, so phi_{i,0} acts by zero.
Degrees: phi* counts +1 and phi counts -1; both creators phi_{i,-n} and
phi*_{i,-n} carry conformal weight n.
"""
from typing import Dict, List, Sequence, Tuple

from src.algebra.pbw import ANNIHILATE, CREATE, PBWModule
from src.algebra.roots import vadd
from src.series.level import LEVEL_FIELD
from src.utils.errors import ComplexError
from .affine_modules import creator_monomials

PHI, PHI_STAR = "b", "c"

GhostMode = Tuple[str, int, int]


class GhostFock:
    """Ghost monomials for an algebra with the given parities and epsilon weights."""

    def __init__(self, parities: Sequence[int], weights: Sequence[Tuple], depth: int):
        self.parities = list(parities)
        self.weights = list(weights)
        self.depth = depth
        self._creators = []
        for n in range(1, depth + 1):
            for i in range(len(self.parities)):
                self._creators.append(((PHI_STAR, i, -n), n, self.ghost_parity(i)))
                self._creators.append(((PHI, i, -n), n, self.ghost_parity(i)))
        rank_of = {key: a for a, (key, _, _) in enumerate(self._creators)}
        self.engine = PBWModule(
            kind=self._kind,
            parity=lambda mode: self.ghost_parity(mode[1]),
            order=lambda mode: rank_of.get(mode, -1),
            bracket=self._bracket,
            one=LEVEL_FIELD.one,
        )

    def ghost_parity(self, i: int) -> int:
        return (self.parities[i] + 1) % 2

    @staticmethod
    def _kind(mode: GhostMode) -> str:
        kind, _, n = mode
        if kind == PHI_STAR and n == 0:
            raise ComplexError("phi*_{i,0} lies outside the relative subcomplex")
        return CREATE if n < 0 else ANNIHILATE

    def _bracket(self, a: GhostMode, b: GhostMode):
        if a[1] != b[1] or a[2] + b[2] != 0 or a[0] == b[0]:
            return {}, 0
        if a[0] == PHI:
            return {}, 1
        # [phi*, phi] = -(-1)^{p p} [phi, phi*]
        return {}, 1 if self.ghost_parity(a[1]) else -1

    # --- monomials ---
    def monomials(self, weight: int) -> List[Tuple]:
        return creator_monomials(self._creators, weight)

    @staticmethod
    def degree(mono: Tuple) -> int:
        return sum(1 if kind == PHI_STAR else -1 for kind, _, _ in mono)

    @staticmethod
    def conformal_weight(mono: Tuple) -> int:
        return -sum(n for _, _, n in mono)

    def parity(self, mono: Tuple) -> int:
        return self.engine.monomial_parity(mono)

    def weight(self, mono: Tuple, zero: Tuple) -> Tuple:
        """phi_k carries the weight of x_k, phi*_j its negative."""
        w = zero
        for kind, i, _ in mono:
            w = vadd(w, self.weights[i], 1 if kind == PHI else -1)
        return w

    def act(self, mode: GhostMode, mono: Tuple) -> Dict[Tuple, object]:
        return {m2: c for (m2, _), c in self.engine.act_state(mode, mono, 0).items()}

    def supercharacter_terms(self, weight: int, zero: Tuple) -> Dict[Tuple, int]:
        """epsilon weight -> sum of (-1)^degree over monomials of the given conformal weight."""
        out: Dict[Tuple, int] = {}
        for mono in self.monomials(weight):
            key = self.weight(mono, zero)
            out[key] = out.get(key, 0) + (-1) ** (self.degree(mono) % 2)
        return {key: v for key, v in out.items() if v}

    def label(self, mono: Tuple, labels: Sequence[str]) -> str:
        names = {PHI: "phi", PHI_STAR: "phi*"}
        return " ".join(f"{names[kind]}[{labels[i]}]({n})" for kind, i, n in mono) or "1"
