"""Root data in epsilon coordinates.

Weights are handled in two coordinate systems: epsilon coordinates (tuples of
rationals, the diagonal-Cartan coordinates of the matrix realization) and
fundamental coordinates (integer tuples, one per fundamental weight). The
invariant form on epsilon space is the restriction of kappa_0.
"""
from collections import deque
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

from sympy import QQ

from src.utils.errors import WeightError
from .ids import AlgebraId, Family

Vector = Tuple


def _unit(d: int, i: int, scale=1) -> Vector:
    return tuple(QQ(scale) if j == i else QQ(0) for j in range(d))


def vadd(a: Vector, b: Vector, scale=1) -> Vector:
    return tuple(x + scale * y for x, y in zip(a, b))


def vscale(a: Vector, scale) -> Vector:
    return tuple(scale * x for x in a)


class RootDatum:
    """Roots, fundamental weights, rho and the Weyl group of a supported algebra."""

    def __init__(self, algebra: AlgebraId):
        self.algebra = algebra
        self.family = algebra.family
        self.m = algebra.m
        self.eps_dim = self.m
        self.positive_roots: List[Tuple[Vector, int]] = self._positive_roots()
        self.simple_roots: List[Tuple[Vector, int]] = self._simple_roots()
        self.even_simple_roots: List[Vector] = self._even_simple_roots()
        self.fundamental_weights: List[Vector] = self._fundamental_weights()
        self.rho: Vector = self._half_sum(super_signs=True)
        self.rho_even: Vector = self._half_sum(super_signs=False, even_only=True)
        self.longest_element: List[int] = self._longest_word()

    # --- form ---
    def inner(self, u: Vector, v: Vector):
        dot = sum((a * b for a, b in zip(u, v)), QQ.zero)
        if self.family == Family.SL:
            return dot - sum(u, QQ.zero) * sum(v, QQ.zero) / self.m
        if self.family in (Family.SP, Family.OSP_1_2M):
            return dot / 2
        return dot

    def norm2(self, v: Vector):
        return self.inner(v, v)

    # --- roots ---
    def _positive_roots(self) -> List[Tuple[Vector, int]]:
        d, fam = self.eps_dim, self.family
        roots = []
        for i in range(d):
            for j in range(i + 1, d):
                roots.append((vadd(_unit(d, i), _unit(d, j), -1), 0))
                if fam not in (Family.GL, Family.SL):
                    roots.append((vadd(_unit(d, i), _unit(d, j)), 0))
        for i in range(d):
            if fam == Family.SO_ODD:
                roots.append((_unit(d, i), 0))
            elif fam == Family.SP:
                roots.append((_unit(d, i, 2), 0))
            elif fam == Family.OSP_1_2M:
                roots.append((_unit(d, i, 2), 0))
                roots.append((_unit(d, i), 1))
        return roots

    @cached_property
    def reduced_positive_roots(self) -> List[Tuple[Vector, int]]:
        """Positive roots that are not twice an odd root."""
        odd = {r for r, p in self.positive_roots if p}
        return [(r, p) for r, p in self.positive_roots if not (p == 0 and vscale(r, QQ(1, 2)) in odd)]

    def _simple_roots(self) -> List[Tuple[Vector, int]]:
        d, fam = self.eps_dim, self.family
        simple = [(vadd(_unit(d, i), _unit(d, i + 1), -1), 0) for i in range(d - 1)]
        if fam == Family.SO_ODD:
            simple.append((_unit(d, d - 1), 0))
        elif fam == Family.SO_EVEN and d >= 2:
            simple.append((vadd(_unit(d, d - 2), _unit(d, d - 1)), 0))
        elif fam == Family.SP:
            simple.append((_unit(d, d - 1, 2), 0))
        elif fam == Family.OSP_1_2M:
            simple.append((_unit(d, d - 1), 1))
        return simple

    def _even_simple_roots(self) -> List[Vector]:
        out = []
        for root, parity in self.simple_roots:
            out.append(vscale(root, 2) if parity else root)
        return out

    def _half_sum(self, super_signs: bool, even_only: bool = False) -> Vector:
        total = tuple(QQ(0) for _ in range(self.eps_dim))
        for root, parity in self.positive_roots:
            if parity and even_only:
                continue
            total = vadd(total, root, -1 if (parity and super_signs) else 1)
        return vscale(total, QQ(1, 2))

    @cached_property
    def height_vector(self) -> Vector:
        """A strictly dominant vector; (v | height_vector) orders weights."""
        return tuple(QQ(self.eps_dim - i) for i in range(self.eps_dim))

    def height(self, v: Vector):
        return sum((a * b for a, b in zip(v, self.height_vector)), QQ.zero)

    # --- coordinates ---
    def _fundamental_weights(self) -> List[Vector]:
        d, fam = self.eps_dim, self.family
        partial = lambda i: tuple(QQ(1) if j < i else QQ(0) for j in range(d))
        ones = tuple(QQ(1) for _ in range(d))
        if fam in (Family.SL, Family.GL):
            out = [vadd(partial(i), ones, -QQ(i, d)) for i in range(1, d)]
            if fam == Family.GL:
                out.append(vscale(ones, QQ(1, d)))
            return out
        if fam == Family.SO_ODD:
            return [partial(i) for i in range(1, d)] + [vscale(ones, QQ(1, 2))]
        if fam == Family.SO_EVEN:
            if d == 1:
                return [(QQ(1, 2),)]
            spin_minus = vscale(vadd(partial(d - 1), _unit(d, d - 1), -1), QQ(1, 2))
            return [partial(i) for i in range(1, d - 1)] + [spin_minus, vscale(ones, QQ(1, 2))]
        return [partial(i) for i in range(1, d + 1)]

    def to_eps(self, coords: Sequence[int]) -> Vector:
        if len(coords) != len(self.fundamental_weights):
            raise WeightError(f"{self.algebra.label} weights have {len(self.fundamental_weights)} coordinates, got {list(coords)}")
        total = tuple(QQ(0) for _ in range(self.eps_dim))
        for a, w in zip(coords, self.fundamental_weights):
            if a:
                total = vadd(total, w, a)
        return total

    def from_eps(self, v: Vector) -> Tuple[int, ...]:
        """Fundamental coordinates of an epsilon vector (must be integral)."""
        coords = [2 * self.inner(v, a) / self.inner(a, a) for a in self.even_simple_roots]
        if self.family == Family.GL:
            coords.append(sum(v, QQ.zero))
        elif self.family == Family.SO_EVEN and self.m == 1:
            coords.append(2 * v[0])
        out = []
        for c in coords:
            if QQ(c).denominator != 1:
                raise WeightError(f"Vector {tuple(str(x) for x in v)} is not an integral weight of {self.algebra.label}")
            out.append(int(QQ(c).numerator))
        return tuple(out)

    def canonical(self, v: Vector) -> Vector:
        """Representative of v on the weight space (sum zero for sl)."""
        v = tuple(QQ(x) for x in v)
        if self.family == Family.SL:
            mean = sum(v, QQ.zero) / self.m
            return tuple(x - mean for x in v)
        return v

    # --- Weyl group ---
    def reflect(self, v: Vector, i: int) -> Vector:
        a = self.even_simple_roots[i]
        return vadd(v, a, -2 * self.inner(v, a) / self.inner(a, a))

    def apply_word(self, word: Sequence[int], v: Vector) -> Vector:
        for i in reversed(word):
            v = self.reflect(v, i)
        return v

    def is_dominant_eps(self, v: Vector) -> bool:
        return all(self.inner(v, a) >= 0 for a in self.even_simple_roots)

    def dominant_representative(self, v: Vector) -> Vector:
        v = self.canonical(v)
        changed = True
        while changed:
            changed = False
            for i, a in enumerate(self.even_simple_roots):
                if self.inner(v, a) < 0:
                    v = self.reflect(v, i)
                    changed = True
        return v

    def _longest_word(self) -> List[int]:
        v = vscale(self.rho_even, -1)
        word = []
        changed = True
        while changed:
            changed = False
            for i, a in enumerate(self.even_simple_roots):
                if self.inner(v, a) < 0:
                    v = self.reflect(v, i)
                    word.append(i)
                    changed = True
                    break
        return word

    def longest(self, v: Vector) -> Vector:
        return self.apply_word(self.longest_element, v)

    def orbit(self, v: Vector) -> List[Vector]:
        v = self.canonical(v)
        seen = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for i in range(len(self.even_simple_roots)):
                w = self.reflect(u, i)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return sorted(seen, key=lambda w: (-self.height(w), w))

    @cached_property
    def weyl_order(self) -> int:
        return len(self.orbit(self.rho_even))

    def coroot_pairings(self, v: Vector) -> Dict[int, object]:
        return {i: 2 * self.inner(v, a) / self.inner(a, a) for i, a in enumerate(self.even_simple_roots)}

    def highest_root(self) -> Vector:
        even = [r for r, p in self.positive_roots if p == 0]
        return max(even, key=self.height)
