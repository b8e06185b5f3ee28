"""PBW straightening for induced modules of Lie superalgebras.

A module is described by its generating keys: creators build the PBW
monomials, zero modes act on a finite-dimensional top space and annihilators
kill the top. Verma modules, Weyl modules, tensor products of Weyl modules and
U(g) itself are all instances.
"""
from typing import Callable, Dict, Hashable, Tuple

from sympy import QQ

Monomial = Tuple
State = Tuple[Monomial, int]
Vector = Dict[State, object]

CREATE, ZERO, ANNIHILATE = "create", "zero", "annihilate"


def vec_add(target: Dict, source: Dict, scale=1):
    for key, v in source.items():
        w = target.get(key)
        new = v * scale if w is None else w + v * scale
        if new:
            target[key] = new
        else:
            target.pop(key, None)
    return target


class PBWModule:
    """Straightening engine for one induced module.

    Arguments:
      kind(key)        -> CREATE, ZERO or ANNIHILATE
      parity(key)      -> 0 or 1
      order(key)       -> sort key of creators inside monomials
      bracket(a, b)    -> ({key: coefficient}, central scalar)
      top_action(key, t) -> {t': coefficient} for zero modes on the top space
    """

    def __init__(self, kind: Callable, parity: Callable, order: Callable, bracket: Callable,
                 top_action: Callable = None, one=QQ.one):
        self.kind = kind
        self.parity = parity
        self.order = order
        self.bracket = bracket
        self.top_action = top_action or (lambda key, t: {})
        self.one = one
        self._create_cache: Dict[Tuple[Hashable, Monomial], Dict[Monomial, object]] = {}
        self._act_cache: Dict[Tuple[Hashable, Monomial, int], Vector] = {}

    def monomial_parity(self, mono: Monomial) -> int:
        return sum(self.parity(y) for y in mono) % 2

    # --- creators ---
    def create_monomial(self, y, mono: Monomial) -> Dict[Monomial, object]:
        """y * mono straightened into sorted monomials."""
        cache_key = (y, mono)
        hit = self._create_cache.get(cache_key)
        if hit is not None:
            return hit
        out: Dict[Monomial, object] = {}
        if not mono or self.order(y) < self.order(mono[0]):
            out[(y,) + mono] = self.one
        elif y == mono[0]:
            if self.parity(y):
                # y*y = [y, y]/2 for odd y
                terms, central = self.bracket(y, y)
                for key, c in terms.items():
                    vec_add(out, self.create_monomial(key, mono[1:]), c * QQ(1, 2))
                if central:
                    vec_add(out, {mono[1:]: self.one}, central * QQ(1, 2))
            else:
                out[(y,) + mono] = self.one
        else:
            z, rest = mono[0], mono[1:]
            sign = -1 if self.parity(y) and self.parity(z) else 1
            for m2, c in self.create_monomial(y, rest).items():
                vec_add(out, self.create_monomial(z, m2), c * sign)
            terms, central = self.bracket(y, z)
            for key, c in terms.items():
                vec_add(out, self.create_monomial(key, rest), c)
            if central:
                vec_add(out, {rest: self.one}, central)
        self._create_cache[cache_key] = out
        return out

    # --- general action ---
    def act_state(self, x, mono: Monomial, top: int) -> Vector:
        cache_key = (x, mono, top)
        hit = self._act_cache.get(cache_key)
        if hit is not None:
            return hit
        out: Vector = {}
        kind = self.kind(x)
        if kind == CREATE:
            for m2, c in self.create_monomial(x, mono).items():
                out[(m2, top)] = c
        elif not mono:
            if kind == ZERO:
                for t2, c in self.top_action(x, top).items():
                    if c:
                        out[((), t2)] = c
        else:
            y, rest = mono[0], mono[1:]
            terms, central = self.bracket(x, y)
            for key, c in terms.items():
                vec_add(out, self.act_state(key, rest, top), c)
            if central:
                vec_add(out, {(rest, top): self.one}, central)
            sign = -1 if self.parity(x) and self.parity(y) else 1
            for (m2, t2), c in self.act_state(x, rest, top).items():
                for m3, c3 in self.create_monomial(y, m2).items():
                    vec_add(out, {(m3, t2): c * c3}, sign)
        self._act_cache[cache_key] = out
        return out

    def act(self, x, vector: Vector) -> Vector:
        out: Vector = {}
        for (mono, top), c in vector.items():
            vec_add(out, self.act_state(x, mono, top), c)
        return out

    def act_word(self, word, vector: Vector) -> Vector:
        """Applies word[-1] first, word[0] last."""
        for x in reversed(word):
            vector = self.act(x, vector)
            if not vector:
                break
        return vector
