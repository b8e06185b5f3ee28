"""Truncated q^(1/2)-series with weight- and parity-graded coefficients.

Conformal exponents are stored doubled (integers). A coefficient at a given
exponent maps ``(weight, parity)`` to an exact multiplicity, where ``weight``
is a tuple of coordinates in the series' alphabet (one block per z-variable
family) and ``parity`` is 0 or 1. The parity grading is a formal sign
variable with square one: the character sets it to +1, the supercharacter to
-1.
"""
from collections import defaultdict
from typing import Callable, Dict, Iterable, Optional, Tuple

from sympy import QQ

from src.utils.errors import HookdualError, LevelDependenceError, TruncationError
from .level import ExponentShift

Key = Tuple[Tuple, int]


def _add_weights(a: Tuple, b: Tuple) -> Tuple:
    return tuple(x + y for x, y in zip(a, b))


class GradedSeries:
    """Series sum_{e <= order} q^{(shift + e/2)} sum c(e, w, p) z^w sigma^p."""

    def __init__(self, alphabet: Tuple, order: int, coeffs: Optional[Dict[int, Dict[Key, object]]] = None,
                 shift: Optional[ExponentShift] = None):
        self.alphabet = tuple(alphabet)
        self.order = int(order)
        self.shift = shift if shift is not None else ExponentShift.zero()
        self.coeffs: Dict[int, Dict[Key, object]] = {}
        for e, terms in (coeffs or {}).items():
            if e > self.order:
                continue
            cleaned = {key: c for key, c in terms.items() if c}
            if cleaned:
                self.coeffs[e] = cleaned

    # --- constructors ---
    @classmethod
    def zero_weight(cls, alphabet: Tuple) -> Tuple:
        return tuple(0 for _ in range(cls.alphabet_width(alphabet)))

    @staticmethod
    def alphabet_width(alphabet: Tuple) -> int:
        return sum(int(block[1]) for block in alphabet)

    @classmethod
    def one(cls, alphabet: Tuple, order: int) -> "GradedSeries":
        return cls.monomial(alphabet, order, 0, cls.zero_weight(alphabet))

    @classmethod
    def zero(cls, alphabet: Tuple, order: int) -> "GradedSeries":
        return cls(alphabet, order)

    @classmethod
    def monomial(cls, alphabet: Tuple, order: int, exponent: int, weight: Tuple,
                 parity: int = 0, coeff=1) -> "GradedSeries":
        return cls(alphabet, order, {exponent: {(tuple(weight), parity % 2): QQ.convert(coeff) if isinstance(coeff, int) else coeff}})

    # --- inspection ---
    def valuation(self) -> int:
        """Lowest exponent with a nonzero coefficient (the order itself for zero)."""
        return min(self.coeffs) if self.coeffs else self.order

    def coefficient(self, exponent: int) -> Dict[Key, object]:
        if exponent > self.order:
            raise TruncationError(f"Coefficient at q^({exponent}/2) requested, series is only valid up to q^({self.order}/2)")
        return dict(self.coeffs.get(exponent, {}))

    def character(self, exponent: int) -> Dict[Tuple, object]:
        """Plain character at one exponent: even + odd parts."""
        out = defaultdict(lambda: QQ.zero)
        for (w, _), c in self.coefficient(exponent).items():
            out[w] += c
        return {w: c for w, c in out.items() if c}

    def supercharacter(self, exponent: int) -> Dict[Tuple, object]:
        """Supercharacter at one exponent: even - odd parts."""
        out = defaultdict(lambda: QQ.zero)
        for (w, p), c in self.coefficient(exponent).items():
            out[w] += -c if p else c
        return {w: c for w, c in out.items() if c}

    def exponents(self) -> Iterable[int]:
        return sorted(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    # --- arithmetic ---
    def _check_compatible(self, other: "GradedSeries"):
        if self.alphabet != other.alphabet:
            raise HookdualError(f"Incompatible weight lattices: {self.alphabet} vs {other.alphabet}")

    def _aligned(self, other: "GradedSeries") -> Tuple["GradedSeries", "GradedSeries"]:
        """Brings two series to a common global shift by moving rational differences into exponents."""
        if self.shift == other.shift:
            return self, other
        diff = other.shift - self.shift
        if not diff.is_level_free():
            raise LevelDependenceError(f"Cannot add series with shifts {self.shift} and {other.shift}")
        d = diff.doubled()
        if d >= 0:
            return self, other.shifted(d, ExponentShift(self.shift.value))
        return self.shifted(-d, ExponentShift(other.shift.value)), other

    def shifted(self, doubled: int, new_shift: Optional[ExponentShift] = None) -> "GradedSeries":
        """Multiplies by q^(doubled/2); optionally rebases the global shift."""
        coeffs = {e + doubled: dict(t) for e, t in self.coeffs.items()}
        return GradedSeries(self.alphabet, self.order + doubled, coeffs,
                            new_shift if new_shift is not None else self.shift)

    def with_shift(self, shift: ExponentShift) -> "GradedSeries":
        return GradedSeries(self.alphabet, self.order, self.coeffs, shift)

    def normalized(self) -> "GradedSeries":
        """Moves a level-free global shift into the exponents."""
        if not self.shift.is_level_free():
            return self
        return self.shifted(self.shift.doubled(), ExponentShift.zero())

    def truncated(self, order: int) -> "GradedSeries":
        if order > self.order:
            raise TruncationError(f"Cannot extend a series valid up to q^({self.order}/2) to q^({order}/2)")
        return GradedSeries(self.alphabet, order, self.coeffs, self.shift)

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        self._check_compatible(other)
        a, b = self._aligned(other)
        order = min(a.order, b.order)
        coeffs: Dict[int, Dict[Key, object]] = defaultdict(dict)
        for src in (a, b):
            for e, terms in src.coeffs.items():
                if e > order:
                    continue
                bucket = coeffs[e]
                for key, c in terms.items():
                    bucket[key] = bucket.get(key, QQ.zero) + c
        return GradedSeries(self.alphabet, order, coeffs, a.shift)

    def __neg__(self) -> "GradedSeries":
        return self.scaled(-1)

    def __sub__(self, other: "GradedSeries") -> "GradedSeries":
        return self + (-other)

    def scaled(self, factor) -> "GradedSeries":
        coeffs = {e: {key: c * factor for key, c in t.items()} for e, t in self.coeffs.items()}
        return GradedSeries(self.alphabet, self.order, coeffs, self.shift)

    def __mul__(self, other: "GradedSeries") -> "GradedSeries":
        return series_mul(self, other)

    def map_keys(self, fn: Callable[[Tuple, int], Tuple[Tuple, int]], alphabet: Optional[Tuple] = None) -> "GradedSeries":
        """Relabels (weight, parity) keys, e.g. to change coordinates or flip parity."""
        coeffs: Dict[int, Dict[Key, object]] = {}
        for e, terms in self.coeffs.items():
            bucket: Dict[Key, object] = {}
            for (w, p), c in terms.items():
                new_key = fn(w, p)
                bucket[new_key] = bucket.get(new_key, QQ.zero) + c
            coeffs[e] = bucket
        return GradedSeries(alphabet if alphabet is not None else self.alphabet, self.order, coeffs, self.shift)

    def tensor(self, other: "GradedSeries") -> "GradedSeries":
        """Product of series in different alphabets (weights concatenate)."""
        left = self.map_keys(lambda w, p: (w + GradedSeries.zero_weight(other.alphabet), p),
                             self.alphabet + other.alphabet)
        right = other.map_keys(lambda w, p: (GradedSeries.zero_weight(self.alphabet) + w, p),
                               self.alphabet + other.alphabet)
        return series_mul(left, right)

    def equals(self, other: "GradedSeries", order: Optional[int] = None) -> bool:
        return first_difference(self, other, order) is None

    def to_json(self) -> Dict:
        from src.utils.exact import format_half, to_jsonable
        return {
            "alphabet": [list(b) for b in self.alphabet],
            "order": format_half(self.order),
            "shift": self.shift.to_json(),
            "coefficients": [
                {
                    "exponent": format_half(e),
                    "terms": [
                        {"weight": list(w), "parity": p, "multiplicity": to_jsonable(c)}
                        for (w, p), c in sorted(self.coeffs[e].items(), key=lambda item: (item[0][1], item[0][0]))
                    ],
                }
                for e in sorted(self.coeffs)
            ],
        }

    def __repr__(self) -> str:
        return f"GradedSeries(alphabet={self.alphabet}, order={self.order}/2, terms={sum(len(t) for t in self.coeffs.values())})"


def series_mul(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    """Exact convolution; the result is valid up to the order both factors guarantee."""
    a._check_compatible(b)
    order = min(a.order + b.valuation(), b.order + a.valuation())
    coeffs: Dict[int, Dict[Key, object]] = defaultdict(dict)
    for ea, ta in a.coeffs.items():
        for eb, tb in b.coeffs.items():
            e = ea + eb
            if e > order:
                continue
            bucket = coeffs[e]
            for (wa, pa), ca in ta.items():
                for (wb, pb), cb in tb.items():
                    key = (_add_weights(wa, wb), (pa + pb) % 2)
                    bucket[key] = bucket.get(key, QQ.zero) + ca * cb
    return GradedSeries(a.alphabet, order, coeffs, a.shift + b.shift)


def first_difference(a: GradedSeries, b: GradedSeries, order: Optional[int] = None):
    """First (exponent, key, lhs, rhs) where two series differ, or None."""
    a._check_compatible(b)
    a, b = a._aligned(b)
    limit = min(a.order, b.order) if order is None else order
    exponents = sorted(set(a.coeffs) | set(b.coeffs))
    for e in exponents:
        if e > limit:
            break
        ta, tb = a.coefficient(e), b.coefficient(e)
        for key in sorted(set(ta) | set(tb), key=lambda item: (item[1], item[0])):
            lhs, rhs = ta.get(key, QQ.zero), tb.get(key, QQ.zero)
            if lhs != rhs:
                return e, key, lhs, rhs
    if limit > min(a.order, b.order):
        raise TruncationError(f"Comparison up to q^({limit}/2) exceeds the valid orders {a.order}/2, {b.order}/2")
    return None
