"""Infinite products truncated to a GradedSeries.

Every factor has the form (1 - x)^{-1} or (1 + x) with x = sigma^p z^w q^d,
d > 0, so a product is exact up to the requested order.
"""
from typing import Iterable, Optional, Sequence, Tuple

from sympy import QQ

from src.algebra.ids import AlgebraId
from src.algebra.roots import RootDatum
from .graded import GradedSeries


def embed_weight(alphabet: Tuple, slot: int, weight: Sequence[int]) -> Tuple:
    """Places a weight of the slot-th alphabet block into the full alphabet."""
    out = []
    for n, (_, width) in enumerate(alphabet):
        if n == slot:
            if len(weight) != width:
                raise ValueError(f"weight {tuple(weight)} does not fit block {alphabet[n]}")
            out.extend(weight)
        else:
            out.extend([0] * width)
    return tuple(out)


def _scaled_weight(weight: Tuple, j: int) -> Tuple:
    return tuple(j * w for w in weight)


def geometric_factor(alphabet: Tuple, order: int, doubled: int, weight: Tuple, parity: int,
                     sign: int = 1) -> GradedSeries:
    """sum_j (sign * x)^j with x = sigma^parity z^weight q^(doubled/2)."""
    if doubled <= 0:
        raise ValueError("factor exponents must be positive")
    coeffs = {}
    j = 0
    while j * doubled <= order:
        coeffs[j * doubled] = {(_scaled_weight(weight, j), (j * parity) % 2): QQ(sign) ** j}
        j += 1
    return GradedSeries(alphabet, order, coeffs)


def linear_factor(alphabet: Tuple, order: int, doubled: int, weight: Tuple, parity: int,
                  sign: int = 1) -> GradedSeries:
    """1 + sign * x."""
    one = GradedSeries.one(alphabet, order)
    if doubled > order:
        return one
    return one + GradedSeries.monomial(alphabet, order, doubled, weight, parity, sign)


def boson_factor(alphabet: Tuple, order: int, doubled: int, weight: Tuple) -> GradedSeries:
    """(1 - z^w q^d)^{-1}."""
    return geometric_factor(alphabet, order, doubled, weight, 0)


def fermion_factor(alphabet: Tuple, order: int, doubled: int, weight: Tuple) -> GradedSeries:
    """(1 + sigma z^w q^d)."""
    return linear_factor(alphabet, order, doubled, weight, 1)


def free_field_factor(alphabet: Tuple, order: int, doubled_delta: int, weight: Tuple, parity: int) -> GradedSeries:
    """Character of one free strong generator of weight delta and its derivatives."""
    result = GradedSeries.one(alphabet, order)
    d = doubled_delta
    while d <= order:
        if parity:
            result = result * fermion_factor(alphabet, order, d, weight)
        else:
            result = result * boson_factor(alphabet, order, d, weight)
        d += 2
    return result


def pbw_series(alphabet: Tuple, order: int, generators: Iterable[Tuple[Tuple, int]]) -> GradedSeries:
    """Character of U(t^-1 g[t^-1]) for generators given as (weight, parity) of g."""
    result = GradedSeries.one(alphabet, order)
    for weight, parity in generators:
        result = result * free_field_factor(alphabet, order, 2, weight, parity)
    return result


def algebra_generators(algebra: AlgebraId, roots: Optional[RootDatum] = None):
    """(fundamental weight, parity) of a homogeneous basis: Cartan part plus both signs of every root."""
    roots = roots or RootDatum(algebra)
    zero = tuple(0 for _ in range(algebra.rank))
    gens = [(zero, 0)] * algebra.rank
    for root, parity in roots.positive_roots:
        w = roots.from_eps(root)
        gens.append((w, parity))
        gens.append((tuple(-x for x in w), parity))
    return gens


def loop_minus_series(algebra: AlgebraId, order: int, alphabet: Optional[Tuple] = None, slot: int = 0) -> GradedSeries:
    """1/Pi(z, q): the PBW character of the negative loop algebra."""
    alphabet = alphabet or (algebra.alphabet_block,)
    gens = [(embed_weight(alphabet, slot, w), p) for w, p in algebra_generators(algebra)]
    return pbw_series(alphabet, order, gens)


def eta_like_product(algebra: AlgebraId, order: int, alphabet: Optional[Tuple] = None, slot: int = 0) -> GradedSeries:
    """Pi(z, q) = prod_n (1-q^n)^rank prod_alpha (1 - z^alpha q^n)^{+-1}.

    Even roots contribute (1 - z^alpha q^n), odd roots (1 + sigma z^alpha q^n)^{-1};
    the supercharacter specialization is the product whose square is the
    supercharacter of the relative semi-infinite wedge.
    """
    alphabet = alphabet or (algebra.alphabet_block,)
    result = GradedSeries.one(alphabet, order)
    for weight, parity in algebra_generators(algebra):
        w = embed_weight(alphabet, slot, weight)
        for d in range(2, order + 1, 2):
            if parity:
                result = result * geometric_factor(alphabet, order, d, w, 1, sign=-1)
            else:
                result = result * linear_factor(alphabet, order, d, w, 0, sign=-1)
    return result


def heisenberg_series(alphabet: Tuple, order: int, copies: int = 1) -> GradedSeries:
    """prod_n (1 - q^n)^{-copies}."""
    zero = GradedSeries.zero_weight(alphabet)
    result = GradedSeries.one(alphabet, order)
    for _ in range(copies):
        result = result * free_field_factor(alphabet, order, 2, zero, 0)
    return result
