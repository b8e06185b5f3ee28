"""Characters of finite-dimensional simple modules.

Dominant multiplicities come from the Freudenthal recursion run over all
positive roots; for osp(1|2m) odd roots enter with alternating signs, which
reproduces the so(2m+1) character of the same epsilon vector. Weight spaces
of osp(1|2m) modules are parity-homogeneous: the highest weight vector is
even and odd root vectors flip parity.
"""
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from sympy import QQ

from src.algebra.ids import AlgebraId, Family
from src.algebra.roots import vadd
from src.utils.errors import HookdualError, NegativeMultiplicityError, NonInvariantError
from .weights import Weight, dual_weight, root_datum

Key = Tuple[Tuple[int, ...], int]


@dataclass
class FiniteChar:
    """Finitely supported map (weight coordinates, parity) -> multiplicity."""
    algebra: AlgebraId
    parts: Dict[Key, object] = field(default_factory=dict)

    def __post_init__(self):
        self.parts = {key: c for key, c in self.parts.items() if c}

    @property
    def terms(self) -> Dict[Tuple[int, ...], object]:
        out = defaultdict(int)
        for (w, _), c in self.parts.items():
            out[w] += c
        return {w: c for w, c in out.items() if c}

    @property
    def parity_split(self) -> Dict[Tuple[int, ...], Tuple[object, object]]:
        out: Dict[Tuple[int, ...], List] = {}
        for (w, p), c in self.parts.items():
            out.setdefault(w, [0, 0])[p] += c
        return {w: (v[0], v[1]) for w, v in out.items()}

    def superterms(self) -> Dict[Tuple[int, ...], object]:
        out = defaultdict(int)
        for (w, p), c in self.parts.items():
            out[w] += -c if p else c
        return {w: c for w, c in out.items() if c}

    def dimension(self):
        return sum(self.parts.values())

    def superdimension(self):
        return sum(-c if p else c for (_, p), c in self.parts.items())

    def __mul__(self, other: "FiniteChar") -> "FiniteChar":
        out = defaultdict(int)
        for (wa, pa), ca in self.parts.items():
            for (wb, pb), cb in other.parts.items():
                out[(tuple(a + b for a, b in zip(wa, wb)), (pa + pb) % 2)] += ca * cb
        return FiniteChar(self.algebra, dict(out))

    def __add__(self, other: "FiniteChar") -> "FiniteChar":
        out = defaultdict(int, self.parts)
        for key, c in other.parts.items():
            out[key] += c
        return FiniteChar(self.algebra, dict(out))

    def scaled(self, factor, parity_shift: int = 0) -> "FiniteChar":
        return FiniteChar(self.algebra, {(w, (p + parity_shift) % 2): c * factor for (w, p), c in self.parts.items()})

    def to_json(self):
        return [[list(w), p, str(c)] for (w, p), c in sorted(self.parts.items())]


def _dominant_weights(algebra: AlgebraId, eps_lambda: Tuple) -> List[Tuple]:
    """Dominant weights below lambda, reached through dominant chains of positive roots."""
    rd = root_datum(algebra)
    steps = [r for r, _ in rd.reduced_positive_roots]
    seen = {eps_lambda}
    frontier = [eps_lambda]
    while frontier:
        nxt = []
        for mu in frontier:
            for r in steps:
                nu = rd.canonical(vadd(mu, r, -1))
                if nu not in seen and rd.is_dominant_eps(nu):
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return sorted(seen, key=lambda v: (-rd.height(v), v))


@lru_cache(maxsize=None)
def dominant_multiplicities(weight: Weight) -> Dict[Tuple, object]:
    """epsilon vector of a dominant weight -> multiplicity in L_lambda."""
    weight.require_dominant()
    algebra = weight.algebra
    rd = root_datum(algebra)
    lam = rd.canonical(weight.eps)
    dominant = _dominant_weights(algebra, lam)
    top = rd.height(lam)
    lam_rho = rd.norm2(vadd(lam, rd.rho))
    mult: Dict[Tuple, object] = {lam: QQ(1)}
    for mu in dominant[1:]:
        total = QQ(0)
        for alpha, parity in rd.positive_roots:
            j = 1
            while True:
                nu = rd.canonical(vadd(mu, alpha, j))
                if rd.height(nu) > top:
                    break
                m_nu = mult.get(rd.dominant_representative(nu), 0)
                if m_nu:
                    sign = -1 if parity and j % 2 == 0 else 1
                    total += sign * rd.inner(nu, alpha) * m_nu
                j += 1
        denom = lam_rho - rd.norm2(vadd(mu, rd.rho))
        if denom == 0:
            if total:
                raise HookdualError(f"Freudenthal recursion degenerates at {mu} for {algebra.label}")
            continue
        value = 2 * total / denom
        if value.denominator != 1 or value < 0:
            raise NegativeMultiplicityError(f"Multiplicity {value} at {mu} in L_{weight}")
        if value:
            mult[mu] = value
    return mult


def _parity_of(algebra: AlgebraId, lam: Tuple, mu: Tuple) -> int:
    if algebra.family != Family.OSP_1_2M:
        return 0
    diff = sum(vadd(lam, mu, -1), QQ.zero)
    return int(QQ(diff).numerator) % 2


@lru_cache(maxsize=None)
def character(weight: Weight) -> FiniteChar:
    """chi_{L_lambda} with parity split."""
    algebra = weight.algebra
    rd = root_datum(algebra)
    lam = rd.canonical(weight.eps)
    parts: Dict[Key, object] = {}
    for mu, c in dominant_multiplicities(weight).items():
        for w in rd.orbit(mu):
            parts[(rd.from_eps(w), _parity_of(algebra, lam, w))] = int(c.numerator)
    return FiniteChar(algebra, parts)


def weyl_dimension(weight: Weight):
    """prod over reduced positive roots of (lambda + rho | alpha) / (rho | alpha)."""
    weight.require_dominant()
    rd = root_datum(weight.algebra)
    lam_rho = vadd(rd.canonical(weight.eps), rd.rho)
    value = QQ(1)
    for alpha, _ in rd.reduced_positive_roots:
        value *= rd.inner(lam_rho, alpha) / rd.inner(rd.rho, alpha)
    return value


def is_weyl_invariant(char: FiniteChar) -> bool:
    rd = root_datum(char.algebra)
    terms = char.terms
    for w, c in terms.items():
        v = rd.to_eps(w)
        for i in range(len(rd.even_simple_roots)):
            if terms.get(rd.from_eps(rd.reflect(v, i))) != c:
                return False
    return True


def decompose(char: FiniteChar, check_sign: bool = True) -> Dict[Tuple[Weight, int], object]:
    """Strips highest weights; returns (highest weight, parity of its vector) -> multiplicity."""
    algebra = char.algebra
    rd = root_datum(algebra)
    remaining = dict(char.parts)
    out: Dict[Tuple[Weight, int], object] = {}
    while remaining:
        (w, p), c = max(remaining.items(), key=lambda item: (rd.height(rd.to_eps(item[0][0])), item[0][0], -item[0][1]))
        top = Weight(algebra, w)
        if not top.is_dominant():
            raise NonInvariantError(f"Highest remaining weight {list(w)} of a {algebra.label} character is not dominant")
        if check_sign and c < 0:
            raise NegativeMultiplicityError(f"Negative multiplicity {c} of L_{list(w)} while decomposing a {algebra.label} character")
        out[(top, p)] = c
        for key, d in character(top).scaled(c, p).parts.items():
            value = remaining.get(key, 0) - d
            if value:
                remaining[key] = value
            else:
                remaining.pop(key, None)
    return out


def tensor_decompose(lam: Weight, mu: Weight) -> Dict[Weight, object]:
    """L_lambda (x) L_mu -> {nu: multiplicity}, parities forgotten."""
    lam.require_dominant()
    mu.require_dominant()
    out: Dict[Weight, object] = defaultdict(int)
    for (nu, _), c in decompose(character(lam) * character(mu)).items():
        out[nu] += c
    return dict(out)


@dataclass(frozen=True)
class StrClass:
    """The canonical invariant str_mu of L_{mu^dagger} (x) L_mu."""
    weight: Weight
    normalization: object = QQ(1)


def trivial_multiplicity(lam: Weight, mu: Weight) -> Tuple[int, Optional[StrClass]]:
    multiplicity = int(tensor_decompose(lam, mu).get(Weight.zero(lam.algebra), 0))
    witness = StrClass(mu) if multiplicity == 1 and dual_weight(mu) == lam else None
    return multiplicity, witness
