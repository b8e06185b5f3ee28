"""Generalized free fields in an explicit mode realization.

A field x has modes x_(n), n in Z, with Y(x, z) = sum x_(n) z^{-n-1}. Two
fields paired with leading pole data (alpha, N), x(z) y(w) ~ alpha/(z-w)^N,
satisfy [x_(p), y_(q)] = alpha binom(p, N-1) delta_{p+q, N-2}; modes x_(n)
with n >= 0 kill the vacuum. States are PBW monomials in the creation modes.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from sympy import QQ

from src.algebra.linalg import rank
from src.algebra.pbw import ANNIHILATE, CREATE, PBWModule, vec_add
from src.algebra.structure import build_algebra
from src.algebra.ids import AlgebraId
from src.reps.modules import SimpleModule
from src.reps.weights import natural_weight
from src.series.level import LEVEL_FIELD, level_scalar
from src.utils.errors import IdentityError, UnsupportedAlgebraError

MAX_POLE_ORDER = 4

ModeKey = Tuple[str, int]


@dataclass(frozen=True)
class FreeField:
    name: str
    parity: int = 0


def generalized_binomial(p: int, r: int):
    """binom(p, r) for any integer p and r >= 0."""
    value = QQ.one
    for i in range(r):
        value = value * (p - i) / (i + 1)
    return value


class FreeFieldAlgebra:
    """Mode algebra of finitely many generalized free fields."""

    def __init__(self, fields: Iterable[FreeField]):
        self.fields: Dict[str, FreeField] = {f.name: f for f in fields}
        self._pairings: Dict[Tuple[str, str], Tuple[object, int]] = {}
        self.module = PBWModule(
            kind=lambda key: CREATE if key[1] < 0 else ANNIHILATE,
            parity=lambda key: self.fields[key[0]].parity,
            order=self._order,
            bracket=self._bracket,
            one=LEVEL_FIELD.one,
        )
        self._names = list(self.fields)

    def _order(self, key: ModeKey):
        return (self._names.index(key[0]), key[1])

    def pair(self, x: str, y: str, alpha, pole: int):
        """Declares x(z) y(w) ~ alpha/(z-w)^pole; the reversed OPE follows by skew symmetry."""
        fx, fy = self.fields[x], self.fields[y]
        if fx.parity != fy.parity:
            raise IdentityError(f"Fields {x}, {y} of different parity cannot pair")
        if pole < 1:
            raise IdentityError(f"Pole order must be positive, got {pole}")
        alpha = level_scalar(alpha)
        self._pairings[(x, y)] = (alpha, pole)
        if x != y:
            sign = (-1) ** (fx.parity * fy.parity + pole)
            self._pairings[(y, x)] = (alpha * sign, pole)

    def _bracket(self, a: ModeKey, b: ModeKey):
        data = self._pairings.get((a[0], b[0]))
        if data is None:
            return {}, 0
        alpha, pole = data
        p, q = a[1], b[1]
        if p + q != pole - 2:
            return {}, 0
        return {}, alpha * generalized_binomial(p, pole - 1)

    def vacuum(self) -> Dict:
        return {((), 0): LEVEL_FIELD.one}

    def act(self, key: ModeKey, vector: Dict) -> Dict:
        return self.module.act(key, vector)

    def state(self, *modes: ModeKey) -> Dict:
        """modes[0] modes[1] ... |0>, the last mode acting first."""
        return self.module.act_word(list(modes), self.vacuum())

    def normal_ordered_mode(self, x: str, y: str, n: int, vector: Dict, depth: int) -> Dict:
        """(x_(-1) y)_(n) on a vector; sums run over i < depth."""
        sign = -1 if self.fields[x].parity and self.fields[y].parity else 1
        out: Dict = {}
        for i in range(depth):
            vec_add(out, self.module.act_word([(x, -1 - i), (y, n + i)], vector))
            vec_add(out, self.module.act_word([(y, n - 1 - i), (x, i)], vector), sign)
        return out

    @staticmethod
    def vacuum_coefficient(vector: Dict):
        return vector.get(((), 0), LEVEL_FIELD.zero)


def ope_leading_coefficient(a1: FreeField, b1: FreeField, a2: FreeField, b2: FreeField,
                            alpha=1, pole_a: int = 2, beta=1, pole_b: int = 2):
    """Leading coefficient of Y(a1_(-1) b1, z) a2_(-1) b2 at the pole of order pole_a + pole_b.

    a1 pairs with a2 through (alpha, pole_a) and b1 with b2 through (beta, pole_b).
    """
    if pole_a > MAX_POLE_ORDER or pole_b > MAX_POLE_ORDER:
        raise UnsupportedAlgebraError(f"No mode realization for pole orders above {MAX_POLE_ORDER}")
    names = [f.name for f in (a1, b1, a2, b2)]
    if len(set(names)) != 4:
        raise IdentityError(f"Four distinct fields are needed, got {names}")
    algebra = FreeFieldAlgebra([a1, b1, a2, b2])
    algebra.pair(a1.name, a2.name, alpha, pole_a)
    algebra.pair(b1.name, b2.name, beta, pole_b)
    target = algebra.state((a2.name, -1), (b2.name, -1))
    total_pole = pole_a + pole_b
    depth = 2 * total_pole + 2
    result = algebra.normal_ordered_mode(a1.name, b1.name, total_pole - 1, target, depth)
    return algebra.vacuum_coefficient(result)


def ope_leading_check(a1: FreeField, b1: FreeField, a2: FreeField, b2: FreeField,
                      alpha=1, pole_a: int = 2, beta=1, pole_b: int = 2):
    """The leading coefficient, asserted to be (-1)^{p(a2) p(b1)} alpha beta."""
    computed = ope_leading_coefficient(a1, b1, a2, b2, alpha, pole_a, beta, pole_b)
    expected = level_scalar(alpha) * level_scalar(beta) * (-1) ** (a2.parity * b1.parity)
    if computed != expected:
        raise IdentityError(
            f"Leading coefficient at pole {pole_a + pole_b} is {computed.as_expr()}, expected {expected.as_expr()}")
    return computed


def _natural_module(algebra: AlgebraId) -> SimpleModule:
    basis, _ = build_algebra(algebra)
    return SimpleModule(basis, natural_weight(algebra))


def invariant_gram_check(algebra: AlgebraId, pole: int, parity_flip: int = 0) -> Dict:
    """Gram matrix (y_j, x_i) -> y_j,(pole-1) x_i for multiplets x in rho and y in its dual.

    Checks that it has full rank and that it is b-invariant:
    <g.f, v> + (-1)^{p(g) p(f)} <f, g.v> = 0 on all basis elements g.
    """
    module = _natural_module(algebra)
    basis = module.basis
    dim = module.dim
    parities = [module.state_parity(s) ^ parity_flip for s in range(dim)]
    xs = [FreeField(f"x{i}", parities[i]) for i in range(dim)]
    ys = [FreeField(f"y{j}", parities[j]) for j in range(dim)]
    ff = FreeFieldAlgebra(xs + ys)
    for j in range(dim):
        ff.pair(ys[j].name, xs[j].name, 1, pole)

    gram: Dict[int, Dict[int, object]] = {}
    for j in range(dim):
        for i in range(dim):
            value = ff.vacuum_coefficient(ff.act((ys[j].name, pole - 1), ff.state((xs[i].name, -1))))
            if value:
                gram.setdefault(j, {})[i] = value
    gram_rank = rank(gram, LEVEL_FIELD.one)

    failures: List[Tuple[int, int, int]] = []
    for g in range(basis.dim):
        rho = module.action_matrix(g)
        pg = basis.parities[g]
        for j in range(dim):
            for i in range(dim):
                # dual action on f_j: g.f_j = -sum_l (-1)^{p(g) p(j)} rho[j][l] f_l
                lhs = LEVEL_FIELD.zero
                for l, c in rho.get(j, {}).items():
                    lhs -= (-1) ** (pg * parities[j]) * c * gram.get(l, {}).get(i, LEVEL_FIELD.zero)
                rhs = LEVEL_FIELD.zero
                for r, row in rho.items():
                    if i in row:
                        rhs += row[i] * gram.get(j, {}).get(r, LEVEL_FIELD.zero)
                if lhs + (-1) ** (pg * parities[j]) * rhs:
                    failures.append((g, j, i))
    return {
        "algebra": algebra.label,
        "dimension": dim,
        "pole": pole,
        "rank": gram_rank,
        "invariance_failures": failures[:5],
        "passed": gram_rank == dim and not failures,
    }
