"""Truncated Weyl modules V^k_lambda of small affine Lie superalgebras.

Modes are keys (i, n) for x_i t^n. Graded pieces are PBW monomials in the
creators (i, -n), n >= 1, applied to the top L_lambda; at symbolic k there
are no singular vectors, so these monomials are a basis.
"""
from functools import cached_property
from itertools import product
from typing import Dict, List, Tuple

from sympy import QQ

from src.algebra.ids import AlgebraId, Family
from src.algebra.pbw import ANNIHILATE, CREATE, ZERO, PBWModule, vec_add
from src.algebra.roots import vadd
from src.algebra.structure import SuperBasis, build_algebra
from src.reps.modules import SimpleModule
from src.reps.weights import Weight, root_datum
from src.series.level import LEVEL_FIELD, level_scalar
from src.utils.errors import IdentityError, UnsupportedAlgebraError
from .ce import LieData, ModuleData

Mode = Tuple[int, int]

# gl_1, so_2, sl_2, so_3, sp_2 and osp(1|2); gl_2 is excluded for its center
MAX_SMALL_DIMENSION = 5


def small_algebra(algebra: AlgebraId) -> SuperBasis:
    if algebra.dimension > MAX_SMALL_DIMENSION:
        raise UnsupportedAlgebraError(
            f"Semi-infinite complexes are built for algebras of dimension <= {MAX_SMALL_DIMENSION}, "
            f"{algebra.label} has {algebra.dimension}"
        )
    if algebra.family == Family.GL and algebra.m > 1:
        raise UnsupportedAlgebraError(f"{algebra.label} has a center beyond gl1; use sl{algebra.m}")
    basis, _ = build_algebra(algebra)
    return basis


def ghost_level(basis: SuperBasis):
    """kappa_g / kappa_0 with kappa_g(x, y) = str(ad x ad y); zero for abelian algebras."""
    p = basis.parities
    ratio = None
    for (i, j), value in sorted(basis.form.items()):
        trace = QQ.zero
        for l in range(basis.dim):
            inner = basis.bracket(j, l)
            c = sum((cj * basis.bracket(i, m).get(l, QQ.zero) for m, cj in inner.items()), QQ.zero)
            trace += -c if p[l] else c
        current = trace / value
        if ratio is None:
            ratio = current
        elif current != ratio:
            raise IdentityError(f"str(ad ad) is not proportional to the invariant form on {basis!r}")
    return ratio if ratio is not None else QQ.zero


def complement_level(basis: SuperBasis, level):
    """The level l with k + l = -kappa_g / kappa_0."""
    return -level_scalar(level) - level_scalar(ghost_level(basis))


class LoopAlgebra:
    """g[t, t^-1] + C K at level k."""

    def __init__(self, basis: SuperBasis, level):
        self.basis = basis
        self.level = level_scalar(level)

    def parity(self, mode: Mode) -> int:
        return self.basis.parities[mode[0]]

    def bracket(self, a: Mode, b: Mode):
        (i, m), (j, n) = a, b
        terms = {(l, m + n): level_scalar(c) for l, c in self.basis.bracket(i, j).items()}
        central = 0
        if m and m + n == 0:
            value = self.basis.form_value(i, j)
            if value:
                central = self.level * m * value
        return terms, central

    def truncated(self, sign: int, depth: int) -> Tuple[LieData, List[Mode]]:
        """L+g (sign=1) or L-g (sign=-1) with modes |n| <= depth, graded by conformal weight."""
        modes = [(i, sign * n) for n in range(1, depth + 1) for i in range(self.basis.dim)]
        index = {mode: a for a, mode in enumerate(modes)}

        def bracket(a: int, b: int) -> Dict[int, object]:
            terms, _ = self.bracket(modes[a], modes[b])
            return {index[mode]: c for mode, c in terms.items() if mode in index}

        labels = [f"{self.basis.labels[i]}({n})" for i, n in modes]
        parities = [self.basis.parities[i] for i, _ in modes]
        grades = [-n for _, n in modes]
        return LieData(labels, parities, bracket, grades), modes


def creator_monomials(creators: List[Tuple[object, int, int]], depth: int) -> List[Tuple]:
    """Sorted monomials of total weight ``depth`` in creators (key, weight, parity), sorted by list order."""
    out: List[Tuple] = []

    def extend(start: int, acc: Tuple, total: int):
        if total == depth:
            out.append(acc)
            return
        for a in range(start, len(creators)):
            key, weight, parity = creators[a]
            if total + weight > depth:
                continue
            extend(a if not parity else a + 1, acc + (key,), total + weight)

    extend(0, (), 0)
    return out


class WeylModule:
    """V^k_lambda with states (monomial of creators, top state), truncated at ``depth``."""

    def __init__(self, basis: SuperBasis, weight: Weight, level, depth: int):
        self.basis = basis
        self.weight = weight
        self.level = level_scalar(level)
        self.depth = depth
        self.top = SimpleModule(basis, weight)
        self.loop = LoopAlgebra(basis, level)
        self.rd = root_datum(basis.algebra)
        self._creators = [((i, -n), n, basis.parities[i]) for n in range(1, depth + 1) for i in range(basis.dim)]
        rank_of = {key: a for a, (key, _, _) in enumerate(self._creators)}
        self.engine = PBWModule(
            kind=self._kind,
            parity=self.loop.parity,
            order=lambda key: rank_of.get(key, -1),
            bracket=self.loop.bracket,
            top_action=lambda key, t: {s: level_scalar(c) for s, c in self.top.act(key[0], t).items()},
            one=LEVEL_FIELD.one,
        )

    @staticmethod
    def _kind(mode: Mode) -> str:
        n = mode[1]
        if n < 0:
            return CREATE
        return ZERO if n == 0 else ANNIHILATE

    def states(self, depth: int) -> List[Tuple]:
        return [(mono, t) for mono in creator_monomials(self._creators, depth) for t in range(self.top.dim)]

    @cached_property
    def all_states(self) -> List[Tuple]:
        return [s for d in range(self.depth + 1) for s in self.states(d)]

    def state_depth(self, state) -> int:
        return -sum(n for _, n in state[0])

    def state_parity(self, state) -> int:
        mono, t = state
        return (self.engine.monomial_parity(mono) + self.top.state_parity(t)) % 2

    def state_weight(self, state) -> Tuple:
        mono, t = state
        w = self.top.states[t][0]
        for i, _ in mono:
            w = vadd(w, self.basis.weights[i])
        return w

    def act(self, mode: Mode, state) -> Dict[Tuple, object]:
        mono, t = state
        return self.engine.act_state(mode, mono, t)

    def label(self, state) -> str:
        mono, t = state
        modes = " ".join(f"{self.basis.labels[i]}({n})" for i, n in mono)
        return f"{modes} |{t}>" if modes else f"|{t}>"

    def module_data(self, modes: List[Mode]) -> ModuleData:
        """The module over a truncated loop algebra whose basis is ``modes``."""
        return ModuleData(
            self.all_states,
            self.state_parity,
            lambda a, state: self.act(modes[a], state),
            grade=self.state_depth,
            one=LEVEL_FIELD.one,
        )


class TensorModule:
    """V1 (x) V2 with x(v1 (x) v2) = x v1 (x) v2 + (-1)^{x v1} v1 (x) x v2."""

    def __init__(self, first: WeylModule, second: WeylModule):
        if first.basis is not second.basis:
            raise UnsupportedAlgebraError("Tensor factors must be modules of the same algebra")
        self.first, self.second = first, second
        self.basis = first.basis

    def states(self, depth: int) -> List[Tuple]:
        return [(s1, s2) for d in range(depth + 1) for s1, s2 in product(self.first.states(d), self.second.states(depth - d))]

    def state_depth(self, state) -> int:
        return self.first.state_depth(state[0]) + self.second.state_depth(state[1])

    def state_parity(self, state) -> int:
        return (self.first.state_parity(state[0]) + self.second.state_parity(state[1])) % 2

    def state_weight(self, state) -> Tuple:
        return vadd(self.first.state_weight(state[0]), self.second.state_weight(state[1]))

    def act(self, mode: Mode, state) -> Dict[Tuple, object]:
        s1, s2 = state
        out: Dict[Tuple, object] = {}
        for t1, c in self.first.act(mode, s1).items():
            vec_add(out, {(t1, s2): c})
        sign = -1 if self.basis.parities[mode[0]] and self.first.state_parity(s1) else 1
        for t2, c in self.second.act(mode, s2).items():
            vec_add(out, {(s1, t2): c}, sign)
        return out

    def label(self, state) -> str:
        return f"{self.first.label(state[0])} (x) {self.second.label(state[1])}"

    def module_data(self, modes: List[Mode]) -> ModuleData:
        depth = min(self.first.depth, self.second.depth)
        return ModuleData(
            [s for d in range(depth + 1) for s in self.states(d)],
            self.state_parity,
            lambda a, state: self.act(modes[a], state),
            grade=self.state_depth,
            one=LEVEL_FIELD.one,
        )
