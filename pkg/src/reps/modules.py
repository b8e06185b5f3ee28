"""Finite-dimensional simple modules as quotients of Verma modules.

M(lambda) = U(n-) v is realized through PBW straightening. The contravariant
form Psi(u v, w) = <v, t(u) w> built from the Chevalley anti-involution has
the maximal submodule as its radical, so L_lambda is read off weight space by
weight space: a set of PBW monomials independent modulo the radical gives the
basis, and images are expressed in it by solving against the Gram rows.
"""
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from sympy import QQ

from src.algebra.linalg import independent_columns, sdm_transpose, solve
from src.algebra.pbw import ANNIHILATE, CREATE, ZERO, PBWModule, vec_add
from src.algebra.roots import vadd
from src.algebra.structure import SuperBasis
from src.algebra.transpose import chevalley_transpose
from src.utils.errors import IdentityError, WeightError
from .characters import character
from .weights import Weight, root_datum

Monomial = Tuple[int, ...]


def verma_module(basis: SuperBasis, eps_weight: Tuple) -> PBWModule:
    pos, zero, neg = basis.triangular
    kinds = {i: CREATE for i in neg}
    kinds.update({i: ZERO for i in zero})
    kinds.update({i: ANNIHILATE for i in pos})
    cartan = set(basis.cartan_indices)

    def top_action(i, t):
        if i in cartan:
            return {0: basis.cartan_value(i, eps_weight)}
        return {}

    return PBWModule(
        kind=kinds.__getitem__,
        parity=lambda i: basis.parities[i],
        order=lambda i: i,
        bracket=lambda a, b: (basis.bracket(a, b), 0),
        top_action=top_action,
    )


def pbw_monomials(basis: SuperBasis, depth: Tuple) -> List[Monomial]:
    """Sorted monomials in n- of total epsilon weight ``depth``."""
    _, _, neg = basis.triangular
    rd = root_datum(basis.algebra)
    target_height = rd.height(depth)
    out: List[Monomial] = []

    def extend(start: int, acc: Tuple, height, mono: Monomial):
        if height == target_height and rd.canonical(acc) == rd.canonical(depth):
            out.append(mono)
        for n in range(start, len(neg)):
            i = neg[n]
            h = height + basis.height(i)
            if h < target_height:
                continue
            if basis.parities[i] and mono and mono[-1] == i:
                continue
            extend(n, vadd(acc, basis.weights[i]), h, mono + (i,))

    extend(0, tuple(QQ(0) for _ in depth), QQ(0), ())
    return out


class SimpleModule:
    """L_lambda with explicit action of every basis element."""

    def __init__(self, basis: SuperBasis, weight: Weight):
        if basis.algebra != weight.algebra:
            raise WeightError(f"Weight of {weight.algebra.label} used with {basis!r}")
        weight.require_dominant()
        self.basis = basis
        self.weight = weight
        self.rd = root_datum(weight.algebra)
        self.eps = self.rd.canonical(weight.eps)
        self.verma = verma_module(basis, self.eps)
        self.transpose = chevalley_transpose(basis)
        self.states: List[Tuple[Tuple, Monomial]] = []
        self._rows: Dict[Tuple, List[Monomial]] = {}
        self._gram: Dict[Tuple, Dict] = {}
        self._index: Dict[Tuple[Tuple, Monomial], int] = {}
        self._build()

    # --- contravariant form ---
    def transpose_apply(self, i: int, vector: Dict) -> Dict:
        out: Dict = {}
        for j, c in self.transpose[i].items():
            vec_add(out, self.verma.act(j, vector), c)
        return out

    def pairing(self, mono: Monomial, vector: Dict):
        """Psi(mono v, vector) for a Verma vector."""
        for y in mono:
            vector = self.transpose_apply(y, vector)
            if not vector:
                return QQ.zero
        return vector.get(((), 0), QQ.zero)

    def _build(self):
        char = character(self.weight)
        weights = sorted({self.rd.canonical(self.rd.to_eps(w)) for w in char.terms},
                         key=lambda v: (-self.rd.height(v), v))
        for mu in weights:
            depth = vadd(mu, self.eps, -1)
            monos = pbw_monomials(self.basis, depth)
            gram = {}
            for a, ua in enumerate(monos):
                row = {}
                for b, ub in enumerate(monos):
                    value = self.pairing(ua, {(ub, 0): QQ.one})
                    if value:
                        row[b] = value
                if row:
                    gram[a] = row
            columns = independent_columns(gram, QQ.one)
            restricted = {a: {n: row[c] for n, c in enumerate(columns) if c in row} for a, row in gram.items()}
            rows = independent_columns(sdm_transpose(restricted), QQ.one)
            expected = char.terms[self.rd.from_eps(mu)]
            if len(columns) != expected:
                raise IdentityError(
                    f"L_{self.weight} of {self.basis.algebra.label}: weight {self.rd.from_eps(mu)} has dimension "
                    f"{len(columns)} from the contravariant form, {expected} from the character"
                )
            key = tuple(mu)
            self._rows[key] = [monos[r] for r in rows]
            self._gram[key] = {n: dict(restricted[r]) for n, r in enumerate(rows)}
            for c in columns:
                self._index[(key, monos[c])] = len(self.states)
                self.states.append((key, monos[c]))

    # --- action ---
    @property
    def dim(self) -> int:
        return len(self.states)

    def state_parity(self, s: int) -> int:
        return self.verma.monomial_parity(self.states[s][1])

    def state_weight(self, s: int) -> Tuple[int, ...]:
        return self.rd.from_eps(self.states[s][0])

    def reduce(self, mu: Tuple, vector: Dict) -> Dict[int, object]:
        """Coordinates in L_lambda of a Verma vector of weight mu."""
        key = tuple(self.rd.canonical(mu))
        if key not in self._rows:
            return {}
        rhs = {}
        for n, mono in enumerate(self._rows[key]):
            value = self.pairing(mono, vector)
            if value:
                rhs[n] = value
        if not rhs:
            return {}
        size = len(self._rows[key])
        coords = solve(self._gram[key], rhs, size, QQ.one)
        if coords is None:
            raise IdentityError(f"Contravariant form is singular on weight {key} of L_{self.weight}")
        basis_states = [s for s, (w, _) in enumerate(self.states) if w == key]
        return {basis_states[n]: c for n, c in coords.items() if c}

    def act(self, i: int, s: int) -> Dict[int, object]:
        return self._action[(i, s)]

    @cached_property
    def _action(self) -> Dict[Tuple[int, int], Dict[int, object]]:
        out = {}
        for i in range(self.basis.dim):
            for s, (mu, mono) in enumerate(self.states):
                vector = self.verma.act(i, {(mono, 0): QQ.one})
                target = vadd(mu, self.basis.weights[i])
                out[(i, s)] = self.reduce(target, vector) if vector else {}
        return out

    def action_matrix(self, i: int) -> Dict[int, Dict[int, object]]:
        """Row-major sparse matrix of x_i: row r, column s."""
        out: Dict[int, Dict[int, object]] = {}
        for s in range(self.dim):
            for r, c in self.act(i, s).items():
                out.setdefault(r, {})[s] = c
        return out

    def representation_residual(self) -> Optional[Tuple[int, int]]:
        """First pair (i, j) where rho([x_i, x_j]) != [rho(x_i), rho(x_j)], or None."""
        p = self.basis.parities
        for i in range(self.basis.dim):
            for j in range(self.basis.dim):
                sign = -1 if p[i] and p[j] else 1
                for s in range(self.dim):
                    lhs: Dict = {}
                    for k, c in self.basis.bracket(i, j).items():
                        vec_add(lhs, self.act(k, s), c)
                    rhs: Dict = {}
                    for t, c in self.act(j, s).items():
                        vec_add(rhs, self.act(i, t), c)
                    for t, c in self.act(i, s).items():
                        vec_add(rhs, self.act(j, t), -sign * c)
                    if lhs != rhs:
                        return i, j
        return None

    def highest_state(self) -> int:
        return self._index[(tuple(self.eps), ())]
