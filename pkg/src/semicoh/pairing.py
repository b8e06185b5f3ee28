"""The pairing between Chevalley-Eilenberg cochains and chains.

A bilinear form Psi on M with Psi(m1, x m2) = Psi(tau(x) m1, m2) for an
anti-isomorphism tau induces

    Psi_n(f, a (x) x_1..x_n) = (-1)^{x_1 + .. + x_n} Psi(f(tau x_n .. tau x_1), a)

and Psi_{n+1}(d f, P) = Psi_n(f, d P). For M = L_lambda, Psi is the
contravariant form; on Weyl modules the same construction uses the loop
anti-isomorphism x_{i,n} -> (t x_i)_{-n}.
"""
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Tuple

from sympy import QQ

from src.algebra.ids import AlgebraId
from src.algebra.linalg import Matrix, exact_rank, inverse, nullspace, sdm_is_zero, sdm_matmul, sdm_sub, sdm_transpose
from src.algebra.pbw import vec_add
from src.algebra.structure import build_algebra
from src.algebra.transpose import chevalley_transpose
from src.reps.modules import SimpleModule
from src.reps.weights import Weight
from src.series.level import LEVEL_FIELD, k, level_scalar
from src.utils import config
from src.utils.errors import IdentityError, TruncationError
from .affine_modules import WeylModule, small_algebra
from .ce import CHAIN, COCHAIN, CEComplex, LieData, build_ce, simple_module_data, sort_word


@dataclass
class PairingWitness:
    """L_lambda with its contravariant form and tau, the inverse of the Chevalley transpose."""
    module: SimpleModule
    tau: Dict[int, Dict[int, object]]
    form: Dict[Tuple[int, int], object] = field(default_factory=dict)

    @property
    def basis(self):
        return self.module.basis

    def psi(self, s: int, t: int):
        key = (s, t)
        if key not in self.form:
            mono_s, mono_t = self.module.states[s][1], self.module.states[t][1]
            self.form[key] = self.module.pairing(mono_s, {(mono_t, 0): QQ.one})
        return self.form[key]

    def invariance_residual(self) -> Optional[Tuple[int, int, int]]:
        """First (i, s, t) with Psi(s, x_i t) != Psi(tau(x_i) s, t)."""
        for i in range(self.basis.dim):
            for s, t in product(range(self.module.dim), repeat=2):
                lhs = sum((c * self.psi(s, u) for u, c in self.module.act(i, t).items()), QQ.zero)
                rhs = QQ.zero
                for j, a in self.tau[i].items():
                    rhs += sum((a * c * self.psi(u, t) for u, c in self.module.act(j, s).items()), QQ.zero)
                if lhs != rhs:
                    return i, s, t
        return None


def build_witness(weight: Weight) -> PairingWitness:
    basis, _ = build_algebra(weight.algebra)
    transpose = chevalley_transpose(basis)
    tau = inverse(transpose, basis.dim, QQ.one)
    return PairingWitness(SimpleModule(basis, weight), {i: tau.get(i, {}) for i in range(basis.dim)})


def _expand_word(witness: PairingWitness, word: Tuple[int, ...]) -> Dict[Tuple[int, ...], object]:
    """tau(x_n) .. tau(x_1) expanded into sorted monomials of Sym(Pi g)."""
    parities = witness.basis.parities
    out: Dict[Tuple[int, ...], object] = {}
    images = [witness.tau[x] for x in reversed(word)]
    for choice in product(*(list(image.items()) for image in images)):
        coefficient = QQ.one
        for _, c in choice:
            coefficient *= c
        mono, sign = sort_word([j for j, _ in choice], parities)
        if mono is not None:
            vec_add(out, {mono: coefficient}, sign)
    return out


def gram_matrix(witness: PairingWitness, cochains: List[Tuple], chains: List[Tuple]) -> Matrix:
    """G[f][P] = Psi_n(f, P) over the monomial bases of one degree."""
    parities = witness.basis.parities
    by_word: Dict[Tuple[int, ...], List[Tuple[int, int]]] = {}
    for a, (word, state) in enumerate(cochains):
        by_word.setdefault(word, []).append((a, state))
    out: Matrix = {}
    for b, (state, word) in enumerate(chains):
        sign = -1 if sum(parities[x] for x in word) % 2 else 1
        for mono, c in _expand_word(witness, word).items():
            for a, value_state in by_word.get(mono, []):
                value = witness.psi(value_state, state)
                if value:
                    row = out.setdefault(a, {})
                    row[b] = row.get(b, 0) + sign * c * value
    return {a: {b: v for b, v in row.items() if v} for a, row in out.items() if any(row.values())}


@dataclass
class PairingReport:
    algebra: AlgebraId
    weight: Weight
    max_degree: int
    compatible: Dict[int, bool]
    cohomology: Dict[int, int]
    homology: Dict[int, int]
    pairing_ranks: Dict[int, int]

    @property
    def nondegenerate(self) -> bool:
        return all(self.pairing_ranks[n] == self.cohomology[n] == self.homology[n] for n in self.pairing_ranks)

    @property
    def passed(self) -> bool:
        return all(self.compatible.values()) and self.nondegenerate

    def to_json(self) -> Dict:
        return {
            "algebra": self.algebra.label,
            "lambda": list(self.weight.coords),
            "max_degree": self.max_degree,
            "compatible": self.compatible,
            "cohomology": self.cohomology,
            "homology": self.homology,
            "pairing_ranks": self.pairing_ranks,
            "passed": self.passed,
        }


def _induced_rank(witness: PairingWitness, cochain: CEComplex, chain: CEComplex, n: int, gram: Matrix) -> int:
    """Rank of Psi_n on cocycles x cycles, the dimension of the induced pairing on H^n x H_n."""
    cocycles = nullspace(cochain.differentials.get(n, {}), len(cochain.spaces[n]), QQ.one)
    if n == 0:
        cycles = [{b: QQ.one} for b in range(len(chain.spaces[0]))]
    else:
        cycles = nullspace(chain.differentials.get(n, {}), len(chain.spaces[n]), QQ.one)
    left = {a: v for a, v in enumerate(cocycles)}
    right = sdm_transpose({b: v for b, v in enumerate(cycles)})
    return exact_rank(sdm_matmul(sdm_matmul(left, gram), right), QQ.one)


def pairing_check(witness: PairingWitness, max_degree: int = 2) -> PairingReport:
    """Psi_{n+1}(d f, P) = Psi_n(f, d P) for n <= max_degree, then nondegeneracy on (co)homology."""
    if max_degree > config.MAX_CE_DEGREE:
        raise TruncationError(f"Degree {max_degree} exceeds MAX_CE_DEGREE = {config.MAX_CE_DEGREE}")
    residual = witness.invariance_residual()
    if residual is not None:
        i, s, t = residual
        raise IdentityError(f"Psi is not tau-invariant: x_{witness.basis.labels[i]} on states {s}, {t}")
    lie = LieData.from_basis(witness.basis)
    module = simple_module_data(witness.module)
    cochain = build_ce(lie, module, COCHAIN, max_degree)
    chain = build_ce(lie, module, CHAIN, max_degree)
    grams = {n: gram_matrix(witness, cochain.spaces[n], chain.spaces[n]) for n in range(max_degree + 2)}
    compatible = {}
    for n in range(max_degree + 1):
        left = sdm_matmul(sdm_transpose(cochain.differentials.get(n, {})), grams[n + 1])
        right = sdm_matmul(grams[n], chain.differentials.get(n + 1, {}))
        residual = sdm_sub(left, right)
        if not sdm_is_zero(residual):
            a = min(r for r, row in residual.items() if any(row.values()))
            b = min(residual[a])
            raise IdentityError(
                f"Pairing is not compatible with the differentials in degree {n}: "
                f"f = {cochain.spaces[n][a]}, P = {chain.spaces[n + 1][b]}"
            )
        compatible[n] = True
    cohomology = {n: d for n, d in cochain.total_cohomology().items() if n <= max_degree}
    homology = {n: d for n, d in chain.total_cohomology().items() if n <= max_degree}
    ranks = {n: _induced_rank(witness, cochain, chain, n, grams[n]) for n in range(max_degree + 1)}
    report = PairingReport(witness.basis.algebra, witness.module.weight, max_degree, compatible, cohomology, homology, ranks)
    print(f"[PairingCheck] {report.algebra.label} L_{list(report.weight.coords)}: "
          f"H^n {cohomology}, H_n {homology}, ranks {ranks}")
    return report


# --- the contravariant form of a Weyl module ---

class WeylForm:
    """Psi_{lambda,k} on a truncated Weyl module, defined by moving creators to the right.

    Psi(y_1 .. y_r |t>, m) = Psi_top(|t>, iota(y_r) .. iota(y_1) m) with
    iota(x_{i,n}) = (t x_i)_{-n}.
    """

    def __init__(self, module: WeylModule):
        self.module = module
        self.transpose = chevalley_transpose(module.basis)
        self._cache: Dict[Tuple, object] = {}

    def iota(self, mode, vector: Dict) -> Dict:
        i, n = mode
        out: Dict = {}
        for j, c in self.transpose[i].items():
            for state, v in vector.items():
                vec_add(out, self.module.act((j, -n), state), c * v)
        return out

    def psi(self, first, second):
        key = (first, second)
        if key in self._cache:
            return self._cache[key]
        mono, t = first
        vector = {second: LEVEL_FIELD.one}
        for y in mono:
            vector = self.iota(y, vector)
            if not vector:
                break
        top = self.module.top
        value = LEVEL_FIELD.zero
        for (rest, t2), c in vector.items():
            if not rest:
                value += c * level_scalar(top.pairing(top.states[t][1], {(top.states[t2][1], 0): QQ.one}))
        self._cache[key] = value
        return value

    def pair(self, vector: Dict, second):
        return sum((c * self.psi(s, second) for s, c in vector.items()), LEVEL_FIELD.zero)

    def invariance_residual(self) -> Optional[Tuple]:
        """First (mode, m1, m2) with Psi(x m1, m2) != Psi(m1, iota(x) m2) for n >= 0."""
        basis = self.module.basis
        for d1 in range(self.module.depth + 1):
            for n in range(d1 + 1):
                for i in range(basis.dim):
                    for m1 in self.module.states(d1):
                        image = self.module.act((i, n), m1)
                        for m2 in self.module.states(d1 - n):
                            lhs = self.pair(image, m2)
                            rhs = sum((c * self.psi(m1, s) for s, c in self.iota((i, n), {m2: LEVEL_FIELD.one}).items()),
                                      LEVEL_FIELD.zero)
                            if lhs != rhs:
                                return (i, n), m1, m2
        return None

    def gram_ranks(self) -> Dict[int, Tuple[int, int]]:
        """depth -> (rank of the form, number of states)."""
        out = {}
        for d in range(self.module.depth + 1):
            states = self.module.states(d)
            gram = {a: {b: self.psi(s, t) for b, t in enumerate(states) if self.psi(s, t)}
                    for a, s in enumerate(states)}
            out[d] = (exact_rank(gram, LEVEL_FIELD.one), len(states))
        return out


def weyl_form_check(algebra: AlgebraId, weight: Weight, level=k, depth: int = 2) -> Dict:
    """Invariance and nondegeneracy of Psi_{lambda,k} at symbolic level."""
    form = WeylForm(WeylModule(small_algebra(algebra), weight, level_scalar(level), depth))
    residual = form.invariance_residual()
    if residual is not None:
        mode, m1, m2 = residual
        raise IdentityError(
            f"Weyl form is not invariant under {form.module.basis.labels[mode[0]]}({mode[1]}) "
            f"on {form.module.label(m1)}, {form.module.label(m2)}"
        )
    ranks = form.gram_ranks()
    print(f"[WeylForm] {algebra.label} V_{list(weight.coords)} ranks {ranks}")
    return {
        "algebra": algebra.label,
        "lambda": list(weight.coords),
        "depth": depth,
        "ranks": {d: {"rank": r, "states": n} for d, (r, n) in ranks.items()},
        "nondegenerate": all(r == n for r, n in ranks.values()),
    }


__all__ = ["PairingWitness", "PairingReport", "WeylForm", "build_witness", "gram_matrix", "pairing_check", "weyl_form_check"]
