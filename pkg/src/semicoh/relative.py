"""Relative semi-infinite cohomology of V^k_lambda (x) V^l_mu, slice by slice.

The complex is ((V^k_lambda (x) V^l_mu) (x) wedge_rel)^g with k + l = -kappa_g.
On the relative subcomplex the differential

    d = sum_i (-1)^{x_i} sum_{n != 0} x_{i,n} phi*_{i,-n}
        - 1/2 sum (-1)^{x_i x_k} c_ij^k sum_{p, q != 0} phi*_{i,p} phi*_{j,q} phi_{k,-p-q}

has no normal-ordering corrections: with p, q != 0 no two of the three
ghost modes pair. Terms containing phi*_{i,0} cancel on g-invariants and are
dropped. The differential preserves the conformal weight, so the states of
weight Delta above the bottom form a finite subcomplex and its cohomology is
exact; no degree of a computed slice can receive contributions from the
excluded weights.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from joblib import Parallel, delayed
from sympy import QQ

from src.algebra.ids import AlgebraId
from src.algebra.linalg import Matrix, Row, exact_rank, nullspace, sdm_apply
from src.algebra.pbw import vec_add
from src.affine.conformal import delta_lowest
from src.reps.characters import trivial_multiplicity
from src.reps.weights import Weight, dual_weight, root_datum
from src.series.level import LEVEL_FIELD, format_level, k, level_scalar
from src.utils import config
from src.utils.errors import ComplexError, TruncationError, WeightError
from src.utils.exact import format_level_scalar
from .affine_modules import TensorModule, WeylModule, complement_level, ghost_level, small_algebra
from .fock import PHI, PHI_STAR, GhostFock

MODULE_PLUS, MODULE_MINUS = "module_plus", "module_minus"
CUBIC_CREATE, CUBIC_ANNIHILATE, CUBIC_MIXED = "cubic_c", "cubic_b", "cubic_mixed"
PIECES = (MODULE_PLUS, MODULE_MINUS, CUBIC_CREATE, CUBIC_ANNIHILATE, CUBIC_MIXED)

State = Tuple[Tuple, Tuple]


class RelativeComplex:
    """States (module state, ghost monomial) of zero total g-weight, up to conformal weight ``depth``."""

    def __init__(self, algebra: AlgebraId, lam: Weight, mu: Weight, level=k, depth: int = 2):
        if depth > config.MAX_SEMICOH_WEIGHT:
            raise TruncationError(f"Weight bound {depth} exceeds MAX_SEMICOH_WEIGHT = {config.MAX_SEMICOH_WEIGHT}")
        if lam.algebra != algebra or mu.algebra != algebra:
            raise WeightError(f"Weights {lam}, {mu} do not belong to {algebra.label}")
        self.algebra = algebra
        self.basis = small_algebra(algebra)
        self.rd = root_datum(algebra)
        self.lam, self.mu = lam, mu
        self.level = level_scalar(level)
        self.dual_level = complement_level(self.basis, self.level)
        self.depth = depth
        self.module = TensorModule(WeylModule(self.basis, lam, self.level, depth),
                                   WeylModule(self.basis, mu, self.dual_level, depth))
        self.ghosts = GhostFock(self.basis.parities, self.basis.weights, depth)
        self.zero = self.rd.canonical(tuple(QQ(0) for _ in range(self.rd.eps_dim)))
        self.structure = [(i, j, l, c) for (i, j), terms in sorted(self.basis.brackets.items()) for l, c in terms]

    # --- states ---
    def states(self, delta: int) -> List[State]:
        """Zero-weight states of conformal weight delta above the bottom."""
        out = []
        for c in range(delta + 1):
            for g in self.ghosts.monomials(c):
                gw = self.ghosts.weight(g, self.zero)
                for m in self.module.states(delta - c):
                    w = tuple(a + b for a, b in zip(self.module.state_weight(m), gw))
                    if self.rd.canonical(w) == self.zero:
                        out.append((m, g))
        return out

    def degree(self, state: State) -> int:
        return self.ghosts.degree(state[1])

    def label(self, state: State) -> str:
        return f"{self.module.label(state[0])} (x) {self.ghosts.label(state[1], self.basis.labels)}"

    # --- operators on vectors {state: coefficient} ---
    def module_op(self, mode, vector: Dict) -> Dict:
        out: Dict = {}
        for (m, g), c in vector.items():
            for m2, c2 in self.module.act(mode, m).items():
                vec_add(out, {(m2, g): c * c2})
        return out

    def ghost_op(self, mode, vector: Dict) -> Dict:
        odd = self.ghosts.ghost_parity(mode[1])
        out: Dict = {}
        for (m, g), c in vector.items():
            sign = -1 if odd and self.module.state_parity(m) else 1
            for g2, c2 in self.ghosts.act(mode, g).items():
                vec_add(out, {(m, g2): c * c2}, sign)
        return out

    def differential_pieces(self, state: State, delta: int) -> Dict[str, Dict]:
        p = self.basis.parities
        start = {state: LEVEL_FIELD.one}
        pieces: Dict[str, Dict] = {tag: {} for tag in PIECES}
        for i in range(self.basis.dim):
            for n in range(1, delta + 1):
                for mode_n, tag in ((n, MODULE_PLUS), (-n, MODULE_MINUS)):
                    v = self.ghost_op((PHI_STAR, i, -mode_n), start)
                    if v:
                        vec_add(pieces[tag], self.module_op((i, mode_n), v), -1 if p[i] else 1)
        modes = [n for n in range(-delta, delta + 1) if n]
        for i, j, l, c in self.structure:
            scale = QQ(-1, 2) * c * (-1 if p[i] and p[l] else 1)
            for a in modes:
                for b in modes:
                    r = -a - b
                    if not r or abs(r) > delta:
                        continue
                    v = self.ghost_op((PHI, l, r), start)
                    if not v:
                        continue
                    v = self.ghost_op((PHI_STAR, j, b), v)
                    if not v:
                        continue
                    v = self.ghost_op((PHI_STAR, i, a), v)
                    if a < 0 and b < 0:
                        tag = CUBIC_CREATE
                    elif a > 0 and b > 0:
                        tag = CUBIC_ANNIHILATE
                    else:
                        tag = CUBIC_MIXED
                    vec_add(pieces[tag], v, scale)
        return pieces

    def total_action(self, i: int, vector: Dict, delta: int) -> Dict:
        """x_{i,0} on the module plus sum (-1)^{x_j} c_ij^k :phi_k phi*_j:_0 on the ghosts."""
        p = self.basis.parities
        out = self.module_op((i, 0), vector)
        for j, terms in ((j, self.basis.bracket(i, j)) for j in range(self.basis.dim)):
            for l, c in terms.items():
                scale = c * (-1 if p[j] else 1)
                swap = -1 if self.ghosts.ghost_parity(l) and self.ghosts.ghost_parity(j) else 1
                for n in range(1, delta + 1):
                    v = self.ghost_op((PHI_STAR, j, n), vector)
                    if v:
                        vec_add(out, self.ghost_op((PHI, l, -n), v), scale)
                    v = self.ghost_op((PHI, l, n), vector)
                    if v:
                        vec_add(out, self.ghost_op((PHI_STAR, j, -n), v), scale * swap)
        return out

    # --- linear algebra on a slice ---
    def invariant_basis(self, states: List[State], delta: int) -> List[Row]:
        """Coordinates (over ``states``) of the vectors killed by every root vector."""
        pos, _, neg = self.basis.triangular
        rows: Matrix = {}
        targets: Dict[Tuple[int, State], int] = {}
        for col, state in enumerate(states):
            for i in pos + neg:
                for target, c in self.total_action(i, {state: LEVEL_FIELD.one}, delta).items():
                    r = targets.setdefault((i, target), len(targets))
                    rows.setdefault(r, {})[col] = c
        return nullspace(rows, len(states), LEVEL_FIELD.one)

    def slice(self, delta: int) -> "SemiComplexSlice":
        if delta > self.depth:
            raise TruncationError(f"Slice {delta} lies above the truncation weight {self.depth}")
        by_degree: Dict[int, List[State]] = {}
        for state in self.states(delta):
            by_degree.setdefault(self.degree(state), []).append(state)
        index = {n: {s: a for a, s in enumerate(states)} for n, states in by_degree.items()}
        pieces: Dict[str, Dict[int, Matrix]] = {tag: {} for tag in PIECES}
        for n, states in by_degree.items():
            for col, state in enumerate(states):
                for tag, image in self.differential_pieces(state, delta).items():
                    for target, c in image.items():
                        row = index.get(n + 1, {}).get(target)
                        if row is None:
                            raise ComplexError(f"Differential of {self.label(state)} leaves the slice at weight {delta}")
                        matrix = pieces[tag].setdefault(n, {})
                        entry = matrix.setdefault(row, {})
                        entry[col] = entry.get(col, 0) + c
                        if not entry[col]:
                            entry.pop(col)
        result = SemiComplexSlice(self, delta, by_degree, pieces)
        result.invariants = {n: self.invariant_basis(states, delta) for n, states in by_degree.items()}
        result.compute_cohomology()
        print(f"[RelativeComplex] {self.algebra.label} weight {delta}: "
              f"{sum(len(s) for s in by_degree.values())} states, cohomology {result.cohomology}")
        return result


def add_matrices(*matrices: Matrix) -> Matrix:
    out: Matrix = {}
    for matrix in matrices:
        for r, row in matrix.items():
            target = out.setdefault(r, {})
            for c, v in row.items():
                new = target.get(c, 0) + v
                if new:
                    target[c] = new
                else:
                    target.pop(c, None)
    return {r: row for r, row in out.items() if row}


@dataclass
class SemiComplexSlice:
    """One conformal weight of the relative complex, split by cohomological degree."""
    complex: RelativeComplex
    weight: int
    states: Dict[int, List[State]]
    pieces: Dict[str, Dict[int, Matrix]]
    invariants: Dict[int, List[Row]] = field(default_factory=dict)
    cohomology: Dict[int, int] = field(default_factory=dict)

    def differential(self, n: int, tags=PIECES) -> Matrix:
        return add_matrices(*(self.pieces[tag].get(n, {}) for tag in tags))

    def degrees(self) -> List[int]:
        return sorted(self.states)

    def images(self, n: int, vectors: List[Row], tags=PIECES) -> List[Row]:
        matrix = self.differential(n, tags)
        return [sdm_apply(matrix, v) for v in vectors]

    def compute_cohomology(self):
        ranks = {}
        for n in self.degrees():
            images = self.images(n, self.invariants[n])
            for v, image in zip(self.invariants[n], images):
                if image and sdm_apply(self.differential(n + 1), image):
                    raise ComplexError(f"d^2 != 0 on an invariant vector of degree {n} at weight {self.weight}")
            ranks[n] = exact_rank(dict(enumerate(images)), LEVEL_FIELD.one)
        self.cohomology = {
            n: len(self.invariants[n]) - ranks[n] - ranks.get(n - 1, 0) for n in self.degrees()
        }

    def euler_characteristic(self) -> int:
        return sum((-1) ** (n % 2) * len(self.invariants[n]) for n in self.degrees())

    def cohomology_euler(self) -> int:
        return sum((-1) ** (n % 2) * d for n, d in self.cohomology.items())

    def to_json(self) -> Dict:
        return {
            "weight": self.weight,
            "degrees": [
                {"degree": n, "states": len(self.states[n]), "invariants": len(self.invariants[n]),
                 "cohomology": self.cohomology[n]}
                for n in self.degrees()
            ],
        }


@dataclass
class SemicohReport:
    algebra: AlgebraId
    lam: Weight
    mu: Weight
    max_weight: int
    dual_level: object
    slices: List[SemiComplexSlice]
    expected: int
    bottom_shift: object
    witness: Optional[Dict] = None

    def total(self, degree: int) -> int:
        return sum(s.cohomology.get(degree, 0) for s in self.slices)

    @property
    def formal(self) -> bool:
        """Cohomology only in degree 0, of total dimension delta_{lambda, mu^dagger}."""
        off = any(d for s in self.slices for n, d in s.cohomology.items() if n != 0)
        return not off and self.total(0) == self.expected

    @property
    def passed(self) -> bool:
        return self.formal and (self.expected == 0 or self.witness is not None)

    def to_json(self) -> Dict:
        return {
            "algebra": self.algebra.label,
            "lambda": list(self.lam.coords),
            "mu": list(self.mu.coords),
            "max_weight": self.max_weight,
            "dual_level": format_level(self.dual_level),
            "bottom_shift": format_level(self.bottom_shift),
            "expected_classes": self.expected,
            "slices": [s.to_json() for s in self.slices],
            "witness": self.witness,
            "untrusted_degrees": [],
            "passed": self.passed,
        }


def _witness(slice0: SemiComplexSlice, lam: Weight, mu: Weight) -> Optional[Dict]:
    """The class C[str_mu] at the bottom weight: closed, not exact, and unique up to scalar."""
    _, str_class = trivial_multiplicity(lam, mu)
    vectors = slice0.invariants.get(0, [])
    if str_class is None or len(vectors) != 1:
        return None
    vector = vectors[0]
    if any(slice0.images(0, [vector])):
        raise ComplexError("The bottom invariant is not closed")
    exact = slice0.images(-1, slice0.invariants.get(-1, [])) if -1 in slice0.states else []
    if exact_rank(dict(enumerate(exact + [vector])), LEVEL_FIELD.one) == exact_rank(dict(enumerate(exact)), LEVEL_FIELD.one):
        raise ComplexError("The bottom invariant is exact")
    states = slice0.states[0]
    complex_ = slice0.complex
    return {
        "class": f"str_{list(str_class.weight.coords)}",
        "weight": slice0.weight,
        "vector": [
            {"state": complex_.label(states[a]), "coefficient": format_level_scalar(c)}
            for a, c in sorted(vector.items())
        ],
    }


def relative_semicoh(algebra: AlgebraId, lam: Weight, mu: Weight, level=k, max_weight: int = 2) -> SemicohReport:
    """Cohomology of every slice of weight <= max_weight, with the H^0 class witness."""
    lam.require_dominant()
    mu.require_dominant()
    complex_ = RelativeComplex(algebra, lam, mu, level, max_weight)
    slices = Parallel(n_jobs=config.HOOKDUAL_THREADS, prefer="threads")(
        delayed(complex_.slice)(delta) for delta in range(max_weight + 1)
    )
    expected = 1 if dual_weight(mu) == lam else 0
    shift = delta_lowest(lam, complex_.level) + delta_lowest(mu, complex_.dual_level)
    report = SemicohReport(algebra, lam, mu, max_weight, complex_.dual_level, list(slices), expected, shift.value)
    if expected:
        report.witness = _witness(slices[0], lam, mu)
    return report


__all__ = ["RelativeComplex", "SemiComplexSlice", "SemicohReport", "relative_semicoh", "ghost_level", "PIECES"]
