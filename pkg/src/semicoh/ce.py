"""Chevalley-Eilenberg complexes of Lie superalgebras with explicit super-signs.

Cochains are C^n = Hom(Sym^n(Pi g), M) and chains C_n = M (x) Sym^n(Pi g).
A basis monomial of Sym^n(Pi g) is a sorted tuple of algebra indices; an
index may repeat only when its element is odd, because Pi x is then even.
With k_i = x_1 + ... + x_i + i (parities) the differentials are

    d_n f(x_1..x_{n+1}) = sum_i (-1)^{A_i} x_i f(..^i..) + sum_{i<j} (-1)^{A_ij} f([x_i, x_j] ..^i..^j..)
    A_i  = x_i + (f + k_{i-1})(x_i + 1)
    A_ij = f + (k_{i-1} + 1)(x_i + 1) + (k_{j-1} + x_i + 1)(x_j + 1)

    d_n(a x_1..x_n) = sum_i (-1)^{B_i} (x_i a) ..^i.. + sum_{i<j} (-1)^{B_ij} a [x_i, x_j] ..^i..^j..
    B_i  = (a + k_{i-1})(x_i + 1)
    B_ij = 1 + a + (k_{i-1} + 1)(x_i + 1) + (k_{j-1} + x_i + 1)(x_j + 1)

Every complex carries an integer grading (conformal weight for loop
algebras, zero otherwise) that the differentials preserve, so each graded
piece is a finite subcomplex and its cohomology is exact.
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from sympy import QQ

from src.algebra.linalg import Matrix, exact_rank, sdm_is_zero, sdm_matmul
from src.algebra.pbw import CREATE, PBWModule
from src.algebra.structure import SuperBasis
from src.reps.modules import SimpleModule
from src.utils.errors import ComplexError

COCHAIN, CHAIN = "cochain", "chain"

Word = Tuple[int, ...]


@dataclass
class LieData:
    """A finite homogeneous basis with brackets and an integer grading."""
    labels: List[str]
    parities: List[int]
    bracket: Callable[[int, int], Dict[int, object]]
    grades: List[int]

    @property
    def dim(self) -> int:
        return len(self.labels)

    @classmethod
    def from_basis(cls, basis: SuperBasis) -> "LieData":
        return cls(list(basis.labels), list(basis.parities), basis.bracket, [0] * basis.dim)


@dataclass
class ModuleData:
    """A module through its basis states and an action callback."""
    states: List[Hashable]
    parity: Callable[[Hashable], int]
    act: Callable[[int, Hashable], Dict[Hashable, object]]
    grade: Callable[[Hashable], int] = lambda state: 0
    one: object = QQ.one


def trivial_module(one=QQ.one) -> ModuleData:
    return ModuleData([0], lambda s: 0, lambda i, s: {}, one=one)


def simple_module_data(module: SimpleModule) -> ModuleData:
    return ModuleData(list(range(module.dim)), module.state_parity, module.act)


def sorted_monomials(parities: Sequence[int], n: int, repeat_odd: bool,
                     grades: Optional[Sequence[int]] = None, max_grade: Optional[int] = None) -> List[Word]:
    """Sorted n-tuples of indices; repeats allowed for odd (repeat_odd) or even elements.

    Sym(Pi g) repeats odd elements of g, PBW monomials of U(g) repeat even ones.
    With ``max_grade`` the total grade is bounded by |max_grade|.
    """
    dim = len(parities)
    out: List[Word] = []

    def extend(start: int, acc: Word, total: int):
        if len(acc) == n:
            out.append(acc)
            return
        for i in range(start, dim):
            if acc and acc[-1] == i and bool(parities[i]) != repeat_odd:
                continue
            g = total + (abs(grades[i]) if grades else 0)
            if max_grade is not None and g > max_grade:
                continue
            extend(i, acc + (i,), g)

    extend(0, (), 0)
    return out


def sort_word(word: Sequence[int], parities: Sequence[int]) -> Tuple[Optional[Word], int]:
    """Sorted monomial of a word in Sym(Pi g) and the sign of the reordering.

    Returns (None, 0) when the word contains an odd element of Pi g twice.
    """
    w = list(word)
    sign = 1
    for a in range(1, len(w)):
        b = a
        while b > 0 and w[b - 1] > w[b]:
            # Pi x and Pi y are both odd exactly when x and y are even
            if not parities[w[b - 1]] and not parities[w[b]]:
                sign = -sign
            w[b - 1], w[b] = w[b], w[b - 1]
            b -= 1
    for a in range(1, len(w)):
        if w[a] == w[a - 1] and not parities[w[a]]:
            return None, 0
    return tuple(w), sign


def _k_prefix(word: Word, parities: Sequence[int]) -> List[int]:
    """K[t] = k_t = parities of the first t letters plus t."""
    out = [0]
    for t, x in enumerate(word):
        out.append(out[-1] + parities[x] + 1)
    return out


def _pi_parity(word: Word, parities: Sequence[int]) -> int:
    return sum(parities[x] + 1 for x in word) % 2


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _add(matrix: Matrix, row: int, col: int, value):
    if not value:
        return
    target = matrix.setdefault(row, {})
    new = target.get(col, 0) + value
    if new:
        target[col] = new
    else:
        target.pop(col)
        if not target:
            matrix.pop(row)


@dataclass
class CEComplex:
    algebra: LieData
    module: ModuleData
    direction: str
    max_degree: int
    spaces: Dict[int, List[Tuple]] = field(default_factory=dict)
    grades: Dict[int, List[int]] = field(default_factory=dict)
    differentials: Dict[int, Matrix] = field(default_factory=dict)

    def dimension(self, n: int, grade: Optional[int] = None) -> int:
        if grade is None:
            return len(self.spaces.get(n, []))
        return sum(1 for g in self.grades.get(n, []) if g == grade)

    def graded_rank(self, n: int, grade: int) -> int:
        """Rank of the differential leaving degree n, restricted to one grade."""
        matrix = self.differentials.get(n)
        if not matrix:
            return 0
        source = self.grades[n]
        block = {r: {c: v for c, v in row.items() if source[c] == grade} for r, row in matrix.items()}
        return exact_rank({r: row for r, row in block.items() if row}, self.module.one)

    def all_grades(self) -> List[int]:
        return sorted({g for gs in self.grades.values() for g in gs})

    def cohomology(self) -> Dict[int, Dict[int, int]]:
        """grade -> degree -> dimension for degrees 0..max_degree."""
        out: Dict[int, Dict[int, int]] = {}
        for g in self.all_grades():
            dims = {}
            for n in range(self.max_degree + 1):
                size = self.dimension(n, g)
                if self.direction == COCHAIN:
                    leaving = self.graded_rank(n, g)
                    entering = self.graded_rank(n - 1, g) if n > 0 else 0
                else:
                    leaving = self.graded_rank(n, g) if n > 0 else 0
                    entering = self.graded_rank(n + 1, g)
                dims[n] = size - leaving - entering
            out[g] = dims
        return out

    def total_cohomology(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for dims in self.cohomology().values():
            for n, d in dims.items():
                out[n] = out.get(n, 0) + d
        return out

    def check_square_zero(self):
        """Raises ComplexError at the first degree where the differential does not square to zero."""
        if self.direction == COCHAIN:
            pairs = [(n + 1, n) for n in range(self.max_degree)]
        else:
            pairs = [(n, n + 1) for n in range(1, self.max_degree + 1)]
        for outer, inner in pairs:
            if outer in self.differentials and inner in self.differentials:
                if not sdm_is_zero(sdm_matmul(self.differentials[outer], self.differentials[inner])):
                    raise ComplexError(f"{self.direction} differential squares to a nonzero map at degree {inner}")


def _cochain_grade(lie: LieData, module: ModuleData, word: Word, state) -> int:
    return module.grade(state) - sum(lie.grades[x] for x in word)


def _chain_grade(lie: LieData, module: ModuleData, word: Word, state) -> int:
    return module.grade(state) + sum(lie.grades[x] for x in word)


def _incoming(lie: LieData, module: ModuleData) -> Dict[Tuple[int, Hashable], List[Tuple[Hashable, object]]]:
    """(x, target state) -> [(source state, coefficient)] of the module action."""
    out: Dict[Tuple[int, Hashable], List] = {}
    for x in range(lie.dim):
        for b in module.states:
            for b2, c in module.act(x, b).items():
                if c:
                    out.setdefault((x, b2), []).append((b, c))
    return out


def _cochain_differential(lie: LieData, module: ModuleData, target: List[Tuple], index: Dict[Tuple, int],
                          incoming: Dict) -> Matrix:
    p = lie.parities
    matrix: Matrix = {}
    for r, (word, b2) in enumerate(target):
        K = _k_prefix(word, p)
        for i, x in enumerate(word):
            rest = word[:i] + word[i + 1:]
            rest_parity = _pi_parity(rest, p)
            for b, c in incoming.get((x, b2), ()):
                col = index.get((rest, b))
                if col is None:
                    continue
                fbar = (module.parity(b) + rest_parity) % 2
                A = p[x] + (fbar + K[i]) * (p[x] + 1)
                _add(matrix, r, col, _sign(A) * c)
        for i in range(len(word)):
            for j in range(i + 1, len(word)):
                x, y = word[i], word[j]
                rest = word[:i] + word[i + 1:j] + word[j + 1:]
                for z, c in lie.bracket(x, y).items():
                    mono, s = sort_word((z,) + rest, p)
                    if mono is None:
                        continue
                    col = index.get((mono, b2))
                    if col is None:
                        continue
                    fbar = (module.parity(b2) + _pi_parity(mono, p)) % 2
                    A = fbar + (K[i] + 1) * (p[x] + 1) + (K[j] + p[x] + 1) * (p[y] + 1)
                    _add(matrix, r, col, _sign(A) * s * c)
    return matrix


def _chain_differential(lie: LieData, module: ModuleData, source: List[Tuple], index: Dict[Tuple, int]) -> Matrix:
    p = lie.parities
    matrix: Matrix = {}
    for col, (b, word) in enumerate(source):
        K = _k_prefix(word, p)
        abar = module.parity(b)
        for i, x in enumerate(word):
            rest = word[:i] + word[i + 1:]
            B = (abar + K[i]) * (p[x] + 1)
            for b2, c in module.act(x, b).items():
                row = index.get((b2, rest))
                if row is None:
                    raise ComplexError(f"Chain differential leaves the basis at {(b2, rest)}")
                _add(matrix, row, col, _sign(B) * c)
        for i in range(len(word)):
            for j in range(i + 1, len(word)):
                x, y = word[i], word[j]
                rest = word[:i] + word[i + 1:j] + word[j + 1:]
                B = 1 + abar + (K[i] + 1) * (p[x] + 1) + (K[j] + p[x] + 1) * (p[y] + 1)
                for z, c in lie.bracket(x, y).items():
                    mono, s = sort_word((z,) + rest, p)
                    if mono is None:
                        continue
                    row = index.get((b, mono))
                    if row is None:
                        raise ComplexError(f"Chain differential leaves the basis at {(b, mono)}")
                    _add(matrix, row, col, _sign(B) * s * c)
    return matrix


def build_ce(algebra: LieData, module: ModuleData, direction: str, max_degree: int,
             max_grade: Optional[int] = None, keep: Optional[Callable[[Hashable, Word], bool]] = None) -> CEComplex:
    """Builds the complex in degrees 0..max_degree + 1 and checks that it squares to zero.

    ``max_grade`` keeps only graded pieces of grade <= max_grade; since the
    differentials preserve the grade this is a subcomplex. ``keep`` selects a
    subcomplex of chains (a filtration piece); images leaving it raise.
    """
    if direction not in (COCHAIN, CHAIN):
        raise ComplexError(f"Unknown direction '{direction}'")
    grade_of = _cochain_grade if direction == COCHAIN else _chain_grade
    complex_ = CEComplex(algebra, module, direction, max_degree)
    for n in range(max_degree + 2):
        space, grades = [], []
        for word in sorted_monomials(algebra.parities, n, repeat_odd=True, grades=algebra.grades, max_grade=max_grade):
            for state in module.states:
                g = grade_of(algebra, module, word, state)
                if max_grade is not None and g > max_grade:
                    continue
                if keep is not None and not keep(state, word):
                    continue
                space.append((word, state) if direction == COCHAIN else (state, word))
                grades.append(g)
        complex_.spaces[n] = space
        complex_.grades[n] = grades

    indexes = {n: {key: i for i, key in enumerate(space)} for n, space in complex_.spaces.items()}
    if direction == COCHAIN:
        incoming = _incoming(algebra, module)
        for n in range(max_degree + 1):
            complex_.differentials[n] = _cochain_differential(algebra, module, complex_.spaces[n + 1], indexes[n], incoming)
    else:
        for n in range(1, max_degree + 2):
            complex_.differentials[n] = _chain_differential(algebra, module, complex_.spaces[n], indexes[n - 1])
    _check_homogeneous(complex_)
    complex_.check_square_zero()
    return complex_


def _check_homogeneous(complex_: CEComplex):
    for n, matrix in complex_.differentials.items():
        target_degree = n + 1 if complex_.direction == COCHAIN else n - 1
        rows, cols = complex_.grades[target_degree], complex_.grades[n]
        for r, row in matrix.items():
            for c in row:
                if rows[r] != cols[c]:
                    raise ComplexError(f"Differential leaving degree {n} mixes grades {cols[c]} and {rows[r]}")


# --- coefficient modules used by the loop and free-module checks ---

def enveloping_module(basis: SuperBasis, max_length: int) -> Tuple[ModuleData, PBWModule]:
    """U(g) as a left module over itself, PBW monomials up to ``max_length``."""
    engine = PBWModule(
        kind=lambda i: CREATE,
        parity=lambda i: basis.parities[i],
        order=lambda i: i,
        bracket=lambda a, b: (basis.bracket(a, b), 0),
    )
    states = [w for n in range(max_length + 1) for w in sorted_monomials(basis.parities, n, repeat_odd=False)]

    def act(i, mono):
        return engine.create_monomial(i, mono)

    return ModuleData(states, engine.monomial_parity, act), engine


def free_module_homology(basis: SuperBasis, filtration: int) -> Dict[int, int]:
    """Homology of the filtration piece sum_{a + n <= p} U_{<=a} (x) Sym^n of the chain complex of U(g).

    Left multiplication raises the PBW length by at most one, so the pieces
    are subcomplexes, and every piece has homology C in degree 0.
    """
    module, _ = enveloping_module(basis, filtration)
    complex_ = build_ce(LieData.from_basis(basis), module, CHAIN, filtration,
                        keep=lambda mono, word: len(mono) + len(word) <= filtration)
    return complex_.total_cohomology()
