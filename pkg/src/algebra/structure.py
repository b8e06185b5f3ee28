"""Matrix realizations and structure constants of the supported (super)algebras.

gl/sl use elementary matrices, so_N is antisymmetric with respect to the
antidiagonal form, sp_2m and osp(1|2m) preserve the (super)symplectic form
with J = [[0, I], [-I, 0]] on the symplectic block. Every basis element is a
weight vector for the diagonal Cartan subalgebra; weights are recorded in
epsilon coordinates.
"""
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ

from src.utils.errors import ComplexError, UnsupportedAlgebraError
from .ids import AlgebraId, Family
from .linalg import independent_columns, inverse, solve
from .roots import RootDatum

SparseMatrix = Dict[Tuple[int, int], object]

# form normalization -> multiplier of the supertrace
FORM_FACTORS = {
    "tr": QQ(1),
    "str": QQ(1),
    "1/2tr": QQ(1, 2),
    "1/2str": QQ(1, 2),
    "-str": QQ(-1),
}

KAPPA0 = {
    Family.GL: "tr",
    Family.SL: "tr",
    Family.SO_ODD: "1/2tr",
    Family.SO_EVEN: "1/2tr",
    Family.SP: "tr",
    Family.OSP_1_2M: "-str",
}


# --- sparse matrix helpers ---

def mat_mul(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    by_row = defaultdict(list)
    for (r, c), v in b.items():
        by_row[r].append((c, v))
    out: SparseMatrix = {}
    for (r, c), v in a.items():
        for c2, w in by_row.get(c, ()):
            out[(r, c2)] = out.get((r, c2), QQ.zero) + v * w
    return {key: v for key, v in out.items() if v}


def mat_lin(*terms) -> SparseMatrix:
    """Linear combination of (coefficient, matrix) pairs."""
    out: SparseMatrix = {}
    for coeff, mat in terms:
        for key, v in mat.items():
            out[key] = out.get(key, QQ.zero) + coeff * v
    return {key: v for key, v in out.items() if v}


def elementary(r: int, c: int) -> SparseMatrix:
    return {(r, c): QQ(1)}


@dataclass
class Realization:
    """Defining representation data of a matrix (super)algebra."""
    size: int
    index_parity: List[int]
    index_weight: List[Tuple]          # epsilon weight of each standard basis vector
    eps_dim: int
    transpose_signs: List[int]         # D = diag(signs) in  X -> D X^T D^-1
    elements: List[Tuple[str, SparseMatrix]] = field(default_factory=list)
    cartan: List[int] = field(default_factory=list)  # positions in `elements`

    @property
    def eps_index(self) -> List[int]:
        """For each j, the standard basis index of weight +epsilon_j."""
        out = []
        for j in range(self.eps_dim):
            unit = _eps(self.eps_dim, j)
            out.append(next(idx for idx, w in enumerate(self.index_weight) if tuple(w) == unit))
        return out


def _eps(eps_dim: int, i: Optional[int], sign: int = 1) -> Tuple:
    vec = [QQ(0)] * eps_dim
    if i is not None:
        vec[i] = QQ(sign)
    return tuple(vec)


def _realize_gl_sl(m: int, special: bool) -> Realization:
    real = Realization(m, [0] * m, [_eps(m, i) for i in range(m)], m, [1] * m)
    if special:
        for i in range(m - 1):
            real.cartan.append(len(real.elements))
            real.elements.append((f"h{i + 1}", mat_lin((1, elementary(i, i)), (-1, elementary(i + 1, i + 1)))))
    else:
        for i in range(m):
            real.cartan.append(len(real.elements))
            real.elements.append((f"E{i + 1}{i + 1}", elementary(i, i)))
    for i, j in product(range(m), repeat=2):
        if i != j:
            real.elements.append((f"E{i + 1}{j + 1}", elementary(i, j)))
    return real


def _realize_so(m: int, odd: bool) -> Realization:
    size = 2 * m + 1 if odd else 2 * m
    weights = []
    for i in range(size):
        if i < m:
            weights.append(_eps(m, i))
        elif odd and i == m:
            weights.append(_eps(m, None))
        else:
            weights.append(_eps(m, size - 1 - i, -1))
    real = Realization(size, [0] * size, weights, m, [1] * size)
    bar = lambda i: size - 1 - i
    for i in range(m):
        real.cartan.append(len(real.elements))
        real.elements.append((f"h{i + 1}", mat_lin((1, elementary(i, i)), (-1, elementary(bar(i), bar(i))))))
    for i, j in product(range(size), repeat=2):
        if i == j or i + j == size - 1:
            continue
        if (i, j) > (bar(j), bar(i)):
            continue
        mat = mat_lin((1, elementary(i, j)), (-1, elementary(bar(j), bar(i))))
        real.elements.append((f"F{i + 1},{j + 1}", mat))
    return real


def _symplectic_elements(m: int, offset: int) -> List[Tuple[str, SparseMatrix]]:
    """sp_2m on indices offset..offset+2m-1, preserving J = [[0, I], [-I, 0]]."""
    out = []
    a = lambda i: offset + i
    b = lambda i: offset + m + i
    for i in range(m):
        out.append((f"h{i + 1}", mat_lin((1, elementary(a(i), a(i))), (-1, elementary(b(i), b(i))))))
    for i, j in product(range(m), repeat=2):
        if i != j:
            out.append((f"A{i + 1}{j + 1}", mat_lin((1, elementary(a(i), a(j))), (-1, elementary(b(j), b(i))))))
    for i in range(m):
        for j in range(i, m):
            if i == j:
                out.append((f"B{i + 1}{i + 1}", elementary(a(i), b(i))))
                out.append((f"C{i + 1}{i + 1}", elementary(b(i), a(i))))
            else:
                out.append((f"B{i + 1}{j + 1}", mat_lin((1, elementary(a(i), b(j))), (1, elementary(a(j), b(i))))))
                out.append((f"C{i + 1}{j + 1}", mat_lin((1, elementary(b(i), a(j))), (1, elementary(b(j), a(i))))))
    return out


def _realize_sp(m: int) -> Realization:
    size = 2 * m
    weights = [_eps(m, i) for i in range(m)] + [_eps(m, i, -1) for i in range(m)]
    real = Realization(size, [0] * size, weights, m, [1] * size)
    real.elements = _symplectic_elements(m, 0)
    real.cartan = list(range(m))
    return real


def _realize_osp(m: int) -> Realization:
    size = 2 * m + 1
    weights = [_eps(m, None)] + [_eps(m, i) for i in range(m)] + [_eps(m, i, -1) for i in range(m)]
    parity = [0] + [1] * (2 * m)
    # the transpose of osp needs the sign twist D = diag(1, I, -I)
    signs = [1] + [1] * m + [-1] * m
    real = Realization(size, parity, weights, m, signs)
    real.elements = _symplectic_elements(m, 1)
    real.cartan = list(range(m))
    for i in range(m):
        real.elements.append((f"x{i + 1}", mat_lin((1, elementary(1 + i, 0)), (-1, elementary(0, 1 + m + i)))))
        real.elements.append((f"y{i + 1}", mat_lin((1, elementary(1 + m + i, 0)), (1, elementary(0, 1 + i)))))
    return real


def realize(algebra: AlgebraId) -> Realization:
    m = algebra.m
    fam = algebra.family
    if fam == Family.GL:
        return _realize_gl_sl(m, special=False)
    if fam == Family.SL:
        if m < 2:
            raise UnsupportedAlgebraError("sl1 is the zero algebra and has no realization")
        return _realize_gl_sl(m, special=True)
    if fam == Family.SO_ODD:
        return _realize_so(m, odd=True)
    if fam == Family.SO_EVEN:
        return _realize_so(m, odd=False)
    if fam == Family.SP:
        return _realize_sp(m)
    if fam == Family.OSP_1_2M:
        return _realize_osp(m)
    raise UnsupportedAlgebraError(f"Unsupported family {fam}")


class SuperBasis:
    """A Lie superalgebra given by a homogeneous basis and structure constants.

    ``brackets[(i, j)]`` is a tuple of ``(k, c_ij^k)``; ``form[(i, j)]`` is the
    invariant form on basis pairs. For matrix algebras the defining matrices,
    epsilon weights and the Cartan evaluation functionals are kept as well.
    """

    def __init__(self, labels: Sequence[str], parities: Sequence[int],
                 brackets: Dict[Tuple[int, int], Tuple[Tuple[int, object], ...]],
                 form: Dict[Tuple[int, int], object],
                 weights: Optional[Sequence[Tuple]] = None,
                 cartan_indices: Sequence[int] = (),
                 algebra: Optional[AlgebraId] = None,
                 matrices: Optional[Sequence[SparseMatrix]] = None,
                 realization: Optional[Realization] = None,
                 form_normalization: str = "kappa0"):
        self.labels = list(labels)
        self.parities = [int(p) % 2 for p in parities]
        self.brackets = {key: tuple(v) for key, v in brackets.items() if v}
        self.form = {key: v for key, v in form.items() if v}
        self.weights = [tuple(w) for w in weights] if weights is not None else None
        self.cartan_indices = list(cartan_indices)
        self.algebra = algebra
        self.matrices = list(matrices) if matrices is not None else None
        self.realization = realization
        self.form_normalization = form_normalization
        self._height = self._height_functional()
        self.triangular = self._triangular()

    @property
    def dim(self) -> int:
        return len(self.labels)

    def bracket(self, i: int, j: int) -> Dict[int, object]:
        return dict(self.brackets.get((i, j), ()))

    def form_value(self, i: int, j: int):
        return self.form.get((i, j), QQ.zero)

    def height(self, i: int):
        if self.weights is None:
            return QQ.zero
        return sum((w * h for w, h in zip(self.weights[i], self._height)), QQ.zero)

    def _height_functional(self) -> Tuple:
        if self.weights is None or not self.weights:
            return ()
        d = len(self.weights[0])
        # strictly dominant regular vector in epsilon coordinates
        return tuple(QQ(d - i) for i in range(d))

    def _triangular(self) -> Tuple[List[int], List[int], List[int]]:
        if self.weights is None:
            return [], list(range(self.dim)), []
        pos = [i for i in range(self.dim) if self.height(i) > 0]
        neg = [i for i in range(self.dim) if self.height(i) < 0]
        zero = [i for i in range(self.dim) if self.height(i) == 0]
        return pos, zero, neg

    def cartan_value(self, i: int, eps_weight: Sequence) -> object:
        """lambda(H_i) for a weight given in epsilon coordinates.

        epsilon_j(H) is read off the one index of weight +epsilon_j; the
        partner index of weight -epsilon_j in so, sp and osp carries -H there.
        """
        if self.matrices is None or self.realization is None:
            raise UnsupportedAlgebraError("Cartan evaluation needs a matrix realization")
        real = self.realization
        mat = self.matrices[i]
        total = QQ.zero
        for j, a in enumerate(eps_weight):
            if a:
                total += a * mat.get((real.eps_index[j], real.eps_index[j]), QQ.zero)
        return total

    def coordinates(self, mat: SparseMatrix) -> Dict[int, object]:
        """Coordinates of a matrix of the algebra in this basis (exact)."""
        if self.matrices is None:
            raise UnsupportedAlgebraError("coordinates need a matrix realization")
        return _decompose(self, mat)

    def is_matrix_algebra(self) -> bool:
        return self.matrices is not None

    def __repr__(self) -> str:
        name = self.algebra.label if self.algebra else "anonymous"
        return f"SuperBasis({name}, dim={self.dim}, odd={sum(self.parities)})"


def _pivot(mat: SparseMatrix) -> Tuple[int, int]:
    return min(mat)


def _decompose(basis: "SuperBasis", mat: SparseMatrix) -> Dict[int, object]:
    cache = getattr(basis, "_decomp_cache", None)
    if cache is None:
        cache = _build_decomposition_data(basis)
        basis._decomp_cache = cache
    pivots, cartan_rows, cartan_solver = cache
    coords: Dict[int, object] = {}
    for i, (pos, value) in pivots.items():
        v = mat.get(pos)
        if v:
            coords[i] = v / value
    if cartan_rows:
        diag = {r: mat.get((idx, idx), QQ.zero) for r, idx in enumerate(cartan_rows)}
        for i, row in cartan_solver.items():
            v = sum((row.get(r, QQ.zero) * diag[r] for r in diag), QQ.zero)
            if v:
                coords[i] = v
    # residual check
    rebuilt = mat_lin(*[(c, basis.matrices[i]) for i, c in coords.items()])
    if mat_lin((1, mat), (-1, rebuilt)):
        raise ComplexError(f"Matrix is not in the span of the {basis!r} basis")
    return coords


def _build_decomposition_data(basis: "SuperBasis"):
    cartan = set(basis.cartan_indices)
    pivots = {}
    for i, mat in enumerate(basis.matrices):
        if i in cartan:
            continue
        pos = _pivot(mat)
        pivots[i] = (pos, mat[pos])
    if not cartan:
        return pivots, [], {}
    size = basis.realization.size
    cartan_list = list(basis.cartan_indices)
    # rows: Cartan elements, columns: diagonal positions
    diag = {n: {idx: basis.matrices[i][(idx, idx)] for idx in range(size) if basis.matrices[i].get((idx, idx))}
            for n, i in enumerate(cartan_list)}
    positions = independent_columns(diag, QQ.one)[:len(cartan_list)]
    square = {n: {c: diag[n][idx] for c, idx in enumerate(positions) if idx in diag[n]} for n in range(len(cartan_list))}
    # c^T square = d  =>  c = d square^-1
    inv = inverse(square, len(cartan_list), QQ.one)
    solver = {}
    for n, i in enumerate(cartan_list):
        solver[i] = {r: inv[r][n] for r in range(len(positions)) if n in inv.get(r, {})}
    return pivots, positions, solver


def _supertrace(basis: "SuperBasis", mat: SparseMatrix):
    parity = basis.realization.index_parity
    return sum((-v if parity[idx] else v for (idx, jdx), v in mat.items() if idx == jdx), QQ.zero)


def _element_parity(real: Realization, mat: SparseMatrix) -> int:
    parities = {(real.index_parity[r] + real.index_parity[c]) % 2 for (r, c) in mat}
    if len(parities) != 1:
        raise UnsupportedAlgebraError("basis element is not homogeneous")
    return parities.pop()


def _element_weight(real: Realization, mat: SparseMatrix) -> Tuple:
    weights = {tuple(a - b for a, b in zip(real.index_weight[r], real.index_weight[c])) for (r, c) in mat}
    if len(weights) != 1:
        # Cartan elements are diagonal: weight zero
        return tuple(QQ(0) for _ in range(real.eps_dim))
    return weights.pop()


def build_algebra(algebra: AlgebraId, form_normalization: str = "kappa0"):
    """Returns (SuperBasis, RootDatum) for a supported algebra.

    ``form_normalization`` is "kappa0" (the normalized form) or one of the
    hook-table normalizations tr, 1/2tr, str, -str, 1/2str.
    """
    real = realize(algebra)
    norm = KAPPA0[algebra.family] if form_normalization == "kappa0" else form_normalization
    if norm not in FORM_FACTORS:
        raise UnsupportedAlgebraError(f"Unknown form normalization '{form_normalization}'")
    factor = FORM_FACTORS[norm]

    labels = [lab for lab, _ in real.elements]
    mats = [mat for _, mat in real.elements]
    parities = [_element_parity(real, mat) for mat in mats]
    weights = [_element_weight(real, mat) if i not in real.cartan else tuple(QQ(0) for _ in range(real.eps_dim))
               for i, mat in enumerate(mats)]

    # deterministic order: (height, weight, parity, label)
    h = tuple(QQ(real.eps_dim - i) for i in range(real.eps_dim))
    height = lambda w: sum((a * b for a, b in zip(w, h)), QQ.zero)
    order = sorted(range(len(mats)), key=lambda i: (height(weights[i]), weights[i], parities[i], i))
    labels = [labels[i] for i in order]
    mats = [mats[i] for i in order]
    parities = [parities[i] for i in order]
    weights = [weights[i] for i in order]
    cartan = [order.index(c) for c in real.cartan]

    shell = SuperBasis(labels, parities, {}, {}, weights, cartan, algebra, mats, real, norm)

    brackets = {}
    for i, j in product(range(len(mats)), repeat=2):
        sign = -1 if parities[i] and parities[j] else 1
        comm = mat_lin((1, mat_mul(mats[i], mats[j])), (-sign, mat_mul(mats[j], mats[i])))
        if comm:
            coords = shell.coordinates(comm)
            brackets[(i, j)] = tuple(sorted(coords.items()))

    form = {}
    for i, j in product(range(len(mats)), repeat=2):
        value = factor * _supertrace(shell, mat_mul(mats[i], mats[j]))
        if value:
            form[(i, j)] = value

    basis = SuperBasis(labels, parities, brackets, form, weights, cartan, algebra, mats, real, norm)
    basis._decomp_cache = getattr(shell, "_decomp_cache", None)
    return basis, RootDatum(algebra)


def basis_from_matrices(labels: Sequence[str], matrices: Sequence[SparseMatrix], index_parity: Sequence[int],
                        form_factor=QQ(1)) -> SuperBasis:
    """An abstract SuperBasis spanned by given homogeneous supermatrices.

    Used for algebras outside the supported families (gl(1|1) and friends)
    that only serve as test beds for the complexes.
    """
    size = len(index_parity)
    real = Realization(size, list(index_parity), [() for _ in range(size)], 0, [1] * size)
    parities = [_element_parity(real, mat) for mat in matrices]
    positions = sorted({pos for mat in matrices for pos in mat})
    col = {pos: n for n, pos in enumerate(positions)}
    # columns: basis elements, rows: matrix positions
    system = {}
    for j, mat in enumerate(matrices):
        for pos, v in mat.items():
            system.setdefault(col[pos], {})[j] = v
    brackets = {}
    for i, j in product(range(len(matrices)), repeat=2):
        sign = -1 if parities[i] and parities[j] else 1
        comm = mat_lin((1, mat_mul(matrices[i], matrices[j])), (-sign, mat_mul(matrices[j], matrices[i])))
        if not comm:
            continue
        if any(pos not in col for pos in comm):
            raise ComplexError(f"[{labels[i]}, {labels[j]}] leaves the span of the given matrices")
        coords = solve(system, {col[pos]: v for pos, v in comm.items()}, len(matrices), QQ.one)
        if coords is None:
            raise ComplexError(f"[{labels[i]}, {labels[j]}] leaves the span of the given matrices")
        brackets[(i, j)] = tuple(sorted(coords.items()))
    form = {}
    for i, j in product(range(len(matrices)), repeat=2):
        prod_ij = mat_mul(matrices[i], matrices[j])
        value = form_factor * sum((-v if index_parity[r] else v for (r, c), v in prod_ij.items() if r == c), QQ.zero)
        if value:
            form[(i, j)] = value
    return SuperBasis(labels, parities, brackets, form)
