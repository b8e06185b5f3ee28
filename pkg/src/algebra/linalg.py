"""Exact linear algebra on sympy's sparse ``SDM`` matrices.

The engines keep their matrices as plain dict-of-dicts ``{row: {col: value}}``
without stored zeros; the helpers here wrap them into ``SDM`` over the domain
of the given ``one`` (QQ or Q(k)) and hand the elimination to sympy. Ranks over
Q(k) clear denominators first and use the fraction-free ``rref_den`` over Q[k].
"""
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.fields import FracElement
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError
from sympy.polys.matrices.sdm import SDM

Row = Dict[int, object]
Matrix = Dict[int, Row]


def domain_of(one):
    """QQ for rationals, the fraction field domain for elements of Q(k)."""
    if isinstance(one, FracElement):
        return one.field.to_domain()
    return QQ


def _cleaned(A: Matrix, one) -> Matrix:
    out: Matrix = {}
    for i, row in A.items():
        new = {j: one * v for j, v in row.items() if v}
        if new:
            out[i] = new
    return out


def _extent(A: Matrix) -> Tuple[int, int]:
    nrows = max(A, default=-1) + 1
    ncols = max((j for row in A.values() for j in row), default=-1) + 1
    return nrows, ncols


def as_sdm(A: Matrix, one=QQ.one, shape: Optional[Tuple[int, int]] = None) -> SDM:
    if not isinstance(one, FracElement):
        one = _one_of(A)
    data = _cleaned(A, one)
    nrows, ncols = _extent(data)
    if shape is not None:
        nrows, ncols = max(shape[0], nrows), max(shape[1], ncols)
    return SDM(data, (nrows, ncols), domain_of(one))


def _as_dict(M: SDM) -> Matrix:
    return {i: dict(row) for i, row in M.items() if row}


def _one_of(*matrices: Matrix):
    for A in matrices:
        for row in A.values():
            for v in row.values():
                if isinstance(v, FracElement):
                    return v.field.one
    return QQ.one


# --- basic operations ---

def sdm_matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A or not B:
        return {}
    one = _one_of(A, B)
    inner = max(_extent(A)[1], _extent(B)[0])
    left = as_sdm(A, one, (0, inner))
    right = as_sdm(B, one, (inner, 0))
    return _as_dict(left.matmul(right))


def sdm_transpose(A: Matrix) -> Matrix:
    out: Matrix = {}
    for i, row in A.items():
        for j, v in row.items():
            out.setdefault(j, {})[i] = v
    return out


def sdm_sub(A: Matrix, B: Matrix) -> Matrix:
    one = _one_of(A, B)
    nrows, ncols = (max(a, b) for a, b in zip(_extent(A), _extent(B)))
    return _as_dict(as_sdm(A, one, (nrows, ncols)).sub(as_sdm(B, one, (nrows, ncols))))


def sdm_is_zero(A: Matrix) -> bool:
    return all(not v for row in A.values() for v in row.values())


def sdm_apply(A: Matrix, vector: Row) -> Row:
    """A * v for a sparse column vector v."""
    out: Row = {}
    for i, row in A.items():
        acc = None
        for j, a in row.items():
            x = vector.get(j)
            if x:
                acc = a * x if acc is None else acc + a * x
        if acc:
            out[i] = acc
    return out


def select_columns(A: Matrix, columns: Sequence[int]) -> Matrix:
    """Restricts to the given columns and renumbers them 0..len-1."""
    index = {c: n for n, c in enumerate(columns)}
    out: Matrix = {}
    for i, row in A.items():
        new = {index[j]: v for j, v in row.items() if j in index}
        if new:
            out[i] = new
    return out


def select_rows(A: Matrix, rows: Sequence[int]) -> Matrix:
    return {n: dict(A[r]) for n, r in enumerate(rows) if A.get(r)}


# --- elimination over a field ---

def sparse_rref(rows: Iterable[Row], one=1) -> Tuple[List[Row], List[int]]:
    """Reduced row echelon form over a field; returns (pivot rows, pivot columns)."""
    reduced, pivots = as_sdm(dict(enumerate(rows)), one).rref()
    return [dict(reduced[i]) for i in range(len(pivots))], list(pivots)


def rank(A: Matrix, one=1) -> int:
    return len(sparse_rref(A.values(), one)[1])


def nullspace(A: Matrix, ncols: int, one=1) -> List[Row]:
    """Basis of {x : A x = 0} as sparse vectors."""
    if not ncols:
        return []
    kernel, _ = as_sdm(A, one, (0, ncols)).nullspace()
    return [dict(kernel[i]) for i in sorted(kernel)]


def left_nullspace(A: Matrix, nrows: int, one=1) -> List[Row]:
    return nullspace(sdm_transpose(A), nrows, one)


def solve(A: Matrix, b: Row, ncols: int, one=1) -> Optional[Row]:
    """One solution x of A x = b, or None when inconsistent."""
    aug = {i: dict(r) for i, r in A.items()}
    for i, v in b.items():
        if v:
            aug.setdefault(i, {})[ncols] = v
    augmented = as_sdm(aug, one, (0, ncols + 1))
    if ncols in augmented.rref()[1]:
        return None
    particular = augmented.particular()
    return dict(particular.get(0, {}))


def inverse(A: Matrix, size: int, one=1) -> Matrix:
    """Inverse of a square invertible matrix."""
    try:
        return _as_dict(as_sdm(A, one, (size, size)).inv())
    except (DMNonInvertibleMatrixError, ZeroDivisionError):
        raise ZeroDivisionError("matrix is singular")


def independent_columns(A: Matrix, one=1) -> List[int]:
    """Pivot columns of A: a maximal set of independent columns."""
    return sparse_rref(A.values(), one)[1]


# --- fraction-free elimination over Q[k] ---

def polynomial_rows(rows: Iterable[Row]) -> Iterable[Row]:
    """Rows over Q(k) multiplied by the lcm of their denominators."""
    for row in rows:
        if not row:
            continue
        common = reduce(lambda a, b: a.lcm(b), [v.denom for v in row.values()])
        yield {j: v.numer * common.exquo(v.denom) for j, v in row.items()}


def fraction_free_rank(rows: Iterable[Row], ring) -> int:
    """Rank over Q(k) of rows with entries in the polynomial ring Q[k]."""
    data = {i: {j: v for j, v in row.items() if v} for i, row in enumerate(rows)}
    data = {i: row for i, row in data.items() if row}
    if not data:
        return 0
    matrix = SDM(data, _extent(data), ring.to_domain())
    return len(matrix.rref_den()[2])


def exact_rank(A: Matrix, one=1) -> int:
    """Rank over Q or Q(k); rational functions go through fraction-free elimination."""
    if isinstance(one, FracElement):
        rows = polynomial_rows({j: one * v for j, v in row.items() if v} for row in A.values())
        return fraction_free_rank(rows, one.field.ring)
    return rank(A, one)
