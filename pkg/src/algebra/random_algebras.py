"""Small Lie superalgebras in randomly chosen homogeneous bases.

The structure constants of osp(1|2), gl(1|1) and their direct sums are
rewritten in a random parity-preserving basis, so Jacobi-valid but otherwise
arbitrary-looking constants exercise every sign path of the complexes.
"""
import random
from itertools import product
from typing import List, Sequence

from sympy import QQ

from .ids import AlgebraId, Family
from .linalg import inverse, rank
from .structure import SuperBasis, basis_from_matrices, build_algebra, elementary


def gl11_basis() -> SuperBasis:
    mats = [elementary(0, 0), elementary(1, 1), elementary(0, 1), elementary(1, 0)]
    return basis_from_matrices(["E11", "E22", "E12", "E21"], mats, [0, 1])


def abelian_basis(dim: int) -> SuperBasis:
    return SuperBasis([f"t{i + 1}" for i in range(dim)], [0] * dim, {}, {(i, i): QQ(1) for i in range(dim)})


def direct_sum(parts: Sequence[SuperBasis]) -> SuperBasis:
    labels, parities, brackets, form = [], [], {}, {}
    offset = 0
    for n, part in enumerate(parts):
        labels += [f"{lab}_{n}" for lab in part.labels]
        parities += part.parities
        for (i, j), terms in part.brackets.items():
            brackets[(i + offset, j + offset)] = tuple((k + offset, c) for k, c in terms)
        for (i, j), v in part.form.items():
            form[(i + offset, j + offset)] = v
        offset += part.dim
    return SuperBasis(labels, parities, brackets, form)


def change_basis(basis: SuperBasis, P) -> SuperBasis:
    """New basis y_a = sum_i P[i][a] x_i; P must be invertible and parity preserving."""
    n = basis.dim
    Pinv = inverse(P, n, QQ.one)
    brackets = {}
    for a, b in product(range(n), repeat=2):
        acc = {}
        for i, pia in _column(P, a):
            for j, pjb in _column(P, b):
                for k, c in basis.bracket(i, j).items():
                    for cc, v in _column_of_inverse(Pinv, k):
                        acc[cc] = acc.get(cc, QQ.zero) + pia * pjb * c * v
        acc = {key: v for key, v in acc.items() if v}
        if acc:
            brackets[(a, b)] = tuple(sorted(acc.items()))
    form = {}
    for a, b in product(range(n), repeat=2):
        value = sum((pia * pjb * basis.form_value(i, j) for i, pia in _column(P, a) for j, pjb in _column(P, b)), QQ.zero)
        if value:
            form[(a, b)] = value
    parities = []
    for a in range(n):
        col_parities = {basis.parities[i] for i, _ in _column(P, a)}
        if len(col_parities) != 1:
            raise ValueError("basis change mixes parities")
        parities.append(col_parities.pop())
    return SuperBasis([f"y{a + 1}" for a in range(n)], parities, brackets, form)


def _column(P, a):
    return [(i, row[a]) for i, row in P.items() if row.get(a)]


def _column_of_inverse(Pinv, k):
    # x_k = sum_c Pinv[c][k] y_c
    return [(c, row[k]) for c, row in Pinv.items() if row.get(k)]


def random_parity_preserving_matrix(parities: Sequence[int], rng: random.Random):
    n = len(parities)
    while True:
        P = {}
        for i in range(n):
            row = {}
            for a in range(n):
                if parities[i] != parities[a]:
                    continue
                v = rng.randint(-2, 2)
                if v:
                    row[a] = QQ(v)
            if row:
                P[i] = row
        if rank(P, QQ.one) == n:
            return P


def random_superalgebra(rng: random.Random, max_dim: int = 8) -> SuperBasis:
    """A Jacobi-valid superalgebra of dimension <= max_dim in a random basis."""
    osp12 = build_algebra(AlgebraId(Family.OSP_1_2M, 1))[0]
    sl2 = build_algebra(AlgebraId(Family.SL, 2))[0]
    candidates: List[List[SuperBasis]] = [
        [osp12], [gl11_basis()], [gl11_basis(), gl11_basis()], [osp12, abelian_basis(1)],
        [sl2, gl11_basis()], [gl11_basis(), abelian_basis(2)], [osp12, abelian_basis(2)],
    ]
    candidates = [c for c in candidates if sum(p.dim for p in c) <= max_dim]
    parts = rng.choice(candidates)
    base = direct_sum([_forget(p) for p in parts]) if len(parts) > 1 else _forget(parts[0])
    return change_basis(base, random_parity_preserving_matrix(base.parities, rng))


def _forget(basis: SuperBasis) -> SuperBasis:
    return SuperBasis(basis.labels, basis.parities, basis.brackets, basis.form)
