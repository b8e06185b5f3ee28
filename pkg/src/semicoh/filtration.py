"""The two filtrations of the relative complex and their first pages.

F weighs a state by minus its module depth plus the mode numbers of its
phi creators minus those of its phi* creators; G uses the opposite ghost
signs. Each piece of the differential either preserves a filtration or
lowers it (F) / raises it (G), so gr d is a sum of two anticommuting square
zero pieces d1 + d2.
"""
from dataclasses import dataclass
from typing import Dict, List, Tuple

from src.algebra.linalg import exact_rank, sdm_apply
from src.series.level import LEVEL_FIELD
from src.utils.errors import ComplexError
from .fock import PHI
from .relative import (
    CUBIC_ANNIHILATE,
    CUBIC_CREATE,
    MODULE_MINUS,
    MODULE_PLUS,
    PIECES,
    SemiComplexSlice,
    add_matrices,
)

F, G = "F", "G"

# (d1 pieces, d2 pieces, sign of the change of every other piece)
SPLITS = {
    F: ((MODULE_PLUS, CUBIC_CREATE), (CUBIC_ANNIHILATE,), -1),
    G: ((MODULE_MINUS, CUBIC_ANNIHILATE), (CUBIC_CREATE,), 1),
}


def filtration_value(slice_: SemiComplexSlice, state, which: str) -> int:
    module, ghosts = state
    ghost_sign = 1 if which == F else -1
    value = -slice_.complex.module.state_depth(module)
    for kind, _, n in ghosts:
        value += ghost_sign * (-n if kind == PHI else n)
    return value


@dataclass
class FiltrationReport:
    which: str
    weight: int
    piece_changes: Dict[str, List[int]]
    square_zero: Dict[str, bool]
    first_page: Dict[int, int]
    cohomology: Dict[int, int]

    @property
    def degenerates(self) -> bool:
        """E1 = H in every degree."""
        return all(self.first_page.get(n, 0) == d for n, d in self.cohomology.items())

    @property
    def passed(self) -> bool:
        bounded = all(self.first_page.get(n, 0) >= d for n, d in self.cohomology.items())
        euler = sum((-1) ** (n % 2) * d for n, d in self.first_page.items())
        return all(self.square_zero.values()) and bounded and euler == sum(
            (-1) ** (n % 2) * d for n, d in self.cohomology.items())

    def to_json(self) -> Dict:
        return {
            "filtration": self.which,
            "weight": self.weight,
            "piece_changes": self.piece_changes,
            "square_zero": self.square_zero,
            "first_page": self.first_page,
            "cohomology": self.cohomology,
            "degenerates": self.degenerates,
            "passed": self.passed,
        }


def _piece_changes(slice_: SemiComplexSlice, which: str) -> Dict[str, List[int]]:
    changes: Dict[str, set] = {tag: set() for tag in PIECES}
    for n, states in slice_.states.items():
        targets = slice_.states.get(n + 1, [])
        for tag in PIECES:
            for row, entries in slice_.pieces[tag].get(n, {}).items():
                after = filtration_value(slice_, targets[row], which)
                for col in entries:
                    changes[tag].add(after - filtration_value(slice_, states[col], which))
    return {tag: sorted(v) for tag, v in changes.items()}


def _check_changes(changes: Dict[str, List[int]], which: str):
    first, second, sign = SPLITS[which]
    for tag, values in changes.items():
        if tag in first + second:
            if any(values):
                raise ComplexError(f"{tag} does not preserve the {which} filtration: changes {values}")
        elif any(v * sign <= 0 for v in values):
            raise ComplexError(f"{tag} is not strictly {'lowering' if sign < 0 else 'raising'} for {which}: {values}")


def _square_zero(slice_: SemiComplexSlice, which: str) -> Dict[str, bool]:
    """d1^2, d2^2 and d1 d2 + d2 d1 on the invariant vectors of each degree."""
    first, second, _ = SPLITS[which]
    out = {"d1^2": True, "d2^2": True, "d1d2+d2d1": True}
    for n in slice_.degrees():
        d1, d2 = slice_.differential(n, first), slice_.differential(n, second)
        e1, e2 = slice_.differential(n + 1, first), slice_.differential(n + 1, second)
        for v in slice_.invariants[n]:
            a, b = sdm_apply(d1, v), sdm_apply(d2, v)
            out["d1^2"] &= not sdm_apply(e1, a)
            out["d2^2"] &= not sdm_apply(e2, b)
            mixed = sdm_apply(e2, a)
            for key, c in sdm_apply(e1, b).items():
                mixed[key] = mixed.get(key, 0) + c
            out["d1d2+d2d1"] &= not any(mixed.values())
    return out


def first_page(slice_: SemiComplexSlice, which: str) -> Dict[int, int]:
    """dim E1^n: cohomology of gr d on the invariants of each (degree, filtration value) block."""
    first, second, _ = SPLITS[which]
    complex_ = slice_.complex
    blocks: Dict[Tuple[int, int], List[int]] = {}
    for n, states in slice_.states.items():
        for a, state in enumerate(states):
            blocks.setdefault((n, filtration_value(slice_, state, which)), []).append(a)
    invariants = {}
    for (n, f), positions in blocks.items():
        local = complex_.invariant_basis([slice_.states[n][a] for a in positions], slice_.weight)
        invariants[(n, f)] = [{positions[c]: v for c, v in row.items()} for row in local]
    ranks = {}
    for (n, f), vectors in invariants.items():
        matrix = add_matrices(slice_.differential(n, first), slice_.differential(n, second))
        images = [sdm_apply(matrix, v) for v in vectors]
        ranks[(n, f)] = exact_rank(dict(enumerate(images)), LEVEL_FIELD.one)
    page: Dict[int, int] = {}
    for (n, f), vectors in invariants.items():
        dim = len(vectors) - ranks[(n, f)] - ranks.get((n - 1, f), 0)
        page[n] = page.get(n, 0) + dim
    return {n: page.get(n, 0) for n in slice_.degrees()}


def filtration_split_check(slice_: SemiComplexSlice, which: str = F) -> FiltrationReport:
    changes = _piece_changes(slice_, which)
    _check_changes(changes, which)
    report = FiltrationReport(which, slice_.weight, changes, _square_zero(slice_, which),
                              first_page(slice_, which), dict(slice_.cohomology))
    print(f"[Filtration] {which} at weight {slice_.weight}: E1 {report.first_page}, "
          f"H {report.cohomology}{' (degenerate)' if report.degenerates else ''}")
    return report


__all__ = ["F", "G", "FiltrationReport", "filtration_split_check", "filtration_value", "first_page"]
