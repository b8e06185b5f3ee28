"""Hook labels and duality pairs evaluated at (n, m), with the table-level cross-checks."""
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from sympy import QQ
from sympy.polys.fields import FracElement

from src.algebra.ids import AlgebraId, Family, SuperDescriptor
from src.models.schemas import HookRow, HookTables, PrimaryRow
from src.models.tables import load_hook_tables, table_cell, table_constant, table_int
from src.series.level import substitute_level
from src.utils.errors import IdentityError, UnsupportedAlgebraError

PLUS, MINUS = "+", "-"
HOOK_TYPES = ("A", "B", "C", "D", "O")


@dataclass(frozen=True)
class HookLabel:
    """One row X^{+/-}(n, m) of the hook table, evaluated at the given n, m."""
    X: str
    sign: str
    n: int
    m: int

    def __post_init__(self):
        if self.X not in HOOK_TYPES or self.sign not in (PLUS, MINUS):
            raise UnsupportedAlgebraError(f"Unknown hook label {self.X}{self.sign}")
        if self.n < 1 or self.m < 1:
            raise UnsupportedAlgebraError(f"Hook labels need n, m >= 1, got n={self.n}, m={self.m}")

    @property
    def label(self) -> str:
        return f"{self.X}{self.sign}"

    def __str__(self) -> str:
        return f"{self.label}({self.n},{self.m})"

    @property
    def row(self) -> HookRow:
        for row in load_hook_tables().hook_rows:
            if row.label == self.label:
                return row
        raise IdentityError(f"Missing hook row {self.label}")

    @property
    def primary(self) -> PrimaryRow:
        for row in load_hook_tables().primaries:
            if row.label == self.label:
                return row
        raise IdentityError(f"Missing primary row {self.label}")

    def _where(self, name: str) -> str:
        return f"hook_rows[{self.label}].{name}"

    @property
    def ambient(self) -> SuperDescriptor:
        cell = self.row.ambient
        return SuperDescriptor(
            cell.kind,
            table_int(cell.even, self._where("ambient.even"), self.n, self.m),
            table_int(cell.odd, self._where("ambient.odd"), self.n, self.m),
        )

    @property
    def kappa(self) -> str:
        return self.row.kappa

    @property
    def h_vee(self):
        return table_constant(self.row.h_vee, self._where("h_vee"), self.n, self.m)

    def _algebra(self, side: str) -> AlgebraId:
        cell = getattr(self.row, side)
        return AlgebraId(Family(cell.family), table_int(cell.rank, self._where(f"{side}.rank"), self.n, self.m))

    @property
    def a_algebra(self) -> AlgebraId:
        return self._algebra("a")

    @property
    def b_algebra(self) -> AlgebraId:
        return self._algebra("b")

    def k_b(self, level: Optional[FracElement] = None) -> FracElement:
        """Level of the affine b-subalgebra when the W-algebra sits at ``level`` (k by default)."""
        value = table_cell(self.row.k_b, self._where("k_b"), self.n, self.m)
        return value if level is None else substitute_level(value, level)

    @property
    def delta_rho(self):
        return table_constant(self.primary.delta_rho, f"primaries[{self.label}].delta_rho", self.n, self.m)

    @property
    def primary_hw_parity(self) -> int:
        """Parity of the highest weight vector of the primary block.

        The natural superspace C^{1|2m} of osp(1|2m) has an odd highest weight
        vector; every other natural module has an even one.
        """
        natural_odd = 1 if self.b_algebra.family == Family.OSP_1_2M else 0
        return int(self.primary.odd) ^ natural_odd


@dataclass(frozen=True)
class PairRecord:
    X: str
    Y: str
    r: object
    pq_plus: Tuple
    pq_minus: Tuple


def pair_record(X: str, n: int = 1, m: int = 1, tables: Optional[HookTables] = None) -> PairRecord:
    """Pair constants: r from the pair row, (p+, q+) from column X, (p-, q-) from column Y."""
    tables = tables or load_hook_tables()
    pair = next((row for row in tables.pairs if row.X == X), None)
    if pair is None:
        raise UnsupportedAlgebraError(f"No duality pair with X = {X}")
    columns = {row.column: row for row in tables.alpha_coefficients}
    if X not in columns or pair.Y not in columns:
        raise IdentityError(f"Missing alpha_coefficients column for pair {X}/{pair.Y}")
    plus, minus = columns[X], columns[pair.Y]
    r = table_constant(pair.r, f"pairs[{X}{pair.Y}].r", n, m)
    pq_plus = (table_constant(plus.p_plus, f"alpha_coefficients[{X}].p_plus", n, m),
               table_constant(plus.q_plus, f"alpha_coefficients[{X}].q_plus", n, m))
    pq_minus = (table_constant(minus.p_minus, f"alpha_coefficients[{pair.Y}].p_minus", n, m),
                table_constant(minus.q_minus, f"alpha_coefficients[{pair.Y}].q_minus", n, m))
    return PairRecord(X, pair.Y, r, pq_plus, pq_minus)


# --- Table-level cross-checks ---

def check_dual_coxeter_column(label: HookLabel) -> Dict:
    """The h_vee cell against the dual Coxeter number of the ambient superalgebra for its form."""
    expected = label.ambient.dual_coxeter(label.kappa)
    if label.h_vee != expected:
        raise IdentityError(
            f"{label}: h_vee cell gives {label.h_vee}, {label.ambient.label} with {label.kappa} gives {expected}")
    return {"ambient": label.ambient.label, "kappa": label.kappa, "h_vee": str(expected)}


def check_delta_rho_column(label: HookLabel) -> Dict:
    """Delta_rho = (dim rho_a + 1) / 2 with rho_a the natural module of a."""
    natural_dim = label.a_algebra.matrix_size
    expected = QQ(natural_dim + 1, 2)
    if label.delta_rho != expected:
        raise IdentityError(f"{label}: delta_rho cell gives {label.delta_rho}, expected {expected}")
    return {"a": label.a_algebra.label, "delta_rho": str(expected)}


def congruence_rule(rule: str, family: Family, coords: Tuple[int, ...], m: int) -> bool:
    """Evaluates a congruence tag of the R table on raw fundamental coordinates."""
    if rule == "none":
        return True
    if rule == "gl_congruence":
        return (coords[-1] - sum((i + 1) * c for i, c in enumerate(coords[:-1]))) % m == 0
    if rule == "last_even":
        return coords[-1] % 2 == 0
    if rule == "last_pair_even":
        return coords[-1] % 2 == 0 if len(coords) == 1 else (coords[-2] + coords[-1]) % 2 == 0
    raise IdentityError(f"Unknown congruence rule '{rule}' for family {family}")
