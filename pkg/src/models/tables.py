"""Loader for data/hook_tables.json; cells stay expressions in n, m and k until evaluated."""
from functools import lru_cache
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError
from sympy import SympifyError
from sympy.polys.fields import FracElement

from src.algebra.ids import Family
from src.series.level import constant_value, level_from_table
from src.utils import config
from src.utils.errors import HookdualError, IdentityError, UnsupportedAlgebraError
from src.utils.file_io import load_json_file
from .schemas import HookTables, KernelRow


@lru_cache(maxsize=4)
def load_hook_tables(path: Optional[Union[str, Path]] = None) -> HookTables:
    """Reads and validates the hook tables; every expression cell is parsed once up front."""
    path = Path(path) if path is not None else config.HOOK_TABLES_FILE
    data = load_json_file(path, "hook tables")
    if data is None:
        raise IdentityError(f"Hook tables could not be loaded from {path}")
    try:
        tables = HookTables.model_validate(data)
    except ValidationError as e:
        raise IdentityError(f"Corrupted hook table {path}: {e}")
    _parse_all_cells(tables)
    return tables


def table_cell(expression: str, where: str, n: int = 1, m: int = 1) -> FracElement:
    try:
        return level_from_table(expression, n, m)
    except (SympifyError, HookdualError, TypeError, ValueError, SyntaxError) as e:
        raise IdentityError(f"Unparsable cell {where} = '{expression}': {e}")


def _parse_all_cells(tables: HookTables):
    for row in tables.hook_rows:
        for name in ("h_vee", "k_b"):
            table_cell(getattr(row, name), f"hook_rows[{row.label}].{name}")
        for name in ("even", "odd"):
            table_cell(getattr(row.ambient, name), f"hook_rows[{row.label}].ambient.{name}")
        for side in ("a", "b"):
            cell = getattr(row, side)
            table_cell(cell.rank, f"hook_rows[{row.label}].{side}.rank")
            try:
                Family(cell.family)
            except ValueError:
                raise IdentityError(f"Unknown family in hook_rows[{row.label}].{side}.family = '{cell.family}'")
    for row in tables.kernels:
        for name in ("a", "b", "c", "delta_K"):
            table_cell(getattr(row, name), f"kernels[{row.family}].{name}")
    for row in tables.primaries:
        table_cell(row.delta_rho, f"primaries[{row.label}].delta_rho")
    for row in tables.pairs:
        table_cell(row.r, f"pairs[{row.X}{row.Y}].r")
    for row in tables.alpha_coefficients:
        for name in ("p_plus", "q_plus", "p_minus", "q_minus"):
            table_cell(getattr(row, name), f"alpha_coefficients[{row.column}].{name}")


def table_constant(expression: str, where: str, n: int, m: int):
    value = table_cell(expression, where, n, m)
    try:
        return constant_value(value)
    except HookdualError:
        raise IdentityError(f"Cell {where} = '{expression}' must not depend on k")


def table_int(expression: str, where: str, n: int, m: int) -> int:
    value = table_constant(expression, where, n, m)
    if value.denominator != 1:
        raise IdentityError(f"Cell {where} = '{expression}' is not an integer at n={n}, m={m}")
    return int(value.numerator)


def kernel_row(family: Family, tables: Optional[HookTables] = None) -> KernelRow:
    tables = tables or load_hook_tables()
    for row in tables.kernels:
        if row.family == Family(family).value:
            return row
    raise UnsupportedAlgebraError(f"No kernel row for family {family}")
