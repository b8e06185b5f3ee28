"""Exact level arithmetic.

Levels are elements of the rational function field Q(k) in one
indeterminate: every statement made "for k irrational" is checked as an
identity of rational functions, never at sampled values.
"""
from typing import Any, Dict, Optional

from sympy import QQ, Symbol, field, sympify
from sympy.polys.fields import FracElement

from src.utils.errors import HookdualError, LevelDependenceError

LEVEL_FIELD, k = field("k", QQ)
LEVEL_RING = LEVEL_FIELD.ring
LEVEL_SYMBOL = Symbol("k")

# Symbols that may appear in tabulated expressions
N_SYMBOL = Symbol("n")
M_SYMBOL = Symbol("m")


def level_scalar(value: Any) -> FracElement:
    """Coerces ints, rationals, polynomials in k and sympy expressions into Q(k)."""
    if isinstance(value, FracElement) and value.field == LEVEL_FIELD:
        return value
    if isinstance(value, int):
        return LEVEL_FIELD(value)
    if hasattr(value, "ring") and value.ring == LEVEL_RING:
        return LEVEL_FIELD(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not hasattr(value, "free_symbols"):
        return LEVEL_FIELD(QQ.convert(value))
    expr = sympify(value)
    if expr.free_symbols - {LEVEL_SYMBOL}:
        raise HookdualError(f"Expression '{expr}' depends on symbols other than k")
    return LEVEL_FIELD.from_expr(expr)


def level_from_table(expression: str, n: int, m: int, level: Optional[FracElement] = None) -> FracElement:
    """Evaluates a tabulated expression in n, m (and k) at the given hook parameters."""
    expr = sympify(expression).subs({N_SYMBOL: n, M_SYMBOL: m})
    value = level_scalar(expr)
    if level is not None:
        value = substitute_level(value, level)
    return value


def substitute_level(value: FracElement, level: FracElement) -> FracElement:
    """Composes value(k) with k -> level (used to evaluate k-tables at the dual level)."""
    value = level_scalar(value)

    def _eval(poly):
        total = LEVEL_FIELD.zero
        for (degree,), coeff in poly.terms():
            total += LEVEL_FIELD(coeff) * level ** degree
        return total

    return _eval(value.numer) / _eval(value.denom)


def is_constant(value: Any) -> bool:
    value = level_scalar(value)
    return value.numer.is_ground and value.denom.is_ground


def constant_value(value: Any):
    """The rational value of a constant element; raises when k survives."""
    value = level_scalar(value)
    if not is_constant(value):
        raise LevelDependenceError(f"Expected a level-free quantity, got {value.as_expr()}")
    return QQ.convert(value.numer.LC) / QQ.convert(value.denom.LC)


def rational_part(value: Any):
    """Constant term of the polynomial part of a rational function in k.

    This is a Q-linear functional on Q(k); a sum of shifts is level free
    exactly when the remainders cancel, and then its value is the sum of the
    rational parts.
    """
    value = level_scalar(value)
    quotient, _ = divmod(value.numer, value.denom)
    return QQ.convert(dict(quotient).get((0,), QQ.zero))


def format_level(value: Any) -> str:
    return str(level_scalar(value).as_expr())


class ExponentShift:
    """A conformal-weight shift split into a rational part and a level part.

    Additive. Ordering is only defined between shifts whose level parts agree.
    """

    __slots__ = ("value",)

    def __init__(self, value: Any = 0):
        self.value = level_scalar(value)

    @classmethod
    def zero(cls) -> "ExponentShift":
        return cls(0)

    @property
    def rational_part(self):
        return rational_part(self.value)

    @property
    def level_part(self) -> FracElement:
        return self.value - LEVEL_FIELD(self.rational_part)

    def is_level_free(self) -> bool:
        return not self.level_part

    def doubled(self) -> int:
        """2 * value as an integer; the shift must be level free and half-integral."""
        if not self.is_level_free():
            raise LevelDependenceError(f"Shift {format_level(self.value)} has a level-dependent part")
        twice = self.rational_part * 2
        if twice.denominator != 1:
            raise HookdualError(f"Shift {format_level(self.value)} is not a half-integer")
        return int(twice.numerator)

    def _check_comparable(self, other: "ExponentShift"):
        if self.level_part != other.level_part:
            raise LevelDependenceError(
                f"Cannot compare shifts {format_level(self.value)} and {format_level(other.value)}: level parts differ"
            )

    def __add__(self, other: "ExponentShift") -> "ExponentShift":
        return ExponentShift(self.value + other.value)

    def __sub__(self, other: "ExponentShift") -> "ExponentShift":
        return ExponentShift(self.value - other.value)

    def __neg__(self) -> "ExponentShift":
        return ExponentShift(-self.value)

    def __eq__(self, other) -> bool:
        return isinstance(other, ExponentShift) and self.value == other.value

    def __hash__(self):
        return hash(str(self.value))

    def __lt__(self, other: "ExponentShift") -> bool:
        self._check_comparable(other)
        return self.rational_part < other.rational_part

    def __le__(self, other: "ExponentShift") -> bool:
        self._check_comparable(other)
        return self.rational_part <= other.rational_part

    def __repr__(self) -> str:
        return f"ExponentShift({format_level(self.value)})"

    def to_json(self) -> Dict[str, Any]:
        from src.utils.exact import format_level_scalar, format_rational
        return {
            "rational_part": format_rational(self.rational_part),
            "level_part": format_level_scalar(self.level_part),
        }
