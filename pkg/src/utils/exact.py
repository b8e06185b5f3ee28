"""JSON codecs for exact numbers.

Rationals are written as ``"p/q"`` (``"p"`` for integers), elements of
Q(k) as ``{"num": [...], "den": [...]}`` with coefficients lowest degree
first, and doubled conformal exponents as ``"a/2"``.
"""
from typing import Any, Dict, List

from sympy import QQ

from .errors import HookdualError


def format_rational(value: Any) -> str:
    value = QQ.convert(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str):
    text = str(text).strip()
    try:
        if "/" in text:
            p, q = text.split("/", maxsplit=1)
            return QQ(int(p), int(q))
        return QQ(int(text))
    except (ValueError, ZeroDivisionError):
        raise HookdualError(f"Cannot parse exact rational '{text}'")


def format_half(doubled: int) -> str:
    """Doubled exponent 2*delta as an 'a/2' string."""
    return f"{doubled}/2"


def parse_half(text: str) -> int:
    value = parse_rational(text) * 2
    if value.denominator != 1:
        raise HookdualError(f"'{text}' is not a half-integer")
    return int(value.numerator)


def _poly_coefficients(poly) -> List[str]:
    if not poly:
        return []
    degree = poly.degree()
    zero = poly.ring.domain.zero
    return [format_rational(dict(poly).get((i,), zero)) for i in range(degree + 1)]


def format_level_scalar(value) -> Dict[str, List[str]]:
    """Serializes an element of Q(k) (a sympy FracElement) or a plain rational."""
    if hasattr(value, "numer") and hasattr(value, "denom"):
        num, den = value.numer, value.denom
        lead = den.LC
        return {
            "num": _poly_coefficients(num.quo_ground(lead)),
            "den": _poly_coefficients(den.quo_ground(lead)),
        }
    return {"num": [format_rational(value)] if value else [], "den": ["1"]}


def parse_level_scalar(data: Dict[str, List[str]], field):
    ring = field.ring
    num = ring.from_dict({(i,): parse_rational(c) for i, c in enumerate(data.get("num", []))})
    den = ring.from_dict({(i,): parse_rational(c) for i, c in enumerate(data.get("den", ["1"]))})
    if not den:
        raise HookdualError("Zero denominator in serialized level scalar")
    return field(num) / field(den)


def to_jsonable(value: Any) -> Any:
    """Recursively converts exact values into their JSON codecs."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, int):
        return value
    if hasattr(value, "numer") and hasattr(value, "denom"):
        return format_level_scalar(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return format_rational(value)
    return str(value)
