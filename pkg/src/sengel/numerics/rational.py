import math
import re
from fractions import Fraction
from typing import Annotated, Any

from pydantic import PlainSerializer, PlainValidator

from sengel.errors import ParseError, ZeroDenominator

_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def make_rational(num: int, den: int) -> Fraction:
    """
    Exact fraction num/den, gcd-reduced with a positive denominator.

    Raises:
        ZeroDenominator: if den is 0
    """
    if den == 0:
        raise ZeroDenominator(f"Denominator is zero in {num}/{den}")
    return Fraction(int(num), int(den))


def parse_rational(text: str) -> Fraction:
    """
    Parse "p/q" or a bare integer "p".

    Examples:
        >>> parse_rational("4/6")
        Fraction(2, 3)
    """
    match = _FRACTION_RE.match(text)
    if not match:
        raise ParseError(f"Not a fraction: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    return make_rational(num, den)


def format_rational(q: Fraction) -> str:
    """Render as "p/q", or "p" for integers."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def odd_floor(q: Fraction | int | float) -> int:
    """Greatest odd integer <= q."""
    f = math.floor(q)
    return f if f % 2 != 0 else f - 1


def to_decimal_string(q: Fraction, places: int = 30) -> str:
    """Decimal rendering of q truncated (not rounded) to the given places."""
    sign = "-" if q < 0 else ""
    a = abs(q)
    whole = a.numerator // a.denominator
    frac = math.floor((a - whole) * 10**places)
    if places == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{places}d}"


def _to_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"Not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ParseError(f"Not a rational: {value!r}")


# Fraction field for pydantic models, serialized as "p/q"
Rational = Annotated[
    Fraction,
    PlainValidator(_to_fraction),
    PlainSerializer(format_rational, return_type=str),
]
