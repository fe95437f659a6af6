import re
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, field_validator

from sengel.errors import OutOfDomain, ParseError, ZeroDenominator
from sengel.numerics.rational import Rational, parse_rational

_DECIMAL_RE = re.compile(r"^[+-]?(\d*)\.?(\d*)$")


class Position(str, Enum):
    BELOW = "below"
    ABOVE = "above"
    STRADDLES = "straddles"


class Ball(BaseModel):
    """
    Certified real: the closed interval [center - radius, center + radius].

    Arithmetic returns the exact hull of the image, so every point of an
    operand ball maps into the result ball.
    """
    model_config = ConfigDict(frozen=True)

    center: Rational
    radius: Rational = Fraction(0)

    @field_validator("radius")
    @classmethod
    def _non_negative(cls, v: Fraction) -> Fraction:
        if v < 0:
            raise ValueError(f"Ball radius must be >= 0, got {v}")
        return v

    @classmethod
    def exact(cls, q: Union[Fraction, int]) -> "Ball":
        return cls(center=Fraction(q), radius=Fraction(0))

    @classmethod
    def from_endpoints(cls, lower: Fraction, upper: Fraction) -> "Ball":
        if upper < lower:
            lower, upper = upper, lower
        return cls(center=(lower + upper) / 2, radius=(upper - lower) / 2)

    @property
    def lower(self) -> Fraction:
        return self.center - self.radius

    @property
    def upper(self) -> Fraction:
        return self.center + self.radius

    def contains(self, q: Union[Fraction, int]) -> bool:
        return self.lower <= q <= self.upper

    def _coerce(self, other: Union["Ball", Fraction, int]) -> "Ball":
        if isinstance(other, Ball):
            return other
        return Ball.exact(other)

    def __add__(self, other):
        o = self._coerce(other)
        return Ball(center=self.center + o.center, radius=self.radius + o.radius)

    __radd__ = __add__

    def __neg__(self):
        return Ball(center=-self.center, radius=self.radius)

    def __sub__(self, other):
        o = self._coerce(other)
        return Ball(center=self.center - o.center, radius=self.radius + o.radius)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        products = [a * b for a in (self.lower, self.upper) for b in (o.lower, o.upper)]
        return Ball.from_endpoints(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lower <= 0 <= o.upper:
            raise ZeroDenominator(f"Division by a ball containing zero: {o}")
        quotients = [a / b for a in (self.lower, self.upper) for b in (o.lower, o.upper)]
        return Ball.from_endpoints(min(quotients), max(quotients))

    def __rtruediv__(self, other):
        return self._coerce(other) / self


def ball_from_decimal(text: str, extra_radius_log2: Optional[int] = None) -> Ball:
    """
    Parse a decimal string or an exact fraction "p/q" into a ball inside (0,1).

    Args:
        text: "0.70710678" style decimal, or "p/q"
        extra_radius_log2: When set to e >= 0, widen the radius by 2^-e

    Returns:
        Ball centered on the exact value; half an ulp of the last printed
        digit for decimals, radius 0 for fractions.

    Raises:
        ParseError: if text is neither form
        OutOfDomain: if the value lies outside (0,1)
    """
    stripped = text.strip()
    if "/" in stripped:
        center = parse_rational(stripped)
        radius = Fraction(0)
    else:
        match = _DECIMAL_RE.match(stripped)
        if not match or not (match.group(1) or match.group(2)):
            raise ParseError(f"Not a decimal: {text!r}")
        center = Fraction(stripped)
        radius = Fraction(1, 2 * 10 ** len(match.group(2)))

    if extra_radius_log2 is not None:
        if extra_radius_log2 < 0:
            raise ValueError(f"extra_radius_log2 must be >= 0, got {extra_radius_log2}")
        radius += Fraction(1, 2**extra_radius_log2)

    if not 0 < center < 1:
        raise OutOfDomain(f"Value {text!r} is outside (0,1)")
    return Ball(center=center, radius=radius)


def ball_position(b: Ball, q: Fraction) -> Position:
    """
    Where the ball sits against the point q, with q itself counted to the
    right (cells are closed on the left).
    """
    if b.upper < q:
        return Position.BELOW
    if b.lower >= q:
        return Position.ABOVE
    return Position.STRADDLES
