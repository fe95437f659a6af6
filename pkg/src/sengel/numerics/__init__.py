from sengel.numerics.rational import (
    Rational,
    make_rational,
    parse_rational,
    format_rational,
    odd_floor,
    to_decimal_string,
)
from sengel.numerics.ball import Ball, Position, ball_from_decimal, ball_position

__all__ = [
    "Rational",
    "make_rational",
    "parse_rational",
    "format_rational",
    "odd_floor",
    "to_decimal_string",
    "Ball",
    "Position",
    "ball_from_decimal",
    "ball_position",
]
