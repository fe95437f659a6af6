"""
Engel and Pierce expansions, the two unsigned relatives of the signed
expansion. Both are kept as reference extractors for comparison.
"""
import math
from fractions import Fraction

from sengel.errors import OutOfDomain


def _check_unit(x: Fraction, name: str) -> Fraction:
    x = x if isinstance(x, Fraction) else Fraction(x)
    if not 0 < x < 1:
        raise OutOfDomain(f"{name} needs 0 < x < 1, got {x}")
    return x


def engel_digits(x: Fraction, max_digits: int = 64) -> list[int]:
    """Digits of x = 1/d_1 + 1/(d_1 d_2) + ..., from the map ceil(1/x)x - 1."""
    y = _check_unit(x, "engel_digits")
    digits: list[int] = []
    while y != 0 and len(digits) < max_digits:
        d = math.ceil(1 / y)
        digits.append(d)
        y = d * y - 1
    return digits


def pierce_digits(x: Fraction, max_digits: int = 64) -> list[int]:
    """Digits of x = 1/d_1 - 1/(d_1 d_2) + ..., from the map 1 - floor(1/x)x."""
    y = _check_unit(x, "pierce_digits")
    digits: list[int] = []
    while y != 0 and len(digits) < max_digits:
        d = math.floor(1 / y)
        digits.append(d)
        y = 1 - d * y
    return digits


def engel_reconstruct(digits: list[int]) -> Fraction:
    total, denominator = Fraction(0), 1
    for d in digits:
        denominator *= d
        total += Fraction(1, denominator)
    return total


def pierce_reconstruct(digits: list[int]) -> Fraction:
    total, denominator, sign = Fraction(0), 1, 1
    for d in digits:
        denominator *= d
        total += Fraction(sign, denominator)
        sign = -sign
    return total
