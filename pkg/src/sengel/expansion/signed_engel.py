import math
from fractions import Fraction
from typing import Optional

from sengel.errors import IndexOutOfRange, OutOfDomain
from sengel.expansion.types import SignedEngelExpansion, StopReason
from sengel.numerics.ball import Ball, Position, ball_position

import logging
logger = logging.getLogger(__name__)

DEFAULT_MAX_DIGITS_RATIONAL = 64
DEFAULT_MAX_DIGITS_BALL = 256


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def digit_and_sign(x: Fraction) -> tuple[int, int]:
    """
    Digit and sign of the cell containing x.

    [1/2k, 1/(2k-1)) gives (2k, +1), (1/(2k+1), 1/2k) gives (2k, -1) and the
    point 1/(2k+1) gives the odd digit (2k+1, -1).
    """
    x = _as_fraction(x)
    if not 0 < x < 1:
        raise OutOfDomain(f"digit_and_sign needs 0 < x < 1, got {x}")
    m = math.floor(1 / x)
    if x.numerator == 1:
        # reciprocal point 1/m
        return (m, 1) if m % 2 == 0 else (m, -1)
    if m % 2 != 0:
        return m + 1, 1
    return m, -1


def apply_T(x: Fraction) -> Fraction:
    """The signed Engel map on [0,1)."""
    x = _as_fraction(x)
    if not 0 <= x < 1:
        raise OutOfDomain(f"apply_T needs 0 <= x < 1, got {x}")
    if x == 0 or x.numerator == 1:
        return Fraction(0)
    d, s = digit_and_sign(x)
    return s * (d * x - 1)


def digit_bounds(d: int) -> tuple[Fraction, Fraction]:
    """Open bounds (1/(d+1), 1/(d-1)) that T^{n-1}x obeys when d_n = d."""
    return Fraction(1, d + 1), Fraction(1, d - 1)


def t_orbit(x: Fraction, steps: int) -> list[Fraction]:
    """x, Tx, ..., T^{steps-1}x; stops early once 0 has been produced."""
    x = _as_fraction(x)
    orbit = [x]
    while len(orbit) < steps and orbit[-1] != 0:
        orbit.append(apply_T(orbit[-1]))
    return orbit


def _assemble(digits: list[int], signs: list[int], terminated: bool, reason: StopReason) -> SignedEngelExpansion:
    step_signs = signs[:max(len(digits) - 1, 0)]
    cum_signs = [1] if digits else []
    for s in step_signs:
        cum_signs.append(cum_signs[-1] * s)
    return SignedEngelExpansion(
        digits=digits,
        step_signs=step_signs,
        cum_signs=cum_signs,
        terminated=terminated,
        certified_prefix_len=len(digits),
        stop_reason=reason,
    )


def expand_rational(x: Fraction, max_digits: int = DEFAULT_MAX_DIGITS_RATIONAL) -> SignedEngelExpansion:
    """
    Exact signed Engel expansion of a rational in (0,1).

    Every rational terminates: the numerator of T^k x strictly decreases.
    """
    x = _as_fraction(x)
    if not 0 < x < 1:
        raise OutOfDomain(f"expand_rational needs 0 < x < 1, got {x}")
    if max_digits < 1:
        raise ValueError(f"max_digits must be >= 1, got {max_digits}")

    digits: list[int] = []
    signs: list[int] = []
    y = x
    while len(digits) < max_digits:
        d, s = digit_and_sign(y)
        digits.append(d)
        signs.append(s)
        y = s * (d * y - 1)
        if y == 0:
            return _assemble(digits, signs, True, StopReason.TERMINATED)
    logger.debug(f"expand_rational({x}) stopped at max_digits={max_digits}")
    return _assemble(digits, signs, False, StopReason.MAX_DIGITS)


def _certified_cell(b: Ball) -> Optional[tuple[int, int]]:
    """The (digit, sign) cell holding every point of b, or None."""
    if not 0 < b.center < 1:
        return None
    d, s = digit_and_sign(b.center)
    if d % 2 != 0:
        return None
    if s == 1:
        inside = (ball_position(b, Fraction(1, d)) == Position.ABOVE
                  and ball_position(b, Fraction(1, d - 1)) == Position.BELOW)
    else:
        left = Fraction(1, d + 1)
        inside = (ball_position(b, left) == Position.ABOVE
                  and b.lower > left
                  and ball_position(b, Fraction(1, d)) == Position.BELOW)
    return (d, s) if inside else None


def expand_certified(b: Ball, max_digits: int = DEFAULT_MAX_DIGITS_BALL) -> SignedEngelExpansion:
    """
    Digits shared by every real in the ball.

    Stops with stop_reason PRECISION_EXHAUSTED as soon as the image ball
    straddles a cell boundary; nothing is guessed.
    """
    if not 0 < b.center < 1:
        raise OutOfDomain(f"Ball center {b.center} is outside (0,1)")
    if max_digits < 1:
        raise ValueError(f"max_digits must be >= 1, got {max_digits}")
    if b.radius == 0:
        return expand_rational(b.center, max_digits)

    digits: list[int] = []
    signs: list[int] = []
    current = b
    while len(digits) < max_digits:
        cell = _certified_cell(current)
        if cell is None:
            logger.debug(f"Certification stopped after {len(digits)} digits, ball {current.lower}..{current.upper}")
            return _assemble(digits, signs, False, StopReason.PRECISION_EXHAUSTED)
        d, s = cell
        digits.append(d)
        signs.append(s)
        current = current * d - 1
        if s == -1:
            current = -current
    return _assemble(digits, signs, False, StopReason.MAX_DIGITS)


def reconstruct(e: SignedEngelExpansion, n: Optional[int] = None) -> Fraction:
    """Exact partial sum of eps_k / (d_1...d_k) for k <= n (default: all digits)."""
    n = len(e.digits) if n is None else n
    if not 1 <= n <= len(e.digits):
        raise IndexOutOfRange(f"n={n} outside 1..{len(e.digits)}")
    total = Fraction(0)
    denominator = 1
    for d, eps in zip(e.digits[:n], e.cum_signs[:n]):
        denominator *= d
        total += Fraction(eps, denominator)
    return total


def reconstruct_with_remainder(e: SignedEngelExpansion, n: int, remainder: Fraction) -> Fraction:
    """
    Partial sum to n plus eps_{n+1} * T^n x / (d_1...d_n); equals x exactly
    when remainder is T^n x.
    """
    if not 1 <= n <= len(e.step_signs):
        raise IndexOutOfRange(f"n={n} outside 1..{len(e.step_signs)}")
    eps_next = e.cum_signs[n - 1] * e.step_signs[n - 1]
    return reconstruct(e, n) + eps_next * remainder / math.prod(e.digits[:n])
