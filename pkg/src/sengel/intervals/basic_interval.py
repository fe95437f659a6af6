import math
from fractions import Fraction
from typing import Iterable

from sengel.errors import ExpansionTooShort, NotAdmissible, OddDigitAtN, OddFinalDigit
from sengel.expansion.signed_engel import expand_rational
from sengel.intervals.types import BasicInterval
from sengel.symbolic.admissible import check_admissible
from sengel.symbolic.types import SymbolSequence, Variant

import logging
logger = logging.getLogger(__name__)


def basic_interval(s: SymbolSequence) -> BasicInterval:
    """
    Exact endpoints of the order-n cylinder.

    The endpoints are the partial sum to n-1 plus
    delta_n / (sigma_1...sigma_{n-1} (sigma_n -/+ 1)); the (sigma_n - 1)
    endpoint is on the left when delta_n = -1.

    Raises:
        NotAdmissible: if s is outside the admissible space
        OddFinalDigit: if s ends on an odd digit (the cylinder is a point)
    """
    verdict = check_admissible(s, Variant.SIGMA_N)
    if not verdict.valid:
        raise NotAdmissible(f"{s}: {verdict.reason}")
    if s.sigmas[-1] % 2 != 0:
        raise OddFinalDigit(f"{s} ends on the odd digit {s.sigmas[-1]}")

    cum = s.delta_notation()
    partial = Fraction(0)
    denominator = 1
    for sigma, delta in zip(s.sigmas[:-1], cum[:-1]):
        denominator *= sigma
        partial += Fraction(delta, denominator)

    last, delta = s.sigmas[-1], cum[-1]
    a = partial + Fraction(delta, denominator * (last - 1))
    b = partial + Fraction(delta, denominator * (last + 1))
    lower, upper = min(a, b), max(a, b)

    return BasicInterval(symbols=s, lower=lower, upper=upper, length=upper - lower)


def locate(x: Fraction, n: int) -> BasicInterval:
    """
    The order-n cylinder containing x.

    Raises:
        ExpansionTooShort: if x has fewer than n digits
        OddDigitAtN: if the n-th digit is odd
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    e = expand_rational(x, max_digits=max(n, 64))
    if len(e.digits) < n:
        raise ExpansionTooShort(f"{x} has {len(e.digits)} digits, needed {n}")
    if e.digits[n - 1] % 2 != 0:
        raise OddDigitAtN(f"Digit {n} of {x} is the odd digit {e.digits[n - 1]}")
    return basic_interval(SymbolSequence.from_expansion(e, n))


def cylinder_measure(seqs: Iterable[SymbolSequence]) -> Fraction:
    """Exact Lebesgue measure of a union of distinct same-order cylinders."""
    return sum((basic_interval(s).length for s in seqs), Fraction(0))


def pairwise_disjoint(intervals: Iterable[BasicInterval]) -> bool:
    ordered = sorted(intervals, key=lambda i: i.lower)
    for left, right in zip(ordered, ordered[1:]):
        if left.upper > right.lower:
            logger.debug(f"Overlap between {left.symbols} and {right.symbols}")
            return False
    return True


def length_closed_form(s: SymbolSequence) -> Fraction:
    """2 / (sigma_1...sigma_{n-1} (sigma_n - 1)(sigma_n + 1))."""
    last = s.sigmas[-1]
    return Fraction(2, math.prod(s.sigmas[:-1]) * (last - 1) * (last + 1))
