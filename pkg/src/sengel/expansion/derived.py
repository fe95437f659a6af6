from fractions import Fraction
from typing import Optional, Sequence

from sengel.errors import EmptyExpansion
from sengel.expansion.types import DerivedSequences, SignedEngelExpansion
from sengel.numerics.rational import odd_floor


def derive_sequences(e: SignedEngelExpansion, trajectory_of_T: Optional[Sequence[Fraction]] = None) -> DerivedSequences:
    """
    Gap, ratio and maximum sequences of an expansion, plus the auxiliary
    y_n, Y_n and U_n.

    Args:
        e: Expansion with at least one digit
        trajectory_of_T: x, Tx, T^2x, ... when the exact orbit is known;
            y_values is left out otherwise

    Returns:
        DerivedSequences over every digit of e (y over the digits the
        orbit covers)
    """
    digits = e.digits
    if not digits:
        raise EmptyExpansion("derive_sequences needs at least one digit")

    gaps = [digits[0]] + [b - a for a, b in zip(digits, digits[1:])]
    ratios = [Fraction(digits[0])] + [Fraction(b, a) for a, b in zip(digits, digits[1:])]

    running_max: list[Fraction] = []
    for r in ratios:
        running_max.append(r if not running_max or r > running_max[-1] else running_max[-1])

    # d_{n-1} - s_{n-1}: d-1 when the cumulative sign repeats, d+1 when it flips
    factors = [d - s for d, s in zip(digits, e.step_signs)]

    Y_values = [odd_floor(digits[0])] + [odd_floor(Fraction(d, f)) for d, f in zip(digits[1:], factors)]
    U_values: list[int] = []
    for y in Y_values:
        U_values.append(max(y, U_values[-1]) if U_values else y)

    y_values = None
    if trajectory_of_T is not None:
        count = min(len(trajectory_of_T), len(digits))
        y_values = [Fraction(trajectory_of_T[0])] + [
            factors[k - 1] * Fraction(trajectory_of_T[k]) for k in range(1, count)
        ]
        y_values = y_values[:count]

    return DerivedSequences(
        gaps=gaps,
        ratios=ratios,
        running_max=running_max,
        y_values=y_values,
        Y_values=Y_values,
        U_values=U_values,
    )
