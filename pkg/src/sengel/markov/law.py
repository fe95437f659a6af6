"""
Exact law of the digit chain: the initial distribution over even states
2k and the transition kernel between them.
"""
from fractions import Fraction


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"State index k must be >= 1, got {k}")


def initial_pmf(k: int) -> Fraction:
    """P(d_1 = 2k) = 2 / ((2k-1)(2k+1))."""
    _check_k(k)
    return Fraction(2, (2 * k - 1) * (2 * k + 1))


def initial_cdf(K: int) -> Fraction:
    """P(d_1 <= 2K) = 1 - 1/(2K+1)."""
    _check_k(K)
    return 1 - Fraction(1, 2 * K + 1)


def transition_pmf(k: int, l: int) -> Fraction:
    """P(d_{n+1} = 2l | d_n = 2k)."""
    _check_k(k)
    if l < k:
        return Fraction(0)
    if l == k:
        return Fraction(1, 2 * k)
    return Fraction((2 * k - 1) * (2 * k + 1), k * (2 * l - 1) * (2 * l + 1))


def transition_tail(k: int, l: int) -> Fraction:
    """P(d_{n+1} >= 2l | d_n = 2k)."""
    _check_k(k)
    if l <= k:
        return Fraction(1)
    return Fraction((2 * k - 1) * (2 * k + 1), 2 * k * (2 * l - 1))


def transition_cdf(k: int, L: int) -> Fraction:
    """P(d_{n+1} <= 2L | d_n = 2k) = 1 - (2k-1)(2k+1) / (2k(2L+1)) for L >= k."""
    _check_k(k)
    if L < k:
        return Fraction(0)
    return 1 - Fraction((2 * k - 1) * (2 * k + 1), 2 * k * (2 * L + 1))


def row_partial_sum(k: int, L: int) -> Fraction:
    """Sum of transition_pmf(k, l) for l = k..L, accumulated term by term."""
    _check_k(k)
    total = Fraction(1, 2 * k)
    numerator = (2 * k - 1) * (2 * k + 1)
    for l in range(k + 1, L + 1):
        total += Fraction(numerator, k * (2 * l - 1) * (2 * l + 1))
    return total
