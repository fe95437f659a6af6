import math
from abc import ABC, abstractmethod
from fractions import Fraction

import numpy as np

from sengel.errors import OutOfDomain
from sengel.markov.rng import Stream, exponential_from_uniform
from sengel.markov.types import STATE_CAP, ChainSource

import logging
logger = logging.getLogger(__name__)

TWO_53 = 1 << 53
# draws closer than this (relative) to a cell boundary are decided in integers
BOUNDARY_TOLERANCE = 2.0**-40


def even_round(t: Fraction | float | int) -> int:
    """The even integer 2k with 2k - 1 <= t < 2k + 1."""
    if t < 1:
        raise OutOfDomain(f"even_round needs t >= 1, got {t}")
    return 2 * math.floor((t + 1) / 2)


def even_round_array(t: np.ndarray) -> np.ndarray:
    return 2.0 * np.floor((t + 1.0) / 2.0)


def surrogate_step(D_prev: int, x_exp: float) -> int:
    """[(D-1)(D+1)/D * e^X]_E."""
    if D_prev < 2 or D_prev % 2 != 0:
        raise OutOfDomain(f"surrogate_step needs an even state >= 2, got {D_prev}")
    if x_exp < 0:
        raise OutOfDomain(f"surrogate_step needs x_exp >= 0, got {x_exp}")
    factor = Fraction(D_prev * D_prev - 1, D_prev)
    return even_round(float(factor) * math.exp(x_exp))


def _mantissas(u: np.ndarray) -> np.ndarray:
    """W = (1 - u) * 2^53 as exact integers in [1, 2^53]."""
    return np.ldexp(1.0 - u, 53).astype(np.int64)


class ChainSampler(ABC):
    """
    Vectorised one-step sampler of the digit chain.

    Implementations map uniforms in [0, 1) to even states; a next state
    above STATE_CAP is reported as 0 together with its log.
    """
    source: ChainSource
    stream: Stream

    @abstractmethod
    def initial(self, u: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def advance(self, states: np.ndarray, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        pass


class ExactChainSampler(ChainSampler):
    """Inverse-CDF sampling from the closed-form cumulative sums."""
    source = ChainSource.EXACT_CHAIN
    stream = Stream.EXACT_DIGITS

    def initial(self, u: np.ndarray) -> np.ndarray:
        # P(D_1 <= 2K) = 1 - 1/(2K+1), so D_1 = 2 * floor((1/w + 1)/2) with w = 1 - u
        W = _mantissas(u)
        return 2 * ((TWO_53 + W) // (2 * W))

    def advance(self, states: np.ndarray, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        D = states.astype(np.float64)
        w = 1.0 - u
        t = (D - 1.0 / D) / w
        half = (t + 1.0) / 2.0
        L = np.floor(half)
        frac = half - L
        near = (frac < BOUNDARY_TOLERANCE * half) | (1.0 - frac < BOUNDARY_TOLERANCE * half)
        # anything this far out is past the cap even after rounding
        over = t >= 1.5 * STATE_CAP

        nxt = np.where(over, 0.0, 2.0 * L).astype(np.int64)
        nxt[nxt > STATE_CAP] = 0
        log_nxt = np.log(np.where(over, t, np.maximum(2.0 * L, 1.0)))

        exact_rows = np.nonzero(near & ~over)[0]
        if exact_rows.size:
            W = _mantissas(u[exact_rows])
            for i, row in enumerate(exact_rows):
                d = int(states[row])
                w_int = int(W[i])
                value = 2 * (((d * d - 1) * TWO_53 + d * w_int) // (2 * d * w_int))
                nxt[row] = 0 if value > STATE_CAP else value
                log_nxt[row] = math.log(value)
        return nxt, log_nxt


class SurrogateChainSampler(ChainSampler):
    """D_{n+1} = [(D_n - 1)(D_n + 1)/D_n * e^X]_E with X exponential(1)."""
    source = ChainSource.SURROGATE_CHAIN
    stream = Stream.SURROGATE_DIGITS

    def initial(self, u: np.ndarray) -> np.ndarray:
        return even_round_array(np.exp(exponential_from_uniform(u))).astype(np.int64)

    def advance(self, states: np.ndarray, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        D = states.astype(np.float64)
        t = (D - 1.0 / D) * np.exp(exponential_from_uniform(u))
        over = t > STATE_CAP
        rounded = even_round_array(np.where(over, 2.0, t)).astype(np.int64)
        # float rounding above 2^53 must not move the chain backwards
        nxt = np.where(over, 0, np.maximum(rounded, states))
        log_nxt = np.where(over, np.log(t), np.log(np.maximum(nxt, 1).astype(np.float64)))
        return nxt, log_nxt


_SAMPLERS: dict[ChainSource, type[ChainSampler]] = {
    ChainSource.EXACT_CHAIN: ExactChainSampler,
    ChainSource.SURROGATE_CHAIN: SurrogateChainSampler,
}


def make_sampler(source: ChainSource) -> ChainSampler:
    if source not in _SAMPLERS:
        raise ValueError(f"No sampler for source {source.value!r}")
    return _SAMPLERS[source]()
