"""
Counter-based random streams.

Every trajectory owns a Philox key built from (master_seed, trajectory_id),
so its draws do not depend on which worker simulates it or in what order.
Independent streams of the same trajectory sit at different values of the
highest counter word.
"""
import hashlib
from enum import IntEnum
from typing import Sequence

import numpy as np

MASK64 = (1 << 64) - 1


class Stream(IntEnum):
    EXACT_DIGITS = 0
    SURROGATE_DIGITS = 1
    SIGNS = 2
    ORACLE = 3
    INPUTS = 4


def trajectory_generator(master_seed: int, trajectory_id: int, stream: Stream) -> np.random.Generator:
    key = (master_seed & MASK64) | ((trajectory_id & MASK64) << 64)
    return np.random.Generator(np.random.Philox(key=key, counter=int(stream) << 192))


def uniform_rows(master_seed: int, ids: Sequence[int], width: int, stream: Stream) -> np.ndarray:
    """
    One row of `width` uniforms in [0, 1) per trajectory id.

    Each value is a multiple of 2^-53.
    """
    out = np.empty((len(ids), width), dtype=np.float64)
    for row, trajectory_id in enumerate(ids):
        out[row] = trajectory_generator(master_seed, int(trajectory_id), stream).random(width)
    return out


def exponential_from_uniform(u: np.ndarray) -> np.ndarray:
    """Exponential(1) variates -ln(1 - u) for u in [0, 1)."""
    return -np.log1p(-u)


def derive_seed(seed: int, label: str) -> int:
    """64-bit sub-seed from a master seed and a label."""
    digest = hashlib.blake2b(f"{seed}:{label}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")
