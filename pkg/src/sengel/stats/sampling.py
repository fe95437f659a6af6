from typing import Iterator

from sengel.markov.rng import Stream, trajectory_generator
from sengel.numerics.ball import Ball, ball_from_decimal

DECIMAL_PLACES = 40


def random_decimal_text(master_seed: int, input_id: int, places: int = DECIMAL_PLACES) -> str:
    """A uniform random decimal 0.xxxx with `places` digits, never 0."""
    digits = trajectory_generator(master_seed, input_id, Stream.INPUTS).integers(0, 10, size=places)
    text = "".join(str(int(d)) for d in digits)
    if text.strip("0") == "":
        text = text[:-1] + "1"
    return "0." + text


def random_decimal_balls(master_seed: int, count: int, places: int = DECIMAL_PLACES,
                         first_id: int = 0) -> Iterator[tuple[int, Ball]]:
    """(input_id, ball) pairs for ids first_id..first_id+count-1; each ball covers its decimal's rounding interval."""
    for input_id in range(first_id, first_id + count):
        yield input_id, ball_from_decimal(random_decimal_text(master_seed, input_id, places))
