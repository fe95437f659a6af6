from sengel.intervals.types import BasicInterval
from sengel.intervals.basic_interval import (
    basic_interval,
    cylinder_measure,
    length_closed_form,
    locate,
    pairwise_disjoint,
)

__all__ = [
    "BasicInterval",
    "basic_interval",
    "cylinder_measure",
    "length_closed_form",
    "locate",
    "pairwise_disjoint",
]
