from sengel.markov.types import (
    STATE_CAP,
    BeyondCap,
    ChainSource,
    Trajectory,
    TrajectoryBatch,
)
from sengel.markov.law import (
    initial_cdf,
    initial_pmf,
    row_partial_sum,
    transition_cdf,
    transition_pmf,
    transition_tail,
)
from sengel.markov.chains import (
    ChainSampler,
    ExactChainSampler,
    SurrogateChainSampler,
    even_round,
    even_round_array,
    make_sampler,
    surrogate_step,
)
from sengel.markov.rng import Stream, derive_seed, trajectory_generator, uniform_rows
from sengel.markov.simulate import simulate, simulate_chunks
from sengel.markov.export import metadata_json, write_trajectory_csv

__all__ = [
    "STATE_CAP",
    "BeyondCap",
    "ChainSource",
    "Trajectory",
    "TrajectoryBatch",
    "initial_cdf",
    "initial_pmf",
    "row_partial_sum",
    "transition_cdf",
    "transition_pmf",
    "transition_tail",
    "ChainSampler",
    "ExactChainSampler",
    "SurrogateChainSampler",
    "even_round",
    "even_round_array",
    "make_sampler",
    "surrogate_step",
    "Stream",
    "derive_seed",
    "trajectory_generator",
    "uniform_rows",
    "simulate",
    "simulate_chunks",
    "metadata_json",
    "write_trajectory_csv",
]
