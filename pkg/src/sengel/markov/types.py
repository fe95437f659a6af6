from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from sengel.expansion.types import SignedEngelExpansion

STATE_CAP = 1 << 62


class ChainSource(str, Enum):
    EXACT_CHAIN = "exact"
    SURROGATE_CHAIN = "surrogate"
    EXPANSION_OF_REAL = "expansion"


class BeyondCap(str, Enum):
    LOG = "log"
    DROP = "drop"


class Trajectory(BaseModel):
    model_config = ConfigDict(frozen=True)

    states: list[int]
    source: ChainSource
    seed: int
    trajectory_id: int = 0

    @field_validator("states")
    @classmethod
    def _even_non_decreasing(cls, states: list[int]) -> list[int]:
        for a, b in zip(states, states[1:]):
            if b < a:
                raise ValueError(f"States must be non-decreasing, {b} follows {a}")
        if any(s < 2 or s % 2 != 0 for s in states):
            raise ValueError(f"States must be even and >= 2: {states}")
        return states

    @property
    def length(self) -> int:
        return len(self.states)

    @classmethod
    def from_expansion(cls, e: SignedEngelExpansion, seed: int = 0) -> "Trajectory":
        """Digits of an expansion up to (not including) a final odd digit."""
        states = e.digits[:-1] if e.digits and e.digits[-1] % 2 != 0 else e.digits
        return cls(states=list(states), source=ChainSource.EXPANSION_OF_REAL, seed=seed)


class TrajectoryBatch(BaseModel):
    """
    A block of simulated trajectories, one row per trajectory.

    Columns cover the steps first_step..first_step+width-1 (1-based).
    `states` holds D_n while it is below STATE_CAP and 0 afterwards;
    `log_states` always holds log D_n. `entry_signs[:, j]` is the sign
    s_{n-1} of the step that led into D_n (+1 for n = 1).
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    source: ChainSource
    seed: int
    n: int
    count: int
    first_step: int = 1
    ids: np.ndarray
    states: np.ndarray
    log_states: np.ndarray
    entry_signs: np.ndarray
    saturated_at: np.ndarray
    dropped: int = 0

    @property
    def width(self) -> int:
        return self.log_states.shape[1]

    @property
    def rows(self) -> int:
        return self.log_states.shape[0]

    def saturated_mask(self) -> np.ndarray:
        """True where the column's state is past the cap."""
        return self.states == 0

    def saturated_count(self) -> int:
        return int(np.count_nonzero(self.saturated_at))

    def repeat_frequency(self, step: int) -> float:
        """Share of rows with D_{step+1} = D_step below the cap."""
        j = step - self.first_step
        if not 0 <= j < self.width - 1:
            raise ValueError(f"step {step} needs columns {step} and {step + 1} in the batch")
        current = self.states[:, j]
        return float(np.mean((self.states[:, j + 1] == current) & (current != 0)))

    def trajectory(self, row: int) -> Optional[Trajectory]:
        """Row as a Trajectory, or None once it has left the integer range."""
        if self.saturated_at[row] != 0 or self.first_step != 1:
            return None
        return Trajectory(
            states=[int(s) for s in self.states[row]],
            source=self.source,
            seed=self.seed,
            trajectory_id=int(self.ids[row]),
        )

    def metadata(self) -> dict:
        return {
            "seed": self.seed,
            "source": self.source.value,
            "n": self.n,
            "count": self.count,
            "first_step": self.first_step,
            "dropped": self.dropped,
            "saturated": self.saturated_count(),
        }

    @classmethod
    def concatenate(cls, batches: list["TrajectoryBatch"]) -> "TrajectoryBatch":
        if not batches:
            raise ValueError("Nothing to concatenate")
        head = batches[0]
        return cls(
            source=head.source,
            seed=head.seed,
            n=head.n,
            count=sum(b.count for b in batches),
            first_step=head.first_step,
            ids=np.concatenate([b.ids for b in batches]),
            states=np.concatenate([b.states for b in batches]),
            log_states=np.concatenate([b.log_states for b in batches]),
            entry_signs=np.concatenate([b.entry_signs for b in batches]),
            saturated_at=np.concatenate([b.saturated_at for b in batches]),
            dropped=sum(b.dropped for b in batches),
        )
