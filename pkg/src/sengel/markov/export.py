import csv
import json
from typing import Iterable, TextIO

from sengel.markov.types import TrajectoryBatch

CSV_HEADER = ["trajectory_id", "n", "state_or_logstate", "saturated"]


def write_trajectory_csv(batches: Iterable[TrajectoryBatch], out: TextIO, header: bool = True) -> int:
    """
    Long-format CSV, one line per (trajectory, step).

    Integer states are written as integers; past the cap the natural log of
    the state is written instead and `saturated` is 1.

    Returns:
        Number of data lines written
    """
    writer = csv.writer(out, lineterminator="\n")
    if header:
        writer.writerow(CSV_HEADER)
    lines = 0
    for batch in batches:
        for row in range(batch.rows):
            trajectory_id = int(batch.ids[row])
            for col in range(batch.width):
                state = int(batch.states[row, col])
                n = batch.first_step + col
                if state != 0:
                    writer.writerow([trajectory_id, n, state, 0])
                else:
                    writer.writerow([trajectory_id, n, repr(float(batch.log_states[row, col])), 1])
                lines += 1
    return lines


def metadata_json(batch: TrajectoryBatch) -> str:
    return json.dumps(batch.metadata(), indent=2, sort_keys=True)
