"""
Per-trajectory statistics of simulated batches.

Columns past the state cap only carry log D_n, so everything here works
on logs there and on exact integers below the cap.
"""
import numpy as np

from sengel.markov.types import TrajectoryBatch

Columns = dict[str, np.ndarray]


def concat_columns(parts: list[Columns]) -> Columns:
    """Merge per-chunk columns, keeping chunk order."""
    if not parts:
        return {}
    return {key: np.concatenate([p[key] for p in parts]) for key in parts[0]}


def steps(batch: TrajectoryBatch) -> np.ndarray:
    """1-based step index of every column."""
    return np.arange(batch.first_step, batch.first_step + batch.width, dtype=np.int64)


def _pairs_below_cap(batch: TrajectoryBatch) -> np.ndarray:
    return (batch.states[:, 1:] != 0) & (batch.states[:, :-1] != 0)


def log_gaps(batch: TrajectoryBatch) -> np.ndarray:
    """
    log Delta_n per column; -inf where the state repeats.

    The first column of a batch starting at step 1 holds log d_1.
    Columns of a keep_last batch without a predecessor are NaN.
    """
    out = np.full((batch.rows, batch.width), np.nan)
    if batch.first_step == 1:
        out[:, 0] = batch.log_states[:, 0]
    if batch.width < 2:
        return out

    below = _pairs_below_cap(batch)
    diff = batch.states[:, 1:] - batch.states[:, :-1]
    log_prev = batch.log_states[:, :-1]
    log_next = batch.log_states[:, 1:]
    with np.errstate(divide="ignore", invalid="ignore"):
        exact = np.log(diff.astype(np.float64))
        # Delta = D_n (1 - D_{n-1}/D_n)
        approx = log_next + np.log(-np.expm1(log_prev - log_next))
    out[:, 1:] = np.where(below, exact, approx)
    return out


def log_ratios(batch: TrajectoryBatch) -> np.ndarray:
    """log R_n per column, with R_1 = d_1."""
    out = np.full((batch.rows, batch.width), np.nan)
    if batch.first_step == 1:
        out[:, 0] = batch.log_states[:, 0]
    if batch.width > 1:
        out[:, 1:] = np.diff(batch.log_states, axis=1)
    return out


def _odd_floor(values: np.ndarray) -> np.ndarray:
    floor = np.floor(values).astype(np.int64)
    return np.where(floor % 2 == 1, floor, floor - 1)


def odd_ratio_values(batch: TrajectoryBatch) -> np.ndarray:
    """
    Y_n per column: the greatest odd integer not above d_n / (d_{n-1} - s_{n-1}),
    and Y_1 the greatest odd integer not above d_1.

    Past the cap the ratio is taken from the log-states; the sign term is
    below float resolution there.
    """
    out = np.zeros((batch.rows, batch.width), dtype=np.int64)
    if batch.first_step == 1:
        out[:, 0] = batch.states[:, 0] - 1
    if batch.width < 2:
        return out

    below = _pairs_below_cap(batch)
    states = batch.states
    factor = states[:, :-1] - batch.entry_signs[:, 1:].astype(np.int64)
    safe_factor = np.where(below, factor, 1)
    quotient = states[:, 1:] // safe_factor
    exact = np.where(quotient % 2 == 1, quotient, quotient - 1)
    approx = _odd_floor(np.exp(np.diff(batch.log_states, axis=1)))
    out[:, 1:] = np.where(below, exact, approx)
    return out


def exceedance_counts(log_values: np.ndarray, n: np.ndarray, log_threshold: np.ndarray,
                      start: int, horizon: int) -> np.ndarray:
    """Per row, the number of n in [start, horizon] with log_values >= log_threshold."""
    window = (n >= start) & (n <= horizon)
    hits = log_values[:, window] >= log_threshold[window]
    return np.count_nonzero(hits, axis=1)


def oracle_odd_values(uniforms: np.ndarray) -> np.ndarray:
    """Independent odd variables with P(Y >= 2k - 1) = 1/(2k - 1), from uniforms in [0, 1)."""
    return _odd_floor(1.0 / (1.0 - uniforms))
