from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, Optional

import numpy as np

from sengel.config import Settings, load_settings
from sengel.markov.chains import ChainSampler, make_sampler
from sengel.markov.rng import Stream, exponential_from_uniform, uniform_rows
from sengel.markov.types import BeyondCap, ChainSource, TrajectoryBatch

import logging
logger = logging.getLogger(__name__)


def _simulate_rows(
    sampler: ChainSampler,
    n: int,
    ids: np.ndarray,
    master_seed: int,
    keep_last: Optional[int],
    beyond_cap: BeyondCap,
) -> TrajectoryBatch:
    rows = len(ids)
    u = uniform_rows(master_seed, ids, n, sampler.stream)
    coins = uniform_rows(master_seed, ids, n, Stream.SIGNS)

    states = np.zeros((rows, n), dtype=np.int64)
    log_states = np.empty((rows, n), dtype=np.float64)
    saturated_at = np.zeros(rows, dtype=np.int64)

    states[:, 0] = sampler.initial(u[:, 0])
    log_states[:, 0] = np.log(states[:, 0].astype(np.float64))
    active = np.ones(rows, dtype=bool)

    j = 1
    while j < n and active.any():
        live = np.nonzero(active)[0]
        gone = np.nonzero(~active)[0]
        if gone.size:
            # past the cap: log D_{n+1} = log D_n + X_{n+1}
            log_states[gone, j] = log_states[gone, j - 1] + exponential_from_uniform(u[gone, j])

        nxt, log_nxt = sampler.advance(states[live, j - 1], u[live, j])
        states[live, j] = nxt
        log_states[live, j] = log_nxt
        capped = live[nxt == 0]
        if capped.size:
            saturated_at[capped] = j + 1
            active[capped] = False
        j += 1

    if j < n:
        logger.debug(f"All {rows} trajectories past the cap at step {j}, continuing in log-state")
        # same left-to-right additions as the per-step branch above
        tail = np.concatenate([log_states[:, j - 1:j], exponential_from_uniform(u[:, j:])], axis=1)
        log_states[:, j:] = np.cumsum(tail, axis=1)[:, 1:]

    entry_signs = np.ones((rows, n), dtype=np.int8)
    increased = (states[:, 1:] > states[:, :-1]) | (states[:, 1:] == 0)
    entry_signs[:, 1:] = np.where(increased, np.where(coins[:, 1:] < 0.5, 1, -1), 1)

    dropped = 0
    keep = slice(None)
    if beyond_cap == BeyondCap.DROP:
        keep = saturated_at == 0
        dropped = int(rows - np.count_nonzero(keep))

    first = 0 if keep_last is None else max(0, n - keep_last)
    return TrajectoryBatch(
        source=sampler.source,
        seed=master_seed,
        n=n,
        count=rows,
        first_step=first + 1,
        ids=np.asarray(ids, dtype=np.int64)[keep],
        states=states[keep, first:],
        log_states=log_states[keep, first:],
        entry_signs=entry_signs[keep, first:],
        saturated_at=saturated_at[keep],
        dropped=dropped,
    )


def simulate_chunks(
    source: ChainSource,
    n: int,
    count: int,
    master_seed: int,
    keep_last: Optional[int] = None,
    beyond_cap: BeyondCap = BeyondCap.LOG,
    settings: Optional[Settings] = None,
    first_id: int = 0,
) -> Iterator[TrajectoryBatch]:
    """
    Simulate trajectories first_id..first_id+count-1 in chunks, yielded in
    ascending id order.

    Chunks run on a thread pool bounded by settings.threads; since every
    trajectory draws from its own counter-based stream, the output does not
    depend on the worker count or the chunk size.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if keep_last is not None and keep_last < 1:
        raise ValueError(f"keep_last must be >= 1, got {keep_last}")

    settings = settings or load_settings()
    sampler = make_sampler(source)
    rows_per_chunk = max(1, settings.chunk_elements // n)
    starts = range(first_id, first_id + count, rows_per_chunk)
    logger.info(f"Simulating {count} {source.value} trajectories of length {n} "
                f"in {len(starts)} chunks on {settings.threads} threads")

    with ThreadPoolExecutor(max_workers=settings.threads) as executor:
        pending = deque()
        for start in starts:
            ids = np.arange(start, min(start + rows_per_chunk, first_id + count), dtype=np.int64)
            pending.append(executor.submit(_simulate_rows, sampler, n, ids, master_seed, keep_last, beyond_cap))
            if len(pending) >= settings.threads:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()


def simulate(
    source: ChainSource,
    n: int,
    count: int,
    master_seed: int,
    keep_last: Optional[int] = None,
    beyond_cap: BeyondCap = BeyondCap.LOG,
    settings: Optional[Settings] = None,
) -> TrajectoryBatch:
    """count trajectories of length n as one batch."""
    return TrajectoryBatch.concatenate(
        list(simulate_chunks(source, n, count, master_seed, keep_last, beyond_cap, settings))
    )
