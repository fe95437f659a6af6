"""
Exceedance checks on digit ratios R_n = d_n / d_{n-1} and their running
maximum M_n.
"""
import math
from typing import Sequence

import numpy as np

from sengel.markov.rng import Stream, uniform_rows
from sengel.markov.types import TrajectoryBatch
from sengel.stats.measures import (
    Columns,
    exceedance_counts,
    log_ratios,
    odd_ratio_values,
    oracle_odd_values,
    steps,
)
from sengel.stats.types import Check, PhiFunction, VerificationReport

import logging
logger = logging.getLogger(__name__)

BB_MIN_N = 100_000
BB_WINDOW_START = 100
BB_EARLY_HORIZON = 1000
BB_SHARE = 0.90
BB_ORACLE_RATIO = 2.0
RATIO_MIN_N = 100_000
RATIO_WINDOW_START = 100
RATIO_SHARE = 0.90
RATIO_LIMSUP_BAND = (0.0, 2.5)
RATIO_LIMINF_CEILING = -3.0
MAX_LIMSUP_BAND = (0.0, 3.0)
MAX_LIMINF_BAND = (-2.5, 0.5)
MAX_RATIO_RATE_BAND = (0.6, 1.4)
Y_ONE_PROBABILITY = 2 / 3
Y_ONE_TOLERANCE = 0.02

DEFAULT_PHIS = (PhiFunction.parse("power:1"), PhiFunction.parse("nlogpow:3"))


def _key(series: str, phi: PhiFunction, horizon: int) -> str:
    return f"{series}[{phi.describe()}]@{horizon}"


def measure_borel_bernstein(batch: TrajectoryBatch, phis: Sequence[PhiFunction] = DEFAULT_PHIS,
                            oracle: bool = True) -> Columns:
    """
    Exceedance counts of R_n >= phi(n) and M_n >= phi(n) over n in [100, N],
    also up to N = 1000 when the batch is that long.

    With oracle=True the same counts are taken for independent odd
    variables Y_n with P(Y_n >= 2k - 1) = 1/(2k - 1), drawn from the
    trajectory's own oracle stream.
    """
    if batch.first_step != 1:
        raise ValueError("Exceedance counts need trajectories kept from step 1")
    n = steps(batch)
    horizons = [h for h in (BB_EARLY_HORIZON, batch.n) if h <= batch.n]
    log_r = log_ratios(batch)
    log_m = np.maximum.accumulate(log_r, axis=1)
    log_y = None
    if oracle:
        u = uniform_rows(batch.seed, batch.ids, batch.width, Stream.ORACLE)
        log_y = np.log(oracle_odd_values(u).astype(np.float64))

    columns: Columns = {"trajectory_id": batch.ids}
    for phi in phis:
        threshold = phi.log_values(n)
        for horizon in horizons:
            columns[_key("R", phi, horizon)] = exceedance_counts(log_r, n, threshold, BB_WINDOW_START, horizon)
            columns[_key("M", phi, horizon)] = exceedance_counts(log_m, n, threshold, BB_WINDOW_START, horizon)
            if log_y is not None:
                columns[_key("Y", phi, horizon)] = exceedance_counts(log_y, n, threshold, BB_WINDOW_START, horizon)
    return columns


def _median_ratio_ok(a: float, b: float) -> bool:
    if a == 0 and b == 0:
        return True
    return max(a, b) <= BB_ORACLE_RATIO * min(a, b)


def judge_borel_bernstein(columns: Columns, n: int, count: int,
                          phis: Sequence[PhiFunction] = DEFAULT_PHIS) -> VerificationReport:
    params = {"n": n, "count": count, "phi": [phi.describe() for phi in phis], "window_start": BB_WINDOW_START}
    if n < BB_MIN_N:
        return VerificationReport.inconclusive("bb", params, f"n = {n} is below {BB_MIN_N}")

    checks: list[Check] = []
    metrics: dict = {}
    for phi in phis:
        diverges = phi.series_diverges()
        metrics[f"{phi.describe()} series"] = "divergent" if diverges else "convergent"
        for series in ("R", "M"):
            late = columns[_key(series, phi, n)]
            metrics[f"{series}[{phi.describe()}] median@{n}"] = float(np.median(late))
            if diverges:
                share = float(np.mean(late >= 1))
                checks.append(Check(
                    name=f"{series}_n >= {phi.describe()} at least once in [{BB_WINDOW_START}, {n}]",
                    value=share, gate=f">= {BB_SHARE} of trajectories", passed=share >= BB_SHARE,
                    derivation="divergent sum of 1/phi: exceedances happen infinitely often almost surely",
                ))
                early = columns[_key(series, phi, BB_EARLY_HORIZON)]
                early_median = float(np.median(early))
                late_median = float(np.median(late))
                metrics[f"{series}[{phi.describe()}] median@{BB_EARLY_HORIZON}"] = early_median
                checks.append(Check(
                    name=f"median {series} exceedance count grows from {BB_EARLY_HORIZON} to {n}",
                    value=late_median - early_median, gate="> 0", passed=late_median > early_median,
                    derivation="expected counts grow like log N",
                ))
            else:
                share = float(np.mean(late == 0))
                checks.append(Check(
                    name=f"no {series}_n >= {phi.describe()} in [{BB_WINDOW_START}, {n}]",
                    value=share, gate=f">= {BB_SHARE} of trajectories", passed=share >= BB_SHARE,
                    derivation="convergent sum of 1/phi: the expected count on the window is far below 0.1",
                ))

        oracle_key = _key("Y", phi, n)
        if oracle_key in columns:
            r_median = float(np.median(columns[_key("R", phi, n)]))
            y_median = float(np.median(columns[oracle_key]))
            metrics[f"Y[{phi.describe()}] median@{n}"] = y_median
            checks.append(Check(
                name=f"median R and independent-Y exceedance counts for {phi.describe()} agree",
                value=(r_median + 1) / (y_median + 1),
                gate=f"within a factor {BB_ORACLE_RATIO:g}",
                passed=_median_ratio_ok(r_median, y_median),
                derivation="Y_n / 2 <= R_n < 2 Y_n + 4 and the Y_n are independent with tail 1/(2k-1)",
            ))
    return VerificationReport.from_checks("bb", params, metrics, checks)


def borel_bernstein_check(batch: TrajectoryBatch, phi: PhiFunction) -> VerificationReport:
    columns = measure_borel_bernstein(batch, [phi])
    return judge_borel_bernstein(columns, batch.n, batch.count, [phi])


def measure_ratio_limsup(batch: TrajectoryBatch) -> Columns:
    """
    Running max and min over n in [100, N] of (log R_n - log n) / log log n
    and of (log M_n - log n) / log log n, log M_N / log N and the
    per-trajectory count of Y_n = 1.
    """
    if batch.first_step != 1:
        raise ValueError("Ratio statistics need trajectories kept from step 1")
    n = steps(batch)
    log_r = log_ratios(batch)
    log_m = np.maximum.accumulate(log_r, axis=1)
    window = n >= RATIO_WINDOW_START
    if window.any():
        nn = n[window].astype(np.float64)
        r_stat = (log_r[:, window] - np.log(nn)) / np.log(np.log(nn))
        m_stat = (log_m[:, window] - np.log(nn)) / np.log(np.log(nn))
        extremes = (r_stat.max(axis=1), r_stat.min(axis=1), m_stat.max(axis=1), m_stat.min(axis=1))
    else:
        extremes = tuple(np.full(batch.rows, np.nan) for _ in range(4))
    y_values = odd_ratio_values(batch)
    return {
        "trajectory_id": batch.ids,
        "ratio_limsup": extremes[0],
        "ratio_liminf": extremes[1],
        "max_limsup": extremes[2],
        "max_liminf": extremes[3],
        "max_ratio_rate": log_m[:, -1] / math.log(max(batch.n, 2)),
        "y_one": np.count_nonzero(y_values == 1, axis=1),
        "y_total": np.full(batch.rows, batch.width, dtype=np.int64),
    }


def _band(band: tuple[float, float]) -> str:
    return f"({band[0]:g}, {band[1]:g})"


def _band_share(values: np.ndarray, band: tuple[float, float]) -> float:
    lo, hi = band
    return float(np.mean((values > lo) & (values < hi)))


def judge_ratio_limsup(columns: Columns, n: int, count: int) -> VerificationReport:
    params = {"n": n, "count": count, "label": "smoke, non-quantitative"}
    if n < RATIO_MIN_N:
        return VerificationReport.inconclusive("ratio", params, f"n = {n} is below {RATIO_MIN_N}")

    limsup = columns["ratio_limsup"]
    limsup_share = _band_share(limsup, RATIO_LIMSUP_BAND)
    rate = columns["max_ratio_rate"]
    rate_share = _band_share(rate, MAX_RATIO_RATE_BAND)
    y_one = float(np.sum(columns["y_one"]) / np.sum(columns["y_total"]))

    metrics = {
        "ratio_limsup_median": float(np.median(limsup)),
        "max_ratio_rate_median": float(np.median(rate)),
        "y_one_frequency": y_one,
    }
    checks = [
        Check(name="running max of (log R_n - log n)/log log n in (0, 2.5)", value=limsup_share,
              gate=f">= {RATIO_SHARE} of trajectories", passed=limsup_share >= RATIO_SHARE,
              derivation="the limsup is 1 almost surely"),
    ]

    if "ratio_liminf" in columns:
        liminf = columns["ratio_liminf"]
        liminf_share = float(np.mean(liminf < RATIO_LIMINF_CEILING))
        max_limsup = columns["max_limsup"]
        max_liminf = columns["max_liminf"]
        max_limsup_share = _band_share(max_limsup, MAX_LIMSUP_BAND)
        max_liminf_share = _band_share(max_liminf, MAX_LIMINF_BAND)
        metrics.update({
            "ratio_liminf_median": float(np.median(liminf)),
            "max_limsup_median": float(np.median(max_limsup)),
            "max_liminf_median": float(np.median(max_liminf)),
        })
        checks += [
            Check(name=f"running min of (log R_n - log n)/log log n below {RATIO_LIMINF_CEILING:g}",
                  value=liminf_share, gate=f">= {RATIO_SHARE} of trajectories",
                  passed=liminf_share >= RATIO_SHARE,
                  derivation="the liminf is -infinity; R_n near 1 puts the statistic near -log n/log log n"),
            Check(name=f"running max of (log M_n - log n)/log log n in {_band(MAX_LIMSUP_BAND)}",
                  value=max_limsup_share,
                  gate=f">= {RATIO_SHARE} of trajectories", passed=max_limsup_share >= RATIO_SHARE,
                  derivation="the limsup is 1 almost surely"),
            Check(name=f"running min of (log M_n - log n)/log log n in {_band(MAX_LIMINF_BAND)}",
                  value=max_liminf_share,
                  gate=f">= {RATIO_SHARE} of trajectories", passed=max_liminf_share >= RATIO_SHARE,
                  derivation="the liminf is 0 almost surely; M_n / n stays of order 1 on a finite window"),
        ]

    checks += [
        Check(name="log M_N / log N in (0.6, 1.4)", value=rate_share,
              gate=f">= {RATIO_SHARE} of trajectories", passed=rate_share >= RATIO_SHARE,
              derivation="log M_n / log n tends to 1; M_N is close to the max of N variables with tail 1/t"),
        Check(name="frequency of Y_n = 1", value=y_one, gate=f"within {Y_ONE_TOLERANCE} of 2/3",
              passed=abs(y_one - Y_ONE_PROBABILITY) < Y_ONE_TOLERANCE,
              derivation="P(Y_n = 1) = 1 - P(Y_n >= 3) = 2/3"),
    ]
    return VerificationReport.from_checks("ratio", params, metrics, checks)


def ratio_limsup_check(batch: TrajectoryBatch) -> VerificationReport:
    return judge_ratio_limsup(measure_ratio_limsup(batch), batch.n, batch.count)
