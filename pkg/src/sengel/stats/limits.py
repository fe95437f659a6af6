"""
Growth-rate checks on simulated digit chains: the almost-sure rate
log d_n / n -> 1, the normal fluctuations of log d_n around n, and a
smoke test of the iterated-logarithm envelope.
"""
import math
import warnings

import numpy as np
import scipy.stats

from sengel.errors import SaturatedBatch
from sengel.markov.types import TrajectoryBatch
from sengel.stats.measures import Columns, log_gaps, steps
from sengel.stats.types import Check, VerificationReport

import logging
logger = logging.getLogger(__name__)

LLN_MIN_N = 1000
LLN_SHARE = 0.95
CLT_MIN_N = 3000
CLT_MIN_COUNT = 5000
CLT_MAX_KS = 0.05
LIL_MIN_N = 100_000
LIL_GRID_START = 16
LIL_BAND = 3.0
LIL_SHARE = 0.90
MAX_DROPPED_SHARE = 0.05


def check_dropped(dropped: int, count: int) -> None:
    if count and dropped / count > MAX_DROPPED_SHARE:
        raise SaturatedBatch(f"{dropped} of {count} trajectories were dropped at the state cap "
                             f"(limit {MAX_DROPPED_SHARE:.0%})")


def _params(n: int, count: int, **extra) -> dict:
    return {"n": n, "count": count, **extra}


def measure_lln(batch: TrajectoryBatch) -> Columns:
    n = batch.n
    return {
        "trajectory_id": batch.ids,
        "log_state_rate": batch.log_states[:, -1] / n,
        "log_gap_rate": log_gaps(batch)[:, -1] / n,
    }


def judge_lln(columns: Columns, n: int, count: int, dropped: int = 0) -> VerificationReport:
    check_dropped(dropped, count)
    params = _params(n, count)
    if n < LLN_MIN_N:
        return VerificationReport.inconclusive("lln", params, f"n = {n} is below {LLN_MIN_N}")

    tolerance = 5 / math.sqrt(n)
    checks = []
    metrics = {"tolerance": tolerance}
    for key, label in (("log_state_rate", "log d_n / n"), ("log_gap_rate", "log gap_n / n")):
        rate = columns[key]
        with np.errstate(invalid="ignore"):
            share = float(np.mean(np.abs(rate - 1.0) < tolerance))
        metrics[f"{key}_mean"] = float(np.mean(rate[np.isfinite(rate)])) if np.isfinite(rate).any() else None
        metrics[f"{key}_share"] = share
        checks.append(Check(
            name=f"{label} within 5/sqrt(n) of 1",
            value=share,
            gate=f">= {LLN_SHARE} of trajectories",
            passed=share >= LLN_SHARE,
            derivation="log d_n is a sum of n unit exponentials up to o(sqrt n); the gate is 5 standard deviations",
        ))
    return VerificationReport.from_checks("lln", params, metrics, checks)


def lln_check(batch: TrajectoryBatch) -> VerificationReport:
    return judge_lln(measure_lln(batch), batch.n, batch.count, batch.dropped)


def measure_clt(batch: TrajectoryBatch) -> Columns:
    n = batch.n
    root = math.sqrt(n)
    return {
        "trajectory_id": batch.ids,
        "z_state": (batch.log_states[:, -1] - n) / root,
        "z_gap": (log_gaps(batch)[:, -1] - n) / root,
    }


def judge_clt(columns: Columns, n: int, count: int, dropped: int = 0) -> VerificationReport:
    check_dropped(dropped, count)
    params = _params(n, count)
    if count < CLT_MIN_COUNT or n < CLT_MIN_N:
        return VerificationReport.inconclusive(
            "clt", params, f"needs count >= {CLT_MIN_COUNT} and n >= {CLT_MIN_N}")

    checks = []
    metrics = {}
    for key, label in (("z_state", "(log d_n - n)/sqrt(n)"), ("z_gap", "(log gap_n - n)/sqrt(n)")):
        result = scipy.stats.kstest(columns[key], "norm")
        metrics[f"{key}_ks"] = float(result.statistic)
        metrics[f"{key}_pvalue"] = float(result.pvalue)
        checks.append(Check(
            name=f"KS distance of {label} to the standard normal",
            value=float(result.statistic),
            gate=f"< {CLT_MAX_KS}",
            passed=float(result.statistic) < CLT_MAX_KS,
            derivation="sampling noise 1.36/sqrt(count) plus a Berry-Esseen term of order 1/sqrt(n)",
        ))
    return VerificationReport.from_checks("clt", params, metrics, checks)


def clt_check(batch: TrajectoryBatch) -> VerificationReport:
    return judge_clt(measure_clt(batch), batch.n, batch.count, batch.dropped)


def measure_lil(batch: TrajectoryBatch, iterated_log: bool = True) -> Columns:
    """
    Running sup and inf of (log d_n - n) / sqrt(2 n log log n) over n >= 16,
    and of the same statistic for the gaps log Delta_n.

    With iterated_log=False the statistic is normalised by sqrt(n) instead.
    Repeated states (Delta_n = 0) are left out of the gap statistic.
    """
    n = steps(batch)
    grid = n >= LIL_GRID_START
    if not grid.any():
        nan = np.full(batch.rows, np.nan)
        return {"trajectory_id": batch.ids, "lil_sup": nan, "lil_inf": nan,
                "gap_lil_sup": nan, "gap_lil_inf": nan}

    nn = n[grid].astype(np.float64)
    scale = np.sqrt(2 * nn * np.log(np.log(nn))) if iterated_log else np.sqrt(nn)
    stat = (batch.log_states[:, grid] - nn) / scale
    gaps = log_gaps(batch)[:, grid]
    gap_stat = np.where(np.isfinite(gaps), (gaps - nn) / scale, np.nan)
    with warnings.catch_warnings():
        # all-NaN rows only happen for keep_last batches without a predecessor
        warnings.simplefilter("ignore", RuntimeWarning)
        gap_sup = np.nanmax(gap_stat, axis=1)
        gap_inf = np.nanmin(gap_stat, axis=1)
    return {
        "trajectory_id": batch.ids,
        "lil_sup": stat.max(axis=1),
        "lil_inf": stat.min(axis=1),
        "gap_lil_sup": gap_sup,
        "gap_lil_inf": gap_inf,
    }


def judge_lil(columns: Columns, n: int, count: int) -> VerificationReport:
    params = _params(n, count, label="smoke, non-quantitative")
    if n < LIL_MIN_N:
        return VerificationReport.inconclusive("lil", params, f"n = {n} is below {LIL_MIN_N}")

    checks = []
    metrics = {}
    series = [("lil", "log d_n")]
    if "gap_lil_sup" in columns:
        series.append(("gap_lil", "log gap_n"))
    for prefix, label in series:
        sup = columns[f"{prefix}_sup"]
        inf = columns[f"{prefix}_inf"]
        sup_share = float(np.mean((sup > 0) & (sup < LIL_BAND)))
        inf_share = float(np.mean((inf < 0) & (inf > -LIL_BAND)))
        metrics.update({
            f"{prefix}_sup_median": float(np.median(sup)),
            f"{prefix}_inf_median": float(np.median(inf)),
            f"{prefix}_sup_max": float(np.max(sup)),
            f"{prefix}_inf_min": float(np.min(inf)),
        })
        checks += [
            Check(name=f"running sup for {label} in (0, 3)", value=sup_share,
                  gate=f">= {LIL_SHARE} of trajectories", passed=sup_share >= LIL_SHARE,
                  derivation="the limsup is 1 almost surely; finite grids sit well inside the band"),
            Check(name=f"running inf for {label} in (-3, 0)", value=inf_share,
                  gate=f">= {LIL_SHARE} of trajectories", passed=inf_share >= LIL_SHARE,
                  derivation="the liminf is -1 almost surely; finite grids sit well inside the band"),
        ]
    return VerificationReport.from_checks("lil", params, metrics, checks)


def lil_smoke(batch: TrajectoryBatch) -> VerificationReport:
    return judge_lil(measure_lil(batch), batch.n, batch.count)
