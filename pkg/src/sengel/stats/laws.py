"""
Distributional checks: the auxiliary y_n / Y_n variables and the first
digit of random reals, and the one-step kernel and repeat rate of the
surrogate chain.
"""
import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
import scipy.stats

from sengel.errors import PrecisionExhausted
from sengel.expansion import derive_sequences, expand_certified, t_orbit
from sengel.markov.law import initial_pmf, transition_pmf, transition_tail
from sengel.markov.types import TrajectoryBatch
from sengel.numerics.ball import Ball
from sengel.stats.measures import Columns
from sengel.stats.types import Check, VerificationReport

import logging
logger = logging.getLogger(__name__)

YN_DIGITS = 5
YN_MIN_COUNT = 10_000
YN_MAX_KS = 0.03
YN_MAX_SHORT_SHARE = 0.01
YN_TAIL_K = (2, 3, 4, 5)
SIGMAS = 3.0
PMF_MIN_COUNT = 100_000
PMF_DEFAULT_K = 10
PMF_MIN_PVALUE = 0.01
PMF_FIRST_TOLERANCE = 0.01
KERNEL_STATES = (1, 2)
KERNEL_MAX_L = 10
KERNEL_MIN_PVALUE = 0.01
REPEAT_TREND_STEPS = 5
REPEAT_LATE_STEP = 50
REPEAT_LATE_MAX = 0.02


def _within_sigmas(hits: int, total: int, p: float) -> tuple[float, float, bool]:
    freq = hits / total
    sigma = math.sqrt(p * (1 - p) / total)
    return freq, sigma, abs(freq - p) <= SIGMAS * sigma


def measure_yn(inputs: Iterable[tuple[int, Ball]], digits: int = YN_DIGITS) -> Columns:
    """
    y_1..y_digits and Y_1..Y_digits of each input ball, from its certified
    expansion and the exact orbit of its center.

    Rows whose ball certifies fewer digits are flagged in `short`.
    """
    ids, ys, Ys, short = [], [], [], []
    for input_id, ball in inputs:
        e = expand_certified(ball, max_digits=digits)
        ids.append(input_id)
        if e.certified_prefix_len < digits:
            short.append(True)
            ys.append([np.nan] * digits)
            Ys.append([0] * digits)
            continue
        seq = derive_sequences(e, t_orbit(ball.center, digits))
        short.append(False)
        ys.append([float(y) for y in seq.y_values])
        Ys.append(seq.Y_values)
    columns: Columns = {
        "trajectory_id": np.asarray(ids, dtype=np.int64),
        "short": np.asarray(short, dtype=bool),
    }
    y = np.asarray(ys, dtype=np.float64).reshape(len(ids), digits)
    Y = np.asarray(Ys, dtype=np.int64).reshape(len(ids), digits)
    for k in range(digits):
        columns[f"y_{k + 1}"] = y[:, k]
        columns[f"Y_{k + 1}"] = Y[:, k]
    return columns


def judge_yn(columns: Columns, count: int, digits: int = YN_DIGITS) -> VerificationReport:
    params = {"count": count, "digits": digits}
    short = columns["short"]
    short_share = float(np.mean(short)) if len(short) else 1.0
    if short_share > YN_MAX_SHORT_SHARE:
        raise PrecisionExhausted(f"{short_share:.2%} of inputs certified fewer than {digits} digits")
    if count < YN_MIN_COUNT or digits < 2:
        return VerificationReport.inconclusive("yn", params, f"needs count >= {YN_MIN_COUNT} and two digits")

    ok = ~short
    total = int(np.count_nonzero(ok))
    checks: list[Check] = []
    metrics: dict = {"short": int(np.count_nonzero(short))}

    for k in range(1, digits + 1):
        result = scipy.stats.kstest(columns[f"y_{k}"][ok], "uniform")
        metrics[f"y_{k}_ks"] = float(result.statistic)
        checks.append(Check(
            name=f"KS distance of y_{k} to uniform(0, 1)", value=float(result.statistic),
            gate=f"< {YN_MAX_KS}", passed=float(result.statistic) < YN_MAX_KS,
            derivation="y_n is exactly uniform; sampling noise is 1.36/sqrt(count)",
        ))

    Y1, Y2 = columns["Y_1"][ok], columns["Y_2"][ok]
    freq, sigma, passed = _within_sigmas(int(np.count_nonzero((Y1 >= 3) & (Y2 >= 3))), total, 1 / 9)
    metrics["joint_Y_tail"] = freq
    checks.append(Check(name="P(Y_1 >= 3, Y_2 >= 3)", value=freq, gate=f"within 3 sigma ({sigma:.4f}) of 1/9",
                        passed=passed, derivation="independent Y_n with P(Y_n >= 3) = 1/3"))

    y1, y2 = columns["y_1"][ok], columns["y_2"][ok]
    freq, sigma, passed = _within_sigmas(int(np.count_nonzero((y1 <= 1 / 3) & (y2 <= 1 / 5))), total, 1 / 15)
    metrics["joint_y_cdf"] = freq
    checks.append(Check(name="P(y_1 <= 1/3, y_2 <= 1/5)", value=freq, gate=f"within 3 sigma ({sigma:.4f}) of 1/15",
                        passed=passed, derivation="the joint law of y_1..y_n is a product of uniforms"))

    pooled = np.concatenate([columns[f"Y_{k}"][ok] for k in range(1, digits + 1)])
    for k in YN_TAIL_K:
        odd = 2 * k - 1
        freq, sigma, passed = _within_sigmas(int(np.count_nonzero(pooled >= odd)), len(pooled), 1 / odd)
        metrics[f"Y_tail_{odd}"] = freq
        checks.append(Check(name=f"P(Y_n >= {odd}) pooled over n <= {digits}", value=freq,
                            gate=f"within 3 sigma ({sigma:.4f}) of 1/{odd}", passed=passed,
                            derivation="the Y_n are identically distributed with P(Y_n >= 2k-1) = 1/(2k-1)"))
    metrics["Y_one_frequency"] = float(np.mean(pooled == 1))
    return VerificationReport.from_checks("yn", params, metrics, checks)


def yn_uniformity_check(inputs: Sequence[tuple[int, Ball]], digits: int = YN_DIGITS) -> VerificationReport:
    return judge_yn(measure_yn(inputs, digits), len(inputs), digits)


def measure_pmf(inputs: Iterable[tuple[int, Ball]]) -> Columns:
    """Certified first digit of each input, 0 when it cannot be certified."""
    ids, first = [], []
    for input_id, ball in inputs:
        e = expand_certified(ball, max_digits=1)
        ids.append(input_id)
        first.append(e.digits[0] if e.certified_prefix_len >= 1 else 0)
    return {"trajectory_id": np.asarray(ids, dtype=np.int64), "d_1": np.asarray(first, dtype=np.int64)}


def judge_pmf(columns: Columns, count: int, K: int = PMF_DEFAULT_K) -> VerificationReport:
    params = {"count": count, "K": K}
    if count < PMF_MIN_COUNT:
        return VerificationReport.inconclusive("pmf", params, f"count = {count} is below {PMF_MIN_COUNT}")

    d1 = columns["d_1"]
    d1 = d1[d1 > 0]
    total = len(d1)
    observed = [int(np.count_nonzero(d1 == 2 * k)) for k in range(1, K + 1)]
    observed.append(int(np.count_nonzero(d1 > 2 * K)))
    probabilities = [initial_pmf(k) for k in range(1, K + 1)] + [Fraction(1, 2 * K + 1)]
    expected = [float(p * total) for p in probabilities]
    result = scipy.stats.chisquare(observed, expected)
    first = observed[0] / total

    metrics = {"uncertified": int(count - total), "chi2": float(result.statistic),
               "pvalue": float(result.pvalue), "d_1_two_frequency": first}
    checks = [
        Check(name=f"chi-square of d_1 over 2..{2 * K} and tail", value=float(result.pvalue),
              gate=f"p > {PMF_MIN_PVALUE}", passed=float(result.pvalue) > PMF_MIN_PVALUE,
              derivation="P(d_1 = 2k) = 2/((2k-1)(2k+1)), P(d_1 > 2K) = 1/(2K+1)"),
        Check(name="frequency of d_1 = 2", value=first, gate=f"within {PMF_FIRST_TOLERANCE} of 2/3",
              passed=abs(first - 2 / 3) < PMF_FIRST_TOLERANCE,
              derivation="P(d_1 = 2) = 2/3; 3 standard deviations at count 1e5 is 0.0045"),
    ]
    return VerificationReport.from_checks("pmf", params, metrics, checks)


def empirical_pmf_check(inputs: Sequence[tuple[int, Ball]], K: int = PMF_DEFAULT_K) -> VerificationReport:
    return judge_pmf(measure_pmf(inputs), len(inputs), K)


def measure_kernel(batch: TrajectoryBatch) -> Columns:
    if batch.first_step != 1 or batch.width < 2:
        raise ValueError("Kernel statistics need the first two steps")
    return {"trajectory_id": batch.ids, "D_1": batch.states[:, 0], "D_2": batch.states[:, 1]}


def judge_kernel(columns: Columns, count: int, states: Sequence[int] = KERNEL_STATES,
                 max_l: int = KERNEL_MAX_L) -> VerificationReport:
    params = {"count": count, "from_states": [2 * k for k in states], "max_l": max_l}
    checks: list[Check] = []
    metrics: dict = {}
    for k in states:
        following = columns["D_2"][columns["D_1"] == 2 * k]
        total = len(following)
        metrics[f"from_{2 * k}"] = total
        if total == 0:
            return VerificationReport.inconclusive("kernel", params, f"no trajectory started at {2 * k}")
        observed = [int(np.count_nonzero(following == 2 * l)) for l in range(k, max_l + 1)]
        observed.append(int(np.count_nonzero(following > 2 * max_l)))
        probabilities = [transition_pmf(k, l) for l in range(k, max_l + 1)] + [transition_tail(k, max_l + 1)]
        expected = [float(p * total) for p in probabilities]
        result = scipy.stats.chisquare(observed, expected)
        metrics[f"from_{2 * k}_pvalue"] = float(result.pvalue)
        checks.append(Check(
            name=f"chi-square of one-step transitions from {2 * k}", value=float(result.pvalue),
            gate=f"p > {KERNEL_MIN_PVALUE}", passed=float(result.pvalue) > KERNEL_MIN_PVALUE,
            derivation="the surrogate chain has the digit chain's transition kernel",
        ))
    return VerificationReport.from_checks("kernel", params, metrics, checks)


def kernel_check(batch: TrajectoryBatch) -> VerificationReport:
    return judge_kernel(measure_kernel(batch), batch.count)


def measure_repeat(batch: TrajectoryBatch) -> Columns:
    """repeat_j is 1 when D_{j+1} = D_j below the cap."""
    if batch.first_step != 1:
        raise ValueError("Repeat statistics need trajectories kept from step 1")
    columns: Columns = {"trajectory_id": batch.ids}
    states = batch.states
    repeats = (states[:, 1:] == states[:, :-1]) & (states[:, :-1] != 0)
    for j in range(repeats.shape[1]):
        columns[f"repeat_{j + 1}"] = repeats[:, j].astype(np.int8)
    return columns


def judge_repeat(columns: Columns, n: int, count: int) -> VerificationReport:
    params = {"n": n, "count": count, "label": "smoke, non-quantitative"}
    if n < REPEAT_LATE_STEP + 1:
        return VerificationReport.inconclusive("repeat", params, f"n = {n} is below {REPEAT_LATE_STEP + 1}")

    freq = {j: float(np.mean(columns[f"repeat_{j}"])) for j in range(1, n)}
    trend = [freq[j] for j in range(1, REPEAT_TREND_STEPS + 1)]
    decreasing = all(a > b for a, b in zip(trend, trend[1:]))
    late = freq[REPEAT_LATE_STEP]
    metrics = {f"repeat_{j}": freq[j] for j in range(1, REPEAT_TREND_STEPS + 1)}
    metrics[f"repeat_{REPEAT_LATE_STEP}"] = late
    checks = [
        Check(name=f"repeat frequency decreases over n = 1..{REPEAT_TREND_STEPS}", value=trend[-1],
              gate="strictly decreasing", passed=decreasing,
              derivation="P(D_{n+1} = D_n) = E[1/D_n] and D_n grows"),
        Check(name=f"repeat frequency at n = {REPEAT_LATE_STEP}", value=late, gate=f"< {REPEAT_LATE_MAX}",
              passed=late < REPEAT_LATE_MAX, derivation="repeats happen only finitely often"),
    ]
    return VerificationReport.from_checks("repeat", params, metrics, checks)


def repeat_check(batch: TrajectoryBatch) -> VerificationReport:
    return judge_repeat(measure_repeat(batch), batch.n, batch.count)
