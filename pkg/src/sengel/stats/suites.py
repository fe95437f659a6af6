from abc import ABC, abstractmethod
import csv
import time
from typing import Callable, Optional, TextIO

import numpy as np

from sengel.config import Settings, load_settings
from sengel.markov.rng import derive_seed
from sengel.markov.simulate import simulate_chunks
from sengel.markov.types import BeyondCap, ChainSource, TrajectoryBatch
from sengel.stats import laws, limits, zero_one
from sengel.stats.measures import Columns, concat_columns
from sengel.stats.sampling import random_decimal_balls
from sengel.stats.types import Check, PhiFunction, VerificationReport, Verdict

import logging
logger = logging.getLogger(__name__)

INPUT_CHUNK = 4096


class VerificationSuite(ABC):
    """
    A named verification run: simulate or sample, measure chunk by chunk
    in id order, then judge the merged per-trajectory columns.
    """
    name: str
    default_n: int = 1
    default_count: int = 1
    default_chain: ChainSource = ChainSource.EXACT_CHAIN
    simulated: bool = True

    def __init__(self, settings: Optional[Settings] = None, n: Optional[int] = None,
                 count: Optional[int] = None, chain: Optional[ChainSource] = None):
        self.settings = settings or load_settings()
        self.n = n or self.default_n
        self.count = count or self.default_count
        self.chain = chain or self.default_chain
        self.raw: Columns = {}
        self._metrics = {
            "trajectories": 0,
            "chunks": 0,
            "saturated": 0,
            "dropped": 0,
            "time_secs": 0.0,
        }

    def get_metrics(self) -> dict:
        return self._metrics

    def run(self, seed: int) -> VerificationReport:
        logger.info(f"Running suite {self.name} with seed {seed}")
        start_at = time.perf_counter()
        report = self._run(seed)
        self._metrics["time_secs"] += time.perf_counter() - start_at
        logger.info(f"Suite {self.name}: {report.verdict.value} in {self._metrics['time_secs']:.1f}s")
        report.params["seed"] = seed
        if self._metrics["trajectories"]:
            report.params["chain"] = self.chain.value
            report.metrics["saturated"] = self._metrics["saturated"]
            report.metrics["dropped"] = self._metrics["dropped"]
        return report

    @abstractmethod
    def _run(self, seed: int) -> VerificationReport:
        pass

    def _measure_chains(self, seed: int, measure: Callable[[TrajectoryBatch], Columns],
                        keep_last: Optional[int] = None,
                        beyond_cap: BeyondCap = BeyondCap.LOG) -> Columns:
        parts = []
        for batch in simulate_chunks(self.chain, self.n, self.count, seed, keep_last=keep_last,
                                     beyond_cap=beyond_cap, settings=self.settings):
            self._metrics["chunks"] += 1
            self._metrics["trajectories"] += batch.count
            self._metrics["saturated"] += batch.saturated_count()
            self._metrics["dropped"] += batch.dropped
            parts.append(measure(batch))
            logger.debug(f"{self.name}: measured {self._metrics['trajectories']}/{self.count} trajectories")
        self.raw = concat_columns(parts)
        return self.raw

    def _measure_inputs(self, seed: int, measure: Callable) -> Columns:
        parts = []
        for start in range(0, self.count, INPUT_CHUNK):
            chunk = list(random_decimal_balls(seed, min(INPUT_CHUNK, self.count - start), first_id=start))
            self._metrics["chunks"] += 1
            parts.append(measure(chunk))
            logger.debug(f"{self.name}: measured {start + len(chunk)}/{self.count} inputs")
        self.raw = concat_columns(parts)
        return self.raw


class LlnSuite(VerificationSuite):
    name = "lln"
    default_n = 10_000
    default_count = 200

    def _run(self, seed: int) -> VerificationReport:
        columns = self._measure_chains(seed, limits.measure_lln, keep_last=2)
        return limits.judge_lln(columns, self.n, self.count, self._metrics["dropped"])


class CltSuite(VerificationSuite):
    name = "clt"
    default_n = 10_000
    default_count = 10_000

    def _run(self, seed: int) -> VerificationReport:
        columns = self._measure_chains(seed, limits.measure_clt, keep_last=2)
        return limits.judge_clt(columns, self.n, self.count, self._metrics["dropped"])


class LilSuite(VerificationSuite):
    name = "lil"
    default_n = 100_000
    default_count = 50

    def _run(self, seed: int) -> VerificationReport:
        columns = self._measure_chains(seed, limits.measure_lil)
        return limits.judge_lil(columns, self.n, self.count)


class BorelBernsteinSuite(VerificationSuite):
    name = "bb"
    default_n = 100_000
    default_count = 200

    def __init__(self, *args, phi: Optional[PhiFunction] = None, **kwargs):
        super().__init__(*args, **kwargs)
        self.phis = [phi] if phi else list(zero_one.DEFAULT_PHIS)

    def _run(self, seed: int) -> VerificationReport:
        columns = self._measure_chains(seed, lambda b: zero_one.measure_borel_bernstein(b, self.phis))
        return zero_one.judge_borel_bernstein(columns, self.n, self.count, self.phis)


class RatioSuite(VerificationSuite):
    name = "ratio"
    default_n = 100_000
    default_count = 100

    def _run(self, seed: int) -> VerificationReport:
        columns = self._measure_chains(seed, zero_one.measure_ratio_limsup)
        return zero_one.judge_ratio_limsup(columns, self.n, self.count)


class YnSuite(VerificationSuite):
    name = "yn"
    default_n = laws.YN_DIGITS
    default_count = 10_000
    simulated = False

    def _run(self, seed: int) -> VerificationReport:
        columns = self._measure_inputs(seed, lambda chunk: laws.measure_yn(chunk, self.n))
        return laws.judge_yn(columns, self.count, self.n)


class PmfSuite(VerificationSuite):
    name = "pmf"
    simulated = False
    default_count = 100_000

    def _run(self, seed: int) -> VerificationReport:
        columns = self._measure_inputs(seed, laws.measure_pmf)
        return laws.judge_pmf(columns, self.count)


class KernelSuite(VerificationSuite):
    name = "kernel"
    default_n = 2
    default_count = 100_000
    default_chain = ChainSource.SURROGATE_CHAIN

    def _run(self, seed: int) -> VerificationReport:
        columns = self._measure_chains(seed, laws.measure_kernel)
        return laws.judge_kernel(columns, self.count)


class RepeatSuite(VerificationSuite):
    name = "repeat"
    default_n = laws.REPEAT_LATE_STEP + 1
    default_count = 100_000
    default_chain = ChainSource.SURROGATE_CHAIN

    def _run(self, seed: int) -> VerificationReport:
        columns = self._measure_chains(seed, laws.measure_repeat)
        return laws.judge_repeat(columns, self.n, self.count)


SUITES: dict[str, type[VerificationSuite]] = {
    suite.name: suite
    for suite in (LlnSuite, CltSuite, LilSuite, BorelBernsteinSuite, RatioSuite,
                  YnSuite, PmfSuite, KernelSuite, RepeatSuite)
}


def create_suite(name: str, settings: Optional[Settings] = None, **options) -> VerificationSuite:
    if name not in SUITES:
        raise ValueError(f"Unknown suite {name!r}, expected one of {', '.join(SUITES)} or all")
    phi = options.pop("phi", None)
    if name == BorelBernsteinSuite.name:
        return BorelBernsteinSuite(settings, phi=phi, **options)
    return SUITES[name](settings, **options)


def run_all(seed: int, settings: Optional[Settings] = None, **options) -> VerificationReport:
    """
    Every suite in turn, each with its own sub-seed derived from seed and the suite name.

    n and chain only reach the suites that simulate chains; for yn, n would
    mean certified digits.
    """
    reports = []
    for name, suite_class in SUITES.items():
        sub_seed = derive_seed(seed, name)
        suite_options = dict(options)
        if not suite_class.simulated:
            suite_options.pop("n", None)
            suite_options.pop("chain", None)
        reports.append(create_suite(name, settings, **suite_options).run(sub_seed))

    checks = [Check(name=r.suite, gate="Pass", passed=r.verdict == Verdict.PASS, derivation=r.verdict.value)
              for r in reports]
    verdict = Verdict.PASS if all(c.passed for c in checks) else Verdict.FAIL
    return VerificationReport(
        suite="all",
        params={"seed": seed},
        metrics={r.suite: r.verdict.value for r in reports},
        verdict=verdict,
        checks=checks,
        reports=reports,
    )


def write_raw_csv(columns: Columns, out: TextIO) -> int:
    """One line per trajectory (or input) with every measured column."""
    if not columns:
        return 0
    names = list(columns)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(names)
    rows = len(next(iter(columns.values())))
    for row in range(rows):
        writer.writerow([_cell(columns[name][row]) for name in names])
    return rows


def _cell(value) -> str:
    if isinstance(value, (np.floating, float)):
        return repr(float(value))
    if isinstance(value, (np.bool_, bool)):
        return str(int(value))
    return str(int(value))
