import numpy as np
import pytest

from sengel.config import Settings
from sengel.errors import PrecisionExhausted, SaturatedBatch
from sengel.markov import ChainSource, initial_pmf, simulate, transition_pmf, transition_tail
from sengel.stats import (
    PhiFunction,
    Verdict,
    borel_bernstein_check,
    kernel_check,
    lln_check,
    random_decimal_balls,
)
from sengel.stats.laws import judge_kernel, judge_pmf, judge_repeat, judge_yn, measure_pmf, measure_yn
from sengel.stats.limits import judge_clt, judge_lil, judge_lln, measure_lil
from sengel.stats.measures import oracle_odd_values
from sengel.stats.test_measures import make_batch
from sengel.stats.zero_one import (
    judge_borel_bernstein,
    judge_ratio_limsup,
    measure_borel_bernstein,
    measure_ratio_limsup,
)


def exact_proportions(probabilities, total, values):
    counts = [round(float(p) * total) for p in probabilities]
    return np.repeat(np.asarray(values, dtype=np.int64), counts)


@pytest.mark.unit
def test_lln_constant_trajectory_fails():
    report = lln_check(make_batch(np.full((5, 1000), 2)))
    assert report.verdict == Verdict.FAIL


@pytest.mark.unit
def test_lln_short_batch_is_inconclusive():
    report = lln_check(make_batch(np.full((10, 10), 2)))
    assert report.verdict == Verdict.INCONCLUSIVE
    assert report.checks == []


@pytest.mark.unit
def test_lln_judge_passes_on_unit_rates():
    columns = {"log_state_rate": np.ones(100), "log_gap_rate": np.full(100, 1.01)}
    report = judge_lln(columns, n=10_000, count=100)
    assert report.verdict == Verdict.PASS
    assert len(report.checks) == 2


@pytest.mark.unit
def test_lln_rejects_heavily_dropped_batches():
    columns = {"log_state_rate": np.ones(90), "log_gap_rate": np.ones(90)}
    with pytest.raises(SaturatedBatch):
        judge_lln(columns, n=10_000, count=100, dropped=10)


@pytest.mark.unit
def test_clt_judge():
    rng = np.random.default_rng(1)
    normal = rng.standard_normal(10_000)
    assert judge_clt({"z_state": normal, "z_gap": normal}, n=10_000, count=10_000).verdict == Verdict.PASS
    uniform = rng.uniform(-1, 1, 10_000)
    assert judge_clt({"z_state": uniform, "z_gap": uniform}, n=10_000, count=10_000).verdict == Verdict.FAIL
    assert judge_clt({"z_state": normal[:100], "z_gap": normal[:100]}, n=10_000, count=100).verdict \
        == Verdict.INCONCLUSIVE


@pytest.mark.unit
def test_lil_judge():
    ok = {"lil_sup": np.full(50, 1.1), "lil_inf": np.full(50, -0.9)}
    assert judge_lil(ok, n=100_000, count=50).verdict == Verdict.PASS
    drifting = {"lil_sup": np.full(50, 5.0), "lil_inf": np.full(50, -0.9)}
    assert judge_lil(drifting, n=100_000, count=50).verdict == Verdict.FAIL
    assert judge_lil(ok, n=1000, count=1).verdict == Verdict.INCONCLUSIVE


@pytest.mark.unit
def test_lil_judge_covers_gaps():
    columns = {"lil_sup": np.full(50, 1.1), "lil_inf": np.full(50, -0.9),
               "gap_lil_sup": np.full(50, 1.0), "gap_lil_inf": np.full(50, -1.0)}
    report = judge_lil(columns, n=100_000, count=50)
    assert report.verdict == Verdict.PASS
    assert len(report.checks) == 4
    columns["gap_lil_inf"] = np.full(50, -4.0)
    report = judge_lil(columns, n=100_000, count=50)
    assert report.verdict == Verdict.FAIL
    assert [c.name for c in report.checks if not c.passed] == ["running inf for log gap_n in (-3, 0)"]


@pytest.mark.unit
def test_lil_gap_statistic_sits_below_the_state_statistic():
    batch = simulate(ChainSource.EXACT_CHAIN, 2000, 20, 4, settings=Settings(threads=1))
    columns = measure_lil(batch)
    # Delta_n < d_n
    assert np.all(np.isfinite(columns["gap_lil_sup"]))
    assert np.all(columns["gap_lil_sup"] <= columns["lil_sup"] + 1e-12)
    assert np.all(columns["gap_lil_inf"] <= columns["lil_inf"] + 1e-12)


@pytest.mark.unit
def test_lil_normalisation_matters():
    batch = simulate(ChainSource.EXACT_CHAIN, 2000, 20, 4, settings=Settings(threads=1))
    iterated = measure_lil(batch)
    plain = measure_lil(batch, iterated_log=False)
    assert np.all(np.abs(plain["lil_sup"]) >= np.abs(iterated["lil_sup"]) - 1e-12)


@pytest.mark.unit
def test_constant_phi_counts_every_step():
    batch = simulate(ChainSource.EXACT_CHAIN, 300, 5, 2, settings=Settings(threads=1))
    phi = PhiFunction.parse("constant:1")
    columns = measure_borel_bernstein(batch, [phi], oracle=False)
    assert list(columns["R[constant:1]@300"]) == [201] * 5
    assert list(columns["M[constant:1]@300"]) == [201] * 5


@pytest.mark.unit
def test_borel_bernstein_short_batch_is_inconclusive():
    batch = simulate(ChainSource.EXACT_CHAIN, 300, 5, 2, settings=Settings(threads=1))
    report = borel_bernstein_check(batch, PhiFunction.parse("power:1"))
    assert report.verdict == Verdict.INCONCLUSIVE


@pytest.mark.unit
def test_borel_bernstein_judge():
    n = 100_000
    divergent = PhiFunction.parse("power:1")
    convergent = PhiFunction.parse("nlogpow:3")
    columns = {}
    for series in ("R", "M", "Y"):
        columns[f"{series}[power:1]@1000"] = np.full(200, 2)
        columns[f"{series}[power:1]@{n}"] = np.full(200, 6)
        columns[f"{series}[nlogpow:3]@1000"] = np.zeros(200, dtype=np.int64)
        columns[f"{series}[nlogpow:3]@{n}"] = np.zeros(200, dtype=np.int64)
    report = judge_borel_bernstein(columns, n, 200, [divergent, convergent])
    assert report.verdict == Verdict.PASS

    columns["R[nlogpow:3]@100000"] = np.ones(200, dtype=np.int64)
    report = judge_borel_bernstein(columns, n, 200, [divergent, convergent])
    assert report.verdict == Verdict.FAIL


@pytest.mark.unit
def test_ratio_constant_trajectories_fail():
    batch = make_batch(np.full((20, 200), 2))
    columns = measure_ratio_limsup(batch)
    assert np.all(columns["y_one"] == 200)
    report = judge_ratio_limsup(columns, n=100_000, count=20)
    assert report.verdict == Verdict.FAIL
    # R_n = 1 keeps the R statistic low
    passed = [c.name for c in report.checks if c.passed]
    assert len(passed) == 1 and passed[0].startswith("running min of (log R_n")


def ratio_columns(count=100, **overrides):
    columns = {
        "ratio_limsup": np.full(count, 1.2),
        "ratio_liminf": np.full(count, -4.5),
        "max_limsup": np.full(count, 0.9),
        "max_liminf": np.full(count, -0.7),
        "max_ratio_rate": np.full(count, 1.0),
        "y_one": np.full(count, 667),
        "y_total": np.full(count, 1000),
    }
    columns.update({k: np.full(count, v) for k, v in overrides.items()})
    return columns


@pytest.mark.unit
def test_ratio_judge_bands():
    report = judge_ratio_limsup(ratio_columns(), n=100_000, count=100)
    assert report.verdict == Verdict.PASS
    assert len(report.checks) == 6
    assert report.metrics["max_liminf_median"] == pytest.approx(-0.7)

    for overrides in ({"ratio_liminf": -1.0}, {"max_limsup": -0.2}, {"max_limsup": 3.5},
                      {"max_liminf": -3.0}, {"max_liminf": 0.8}):
        report = judge_ratio_limsup(ratio_columns(**overrides), n=100_000, count=100)
        assert report.verdict == Verdict.FAIL, overrides
        assert sum(not c.passed for c in report.checks) == 1


@pytest.mark.unit
def test_ratio_measure_tracks_running_max():
    batch = simulate(ChainSource.EXACT_CHAIN, 500, 30, 6, settings=Settings(threads=1))
    columns = measure_ratio_limsup(batch)
    assert np.all(columns["ratio_liminf"] <= columns["ratio_limsup"])
    assert np.all(columns["max_liminf"] <= columns["max_limsup"])
    # M_n >= R_n at every step
    assert np.all(columns["max_limsup"] >= columns["ratio_limsup"])
    assert np.all(columns["max_liminf"] >= columns["ratio_liminf"])


@pytest.mark.unit
def test_yn_judge_on_independent_uniforms():
    rng = np.random.default_rng(5)
    count = 20_000
    columns = {"short": np.zeros(count, dtype=bool)}
    for k in range(1, 6):
        columns[f"y_{k}"] = rng.random(count)
        columns[f"Y_{k}"] = oracle_odd_values(rng.random(count))
    report = judge_yn(columns, count)
    assert report.verdict == Verdict.PASS

    columns["y_3"] = rng.random(count) ** 2
    assert judge_yn(columns, count).verdict == Verdict.FAIL


@pytest.mark.unit
def test_yn_needs_certified_digits():
    columns = {"short": np.array([True] * 3 + [False] * 97)}
    with pytest.raises(PrecisionExhausted):
        judge_yn(columns, 100)


@pytest.mark.unit
def test_measure_yn_on_decimal_inputs():
    inputs = list(random_decimal_balls(9, 200))
    columns = measure_yn(inputs)
    assert np.mean(columns["short"]) < 0.05
    ok = ~columns["short"]
    centers = np.array([float(ball.center) for _, ball in inputs])
    assert np.allclose(columns["y_1"][ok], centers[ok])
    assert np.all((columns["y_3"][ok] > 0) & (columns["y_3"][ok] < 1))
    assert np.all(columns["Y_2"][ok] % 2 == 1)


@pytest.mark.unit
def test_pmf_judge():
    K = 10
    probabilities = [initial_pmf(k) for k in range(1, K + 1)] + [1 / (2 * K + 1)]
    values = [2 * k for k in range(1, K + 1)] + [2 * K + 2]
    d1 = exact_proportions(probabilities, 100_000, values)
    report = judge_pmf({"d_1": d1}, count=len(d1), K=K)
    assert report.verdict == Verdict.PASS

    assert judge_pmf({"d_1": np.full(100_000, 2)}, count=100_000).verdict == Verdict.FAIL
    assert judge_pmf({"d_1": d1[:10]}, count=10).verdict == Verdict.INCONCLUSIVE


@pytest.mark.unit
def test_measure_pmf_first_digits():
    columns = measure_pmf(list(random_decimal_balls(3, 300)))
    d1 = columns["d_1"]
    assert np.all(d1[d1 > 0] % 2 == 0)
    assert np.mean(d1 == 2) > 0.5


@pytest.mark.unit
def test_kernel_judge():
    rows_d1, rows_d2 = [], []
    for k in (1, 2):
        probabilities = [transition_pmf(k, l) for l in range(k, 11)] + [transition_tail(k, 11)]
        values = [2 * l for l in range(k, 11)] + [30]
        d2 = exact_proportions(probabilities, 20_000, values)
        rows_d1.append(np.full(len(d2), 2 * k))
        rows_d2.append(d2)
    columns = {"D_1": np.concatenate(rows_d1), "D_2": np.concatenate(rows_d2)}
    assert judge_kernel(columns, count=len(columns["D_1"])).verdict == Verdict.PASS

    columns["D_2"] = columns["D_1"].copy()
    assert judge_kernel(columns, count=len(columns["D_1"])).verdict == Verdict.FAIL


@pytest.mark.unit
def test_repeat_judge():
    count = 1000
    columns = {}
    for j in range(1, 51):
        hits = max(0, 400 - 60 * j)
        columns[f"repeat_{j}"] = np.array([1] * hits + [0] * (count - hits), dtype=np.int8)
    assert judge_repeat(columns, n=51, count=count).verdict == Verdict.PASS
    columns["repeat_3"] = columns["repeat_1"]
    assert judge_repeat(columns, n=51, count=count).verdict == Verdict.FAIL
    assert judge_repeat(columns, n=10, count=count).verdict == Verdict.INCONCLUSIVE


@pytest.mark.integration
@pytest.mark.parametrize("source", [ChainSource.SURROGATE_CHAIN, ChainSource.EXACT_CHAIN])
def test_kernel_matches_transition_law(source):
    batch = simulate(source, 2, 100_000, 42, settings=Settings(threads=4))
    report = kernel_check(batch)
    assert report.verdict == Verdict.PASS, report.to_json()


@pytest.mark.integration
def test_lln_agrees_across_chains():
    verdicts = set()
    for source in (ChainSource.EXACT_CHAIN, ChainSource.SURROGATE_CHAIN):
        batch = simulate(source, 1000, 100, 42, keep_last=2, settings=Settings(threads=4))
        verdicts.add(lln_check(batch).verdict)
    assert verdicts == {Verdict.PASS}
