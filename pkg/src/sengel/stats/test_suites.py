import io
import json

import numpy as np
import pytest

from sengel.config import Settings
from sengel.stats import (
    SUITES,
    Check,
    PhiFunction,
    PhiKind,
    VerificationReport,
    Verdict,
    create_suite,
    run_all,
    random_decimal_text,
    write_raw_csv,
)


@pytest.mark.unit
@pytest.mark.parametrize("text, kind, param", [
    ("power:1", PhiKind.POWER, 1.0),
    ("nlogpow:3", PhiKind.NLOGPOW, 3.0),
    ("constant:2.5", PhiKind.CONSTANT, 2.5),
    ("power", PhiKind.POWER, 1.0),
])
def test_phi_parse(text, kind, param):
    phi = PhiFunction.parse(text)
    assert phi.kind == kind
    assert phi.param == param


@pytest.mark.unit
def test_phi_values():
    n = np.array([1, 2, 10, 100])
    assert np.allclose(PhiFunction.parse("power:1")(n), n)
    assert np.allclose(PhiFunction.parse("nlogpow:3")(n), n * np.log(np.maximum(n, 3)) ** 3)
    assert np.allclose(PhiFunction.parse("constant:2")(n), 2)
    assert np.allclose(PhiFunction.parse("custom:1,4,9")(n), [1, 4, 9, 9])
    assert np.all(PhiFunction.parse("nlogpow:3")(np.arange(1, 100)) > 0)


@pytest.mark.unit
def test_phi_series_classification():
    assert PhiFunction.parse("power:1").series_diverges()
    assert not PhiFunction.parse("power:1.5").series_diverges()
    assert PhiFunction.parse("nlogpow:1").series_diverges()
    assert not PhiFunction.parse("nlogpow:3").series_diverges()
    assert PhiFunction.parse("constant:1").series_diverges()


@pytest.mark.unit
@pytest.mark.parametrize("text", ["cubic:2", "constant:0", "custom:", "custom:1,-2", "power:x"])
def test_phi_rejects(text):
    with pytest.raises(ValueError):
        PhiFunction.parse(text)


@pytest.mark.unit
def test_report_json_schema():
    report = VerificationReport.from_checks(
        "lln", {"n": 10}, {"tolerance": 0.5},
        [Check(name="a", value=0.99, gate=">= 0.95", passed=True)],
    )
    data = json.loads(report.to_json())
    assert set(data) == {"suite", "params", "metrics", "verdict", "checks"}
    assert data["verdict"] == "Pass"
    assert data["checks"][0]["pass"] is True
    assert VerificationReport.model_validate(data) == report


@pytest.mark.unit
def test_report_without_checks_is_not_a_pass():
    assert VerificationReport.from_checks("x", {}, {}, []).verdict == Verdict.FAIL


@pytest.mark.unit
def test_random_decimal_text():
    text = random_decimal_text(1, 0)
    assert text.startswith("0.") and len(text) == 42
    assert text == random_decimal_text(1, 0)
    assert text != random_decimal_text(1, 1)


@pytest.mark.unit
def test_create_suite():
    assert set(SUITES) == {"lln", "clt", "lil", "bb", "ratio", "yn", "pmf", "kernel", "repeat"}
    suite = create_suite("bb", Settings(threads=1), phi=PhiFunction.parse("power:1"), n=10, count=3)
    assert suite.n == 10 and suite.count == 3
    assert [p.describe() for p in suite.phis] == ["power:1"]
    with pytest.raises(ValueError):
        create_suite("nope")


@pytest.mark.unit
def test_small_suite_is_inconclusive_and_records_metrics():
    suite = create_suite("lln", Settings(threads=2), n=150, count=20)
    report = suite.run(7)
    assert report.verdict == Verdict.INCONCLUSIVE
    assert report.params["seed"] == 7
    assert report.metrics["saturated"] == 20
    assert suite.get_metrics()["trajectories"] == 20
    assert len(suite.raw["trajectory_id"]) == 20


@pytest.mark.unit
def test_reports_do_not_depend_on_threads_or_chunks():
    a = create_suite("lln", Settings(threads=1, chunk_elements=3000), n=1000, count=30).run(42)
    b = create_suite("lln", Settings(threads=4, chunk_elements=50_000), n=1000, count=30).run(42)
    assert a.to_json() == b.to_json()


@pytest.mark.integration
def test_run_all_keeps_trajectory_length_away_from_input_suites():
    report = run_all(42, Settings(threads=2), n=200, count=20)
    assert report.suite == "all"
    assert [r.suite for r in report.reports] == list(SUITES)
    by_name = {r.suite: r for r in report.reports}
    assert by_name["yn"].params["digits"] == 5
    assert by_name["yn"].verdict == Verdict.INCONCLUSIVE
    assert by_name["lln"].params["n"] == 200
    assert report.verdict == Verdict.FAIL


@pytest.mark.unit
def test_write_raw_csv():
    columns = {"trajectory_id": np.array([0, 1]), "rate": np.array([0.5, 1.25]), "short": np.array([True, False])}
    out = io.StringIO()
    assert write_raw_csv(columns, out) == 2
    assert out.getvalue() == "trajectory_id,rate,short\n0,0.5,1\n1,1.25,0\n"


@pytest.mark.benchmark
@pytest.mark.parametrize("name", ["lln", "clt", "lil", "bb", "ratio", "yn", "pmf", "kernel", "repeat"])
def test_suite_passes_at_full_size(name):
    report = create_suite(name, Settings(threads=4)).run(42)
    assert report.verdict == Verdict.PASS, report.to_json()
