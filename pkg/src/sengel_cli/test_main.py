import json

import pytest

from sengel_cli.main import EXIT_FAIL, EXIT_OK, EXIT_PRECISION, EXIT_USAGE, Command, build_parser, main

SQRT_HALF_40 = "0.7071067811865475244008443621048490392848"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.mark.integration
def test_expand_rational(capsys):
    code, out = run(capsys, "expand", "--input", "2/5")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["digits"] == [2, 5]
    assert data["cum_signs"] == [1, -1]
    assert data["terminated"] is True


@pytest.mark.integration
def test_expand_decimal_certifies(capsys):
    code, out = run(capsys, "expand", "--input", SQRT_HALF_40, "--max-digits", "5")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["digits"][:3] == [2, 2, 6]
    assert data["certified_prefix_len"] == 5


@pytest.mark.integration
def test_expand_short_decimal_exhausts_precision(capsys):
    code, out = run(capsys, "expand", "--input", "0.5")
    assert code == EXIT_PRECISION
    assert json.loads(out)["stop_reason"] == "precision_exhausted"


@pytest.mark.integration
@pytest.mark.parametrize("argv", [
    ["expand", "--input", "3/2"],
    ["expand", "--input", "abc"],
    ["expand", "--input", "1/0"],
    ["reconstruct", "--digits", "2,5", "--signs", "+,x"],
    ["reconstruct", "--digits", "2,5", "--signs", "+,-", "--n", "3"],
    ["interval", "--sequence", "2 +1 3"],
    ["verify", "--suite", "nope", "--seed", "1"],
    ["verify", "--suite", "lln", "--seed", "1", "--phi", "power:1"],
    ["simulate", "--chain", "exact", "--n", "0", "--count", "5", "--seed", "1"],
    [],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE


@pytest.mark.unit
def test_command_from_arguments():
    args = build_parser().parse_args(["verify", "--suite", "bb", "--seed", "3", "--phi", "power:1", "-o", "r.json"])
    command = Command.from_namespace(args)
    assert command.verb == "verify"
    assert command.out == "r.json"
    assert command.options == {"suite": "bb", "seed": 3, "phi": "power:1"}


@pytest.mark.unit
@pytest.mark.parametrize("argv", [
    ["simulate", "--chain", "exact", "--n", "5", "--count", "0", "--seed", "1"],
    ["expand", "--input", "0.1", "--extra-radius-log2", "-1"],
    ["verify", "--suite", "all", "--seed", "1", "--csv", "raw.csv"],
    ["verify", "--suite", "yn", "--seed", "1", "--phi", "power:1"],
])
def test_command_rejects_bad_flags(argv):
    with pytest.raises(ValueError):
        Command.from_namespace(build_parser().parse_args(argv))


@pytest.mark.integration
def test_reconstruct(capsys):
    code, out = run(capsys, "reconstruct", "--digits", "2,5", "--signs", "+,-")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["value"] == "2/5"
    assert data["decimal"] == "0." + "4" + "0" * 29

    code, out = run(capsys, "reconstruct", "--digits", "2,5", "--signs", "+,-", "--n", "1")
    assert json.loads(out)["value"] == "1/2"


@pytest.mark.integration
def test_admissible(capsys):
    code, out = run(capsys, "admissible", "--sequence", "2 +1 4")
    assert code == EXIT_OK
    assert json.loads(out)["valid"] is True

    _, out = run(capsys, "admissible", "--sequence", "2 -1 2")
    assert json.loads(out)["valid"] is False

    _, out = run(capsys, "admissible", "--sequence", "2 +1 3", "--variant", "prime")
    assert json.loads(out)["valid"] is False


@pytest.mark.integration
def test_interval(capsys):
    code, out = run(capsys, "interval", "--sequence", "2")
    data = json.loads(out)
    assert code == EXIT_OK
    assert (data["lower"], data["upper"], data["length"]) == ("1/3", "1", "2/3")
    assert data["symbols"] == "2"


@pytest.mark.integration
def test_simulate_to_files(tmp_path, capsys):
    out = tmp_path / "runs" / "exact.csv"
    meta = tmp_path / "runs" / "exact.json"
    code = main(["simulate", "--chain", "exact", "--n", "60", "--count", "7", "--seed", "3",
                 "--out", str(out), "--metadata", str(meta)])
    assert code == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "trajectory_id,n,state_or_logstate,saturated"
    assert len(lines) == 1 + 60 * 7
    metadata = json.loads(meta.read_text())
    assert metadata["seed"] == 3 and metadata["count"] == 7 and metadata["source"] == "exact"


@pytest.mark.integration
def test_simulate_is_byte_identical(capsys):
    argv = ["simulate", "--chain", "surrogate", "--n", "80", "--count", "12", "--seed", "9"]
    _, first = run(capsys, *argv, "--threads", "1")
    _, second = run(capsys, *argv, "--threads", "4")
    assert first == second


@pytest.mark.integration
def test_verify_inconclusive_exits_one(capsys, tmp_path):
    raw = tmp_path / "raw.csv"
    code, out = run(capsys, "verify", "--suite", "pmf", "--seed", "1", "--count", "500", "--csv", str(raw))
    assert code == EXIT_FAIL
    report = json.loads(out)
    assert report["suite"] == "pmf"
    assert report["verdict"] == "Inconclusive"
    assert raw.read_text().splitlines()[0] == "trajectory_id,d_1"


@pytest.mark.integration
def test_verify_all_with_small_overrides_reports(capsys):
    code, out = run(capsys, "verify", "--suite", "all", "--seed", "1", "--n", "200", "--count", "20")
    report = json.loads(out)
    assert code == EXIT_FAIL
    assert report["metrics"]["yn"] == "Inconclusive"


@pytest.mark.integration
def test_verify_is_byte_identical_across_threads(capsys):
    argv = ["verify", "--suite", "lln", "--seed", "42", "--n", "1000", "--count", "40"]
    code, first = run(capsys, *argv, "--threads", "1")
    _, second = run(capsys, *argv, "--threads", "4")
    assert code == EXIT_OK
    assert first == second


@pytest.mark.benchmark
def test_verify_pmf_passes(capsys):
    code, out = run(capsys, "verify", "--suite", "pmf", "--seed", "42")
    assert code == EXIT_OK, out


@pytest.mark.benchmark
def test_verify_all_is_byte_identical(capsys):
    _, first = run(capsys, "verify", "--suite", "all", "--seed", "42", "--threads", "1")
    _, second = run(capsys, "verify", "--suite", "all", "--seed", "42", "--threads", "8")
    assert first == second
    assert json.loads(first)["verdict"] == "Pass"
