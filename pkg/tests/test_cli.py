import json
import subprocess
import sys

import pytest

from sixq.cli import RunConfig, run


def report_of(capsys, argv):
    code = run(argv)
    return code, capsys.readouterr().out


def test_verify_channel_passes(capsys):
    code, out = report_of(capsys, ["verify-channel", "--no-timestamp"])
    assert code == 0
    d = json.loads(out)
    assert d["passed"] is True
    assert "timestamp" not in d or d["timestamp"] is None
    assert len(d["data"]["monogamy"]) == 6


def test_bases_check_and_dump(tmp_path, capsys):
    code, _ = report_of(capsys, ["bases-check", "--dump-dir", str(tmp_path), "--quiet"])
    assert code == 0
    assert (tmp_path / "table4.basis").read_text().count("\n") == 32
    assert len(list(tmp_path.glob("*.basis"))) == 10


def test_teleport_sample(capsys):
    code, out = report_of(capsys, ["teleport", "--mode", "sample", "--trials", "20", "--seed", "3", "--no-timestamp"])
    assert code == 0
    d = json.loads(out)
    assert d["data"]["teleport3"]["branches"] == 20
    assert d["config"]["seed"] == 3


def test_qsts1_reports_failed_no_signaling(capsys):
    code, out = report_of(capsys, ["qsts1", "--bob-basis", "bell", "--trials", "3", "--no-timestamp"])
    assert code == 1
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert checks["qsts1-bell: min fidelity >= 1 - tol"]["passed"]
    assert not checks["qsts1-bell: receiver marginal independent of input"]["passed"]


def test_emit_tables(capsys):
    code, out = report_of(capsys, ["emit-tables", "--table", "IV", "--no-timestamp"])
    assert code == 0
    d = json.loads(out)
    assert d["data"]["legend"]["mu"] == "c10"
    assert [x["row"] for x in d["discrepancies"]] == [7, 7]


def test_usage_errors(capsys):
    assert run(["frobnicate"]) == 2
    assert run(["teleport", "--trials", "0"]) == 2
    assert run(["teleport", "--tolerance", "-1"]) == 2
    capsys.readouterr()


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("teleport", trials=0)


@pytest.mark.parametrize("argv", [
    ["verify-channel"],
    ["teleport", "--mode", "sample", "--trials", "5", "--seed", "11"],
    ["qsts2", "--alice-family", "VI", "--trials", "2", "--seed", "11"],
])
def test_identical_seed_identical_report(argv, capsys):
    _, a = report_of(capsys, argv + ["--no-timestamp"])
    _, b = report_of(capsys, argv + ["--no-timestamp"])
    assert a == b


def test_timestamp_present_by_default(capsys):
    _, out = report_of(capsys, ["verify-channel"])
    assert json.loads(out)["timestamp"]


def test_quiet_and_output(tmp_path, capsys):
    target = tmp_path / "r.txt"
    code = run(["verify-channel", "--quiet", "--output", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    lines = target.read_text().splitlines()
    assert lines and all(line.startswith(("PASS", "FAIL")) for line in lines)


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("SIXQ_SEED", "5")
    _, out = report_of(capsys, ["teleport", "--mode", "sample", "--trials", "1", "--no-timestamp"])
    assert json.loads(out)["config"]["seed"] == 5


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sixq", "verify-channel", "--quiet"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
