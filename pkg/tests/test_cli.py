"""Command line interface: subcommands, formats, exit codes."""

import json

import pytest

from ultranorm import cli
from ultranorm.report import CheckRecord, VerificationReport, write_report


def fabricate(tmp_path, statuses):
    checks = [CheckRecord(name=f"check_{k}", statement="s", status=s)
              for k, s in enumerate(statuses)]
    rep = VerificationReport(config={"dimension": 1}, checks=checks, seed=1)
    write_report(rep, str(tmp_path), fmt="json")
    return str(tmp_path / "report.json")


def test_assoc_json_stdout(capsys):
    code = cli.main(["assoc", "--config", "configs/gevrey1.json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == "ultranorm/1"
    assert [c["name"] for c in payload["checks"]] == ["seq_associated"]
    assert payload["summary"]["overall"] == "pass"
    assert payload["seed"] == 7


def test_assoc_csv_table_stdout(capsys):
    code = cli.main(["assoc", "--format", "csv"])
    assert code == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "t,assoc"
    assert len(lines) == 201


def test_check_seq_with_out_dir(tmp_path, capsys):
    out = tmp_path / "run"
    code = cli.main(["check-seq", "--config", "configs/gevrey1.json",
                     "--out", str(out)])
    assert code == 0
    text = capsys.readouterr().out
    assert "PASS" in text and "overall: pass" in text
    assert (out / "report.json").exists()


def test_csv_out_with_plots(tmp_path):
    out = tmp_path / "run"
    code = cli.main(["assoc", "--out", str(out), "--format", "csv",
                     "--plot"])
    assert code == 0
    assert (out / "report.csv").exists()
    assert (out / "seq_associated.csv").exists()
    assert (out / "seq_associated.svg").exists()


def test_seed_and_tol_overrides(capsys):
    code = cli.main(["assoc", "--seed", "99", "--tol", "isometry=1e-3"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["seed"] == 99
    assert payload["config"]["tolerances"]["isometry"] == 1e-3


def test_usage_errors_exit_two(capsys):
    assert cli.main(["assoc", "--config", "configs/missing.json"]) == 2
    assert "error:" in capsys.readouterr().err
    assert cli.main(["assoc", "--tol", "bogus=1"]) == 2
    assert cli.main(["assoc", "--threads", "0"]) == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command"])
    assert exc.value.code == 2


def test_report_rerender_and_exit_codes(tmp_path, capsys):
    path = fabricate(tmp_path, ["pass", "pass"])
    assert cli.main(["report", path]) == 0
    json.loads(capsys.readouterr().out)

    path = fabricate(tmp_path, ["pass", "fail"])
    assert cli.main(["report", path]) == 1

    path = fabricate(tmp_path, ["pass", "inconclusive"])
    assert cli.main(["report", path]) == 3
    capsys.readouterr()

    # re-render into a fresh directory as csv
    out = tmp_path / "again"
    assert cli.main(["report", path, "--out", str(out),
                     "--format", "csv"]) == 3
    text = capsys.readouterr().out
    assert "INCONCLUSIVE" in text
    assert (out / "report.csv").exists()


def test_report_rejects_garbage(tmp_path, capsys):
    bad = tmp_path / "nope.json"
    bad.write_text("{\"schema\": \"other/1\"}")
    assert cli.main(["report", str(bad)]) == 2
    assert cli.main(["report", str(tmp_path / "absent.json")]) == 2
    capsys.readouterr()


def test_seminorm_survey(capsys):
    code = cli.main(["seminorm", "--config", "configs/gevrey1.json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    names = [c["name"] for c in payload["checks"]]
    assert names == ["seminorm_table"]
    table = payload["checks"][0]["table"]
    assert "inductive" in table
    assert any(k.startswith("projective_") for k in table)


def test_verify_threads_consistency(tmp_path):
    out1 = tmp_path / "a"
    out4 = tmp_path / "b"
    argv = ["verify", "--config", "configs/gevrey1.json", "--format", "json"]
    assert cli.main(argv + ["--out", str(out1), "--threads", "1"]) == 0
    assert cli.main(argv + ["--out", str(out4), "--threads", "4"]) == 0
    a = json.loads((out1 / "report.json").read_text())
    b = json.loads((out4 / "report.json").read_text())
    a.pop("generated_at"), b.pop("generated_at")
    assert a == b