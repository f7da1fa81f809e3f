"""Command line contract: exit codes, JSON shapes, determinism."""

import json
import subprocess
import sys

import pytest

from repcurve.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_vd_shape(capsys, tmp_path):
    out = tmp_path / "m.json"
    code, _, _ = run(capsys, "build", "vd", "--p", "3", "--d", "5",
                     "--beta", "0,1", "--out", str(out))
    assert code == 0
    obj = json.loads(out.read_text())
    assert obj["dim"] == 5
    assert obj["labels"] == ["w0", "w1", "w2", "w3", "w4"]
    assert obj["p"] == 3 and obj["n"] == 2


def test_build_rejects_prime_field_beta(capsys):
    code, out, err = run(capsys, "build", "vd", "--p", "3", "--d", "5",
                         "--beta", "1,0")
    assert code == 2 and out == ""
    rec = json.loads(err)
    assert rec["error"] == "PrimeFieldElement"


def test_build_rejects_malformed_element_text(capsys):
    code, out, err = run(capsys, "build", "vd", "--p", "3", "--d", "5",
                         "--beta", "t")
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "BadParams"


def test_build_missing_flags(capsys):
    code, _, err = run(capsys, "build", "vd", "--p", "3")
    assert code == 2
    assert "RepcurveError" in json.loads(err)["error"]


def test_build_graded(capsys):
    code, out, _ = run(capsys, "build", "dr", "--p", "3", "--m", "4",
                       "--alpha", "0,1")
    assert code == 0
    obj = json.loads(out)
    assert obj["kind"] == "dr" and len(obj["pieces"]) == 3


def test_query_iso_yes_with_witness(capsys, tmp_path):
    a = tmp_path / "a.json"
    run(capsys, "build", "vd", "--p", "3", "--d", "4", "--beta", "0,1",
        "--out", str(a))
    code, out, _ = run(capsys, "query", "iso", str(a), str(a))
    assert code == 0
    obj = json.loads(out)
    assert obj["verdict"] == "YES"
    assert obj["witness"]["rows"] == obj["witness"]["cols"] == 4


def test_query_iso_no(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "build", "vd", "--p", "3", "--d", "5", "--beta", "0,1",
        "--out", str(a))
    run(capsys, "build", "vd", "--p", "3", "--d", "5", "--beta", "1,1",
        "--out", str(b))
    code, out, _ = run(capsys, "query", "iso", str(a), str(b))
    assert code == 0  # a NO verdict is a successful query
    assert json.loads(out)["verdict"] == "NO"


def test_query_indec_forced_tier(capsys, tmp_path):
    v = tmp_path / "v.json"
    run(capsys, "build", "vdr", "--p", "3", "--d", "3", "--beta", "0,1",
        "--out", str(v))
    code, out, _ = run(capsys, "query", "indec", str(v), "--tiers", "T3")
    assert code == 0
    obj = json.loads(out)
    assert obj["verdict"] == "INDECOMPOSABLE" and obj["certificate"] == "T3"


def test_query_jordan_table(capsys, tmp_path):
    a = tmp_path / "a.json"
    run(capsys, "build", "vd", "--p", "3", "--d", "5", "--beta", "0,1",
        "--out", str(a))
    code, out, _ = run(capsys, "query", "jordan", str(a))
    assert code == 0
    obj = json.loads(out)
    assert obj["generic"] == [3, 2]
    assert len(obj["scan"]) == 10
    assert obj["constant"] is True


def test_query_ddeg_label_and_vector(capsys, tmp_path):
    a = tmp_path / "a.json"
    run(capsys, "build", "vd", "--p", "3", "--d", "9", "--beta", "0,1",
        "--out", str(a))
    code, out, _ = run(capsys, "query", "ddeg", str(a), "--label", "w8")
    assert code == 0 and json.loads(out)["ddeg"] == 4
    code, out, _ = run(capsys, "query", "ddeg", str(a), "--vector",
                       "1,0;0,0;0,0;0,0;0,0;0,0;0,0;0,0;0,0")
    assert code == 0 and json.loads(out)["ddeg"] == 0
    code, _, err = run(capsys, "query", "ddeg", str(a))
    assert code == 2


def test_query_bad_file(capsys, tmp_path):
    missing = tmp_path / "nope.json"
    code, _, err = run(capsys, "query", "profile", str(missing))
    assert code == 2
    assert "cannot read" in json.loads(err)["message"]


def test_verify_pass_and_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "identities", "--p", "3")
    assert code == 0
    rep = json.loads(out)
    assert rep["counts"]["fail"] == 0
    assert len(rep["cases"]) == 7  # one polynomial case plus one per beta
    assert rep["artifact_version"]


def test_verify_determinism(capsys):
    args = ("verify", "combinatorics", "--p", "3", "--seed", "7")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_verify_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("REPCURVE_SEED", "7")
    _, out_env, _ = run(capsys, "verify", "combinatorics", "--p", "3")
    monkeypatch.delenv("REPCURVE_SEED")
    _, out_flag, _ = run(capsys, "verify", "combinatorics", "--p", "3",
                         "--seed", "7")
    assert out_env == out_flag


def test_verify_md_rows_match_json(capsys):
    _, out_json, _ = run(capsys, "verify", "hodge", "--p", "3")
    _, out_md, _ = run(capsys, "verify", "hodge", "--p", "3", "--format", "md")
    rep = json.loads(out_json)
    rows = [l for l in out_md.splitlines() if l.startswith("| hodge")]
    assert len(rows) == len(rep["cases"])
    for row, case in zip(rows, rep["cases"]):
        cells = [c.strip() for c in row.strip("|").split("|")]
        assert cells[0] == case["case"] and cells[1] == case["verdict"]


def test_verify_failure_exits_one(monkeypatch, capsys):
    import repcurve.cli as cli

    def fake_run_suite(*a, **k):
        return {"suite": "x", "p_values": [3], "grid": [], "seed": 0,
                "trials": 0, "artifact_version": "0",
                "cases": [{"case": "x/1", "verdict": "fail",
                           "certificate": "boom", "ms": None}],
                "counts": {"pass": 0, "fail": 1, "report-only": 0},
                "exit": 1}

    monkeypatch.setattr(cli, "run_suite", fake_run_suite)
    code, _, _ = run(capsys, "verify", "identities")
    assert code == 1


def test_verify_usage_error(capsys):
    code = main(["verify", "nosuch"])
    assert code == 2


def test_timings_opt_in(capsys):
    _, out, _ = run(capsys, "verify", "identities", "--p", "3", "--timings")
    rep = json.loads(out)
    assert all(isinstance(c["ms"], float) for c in rep["cases"])
    _, out, _ = run(capsys, "verify", "identities", "--p", "3")
    assert all(c["ms"] is None for c in json.loads(out)["cases"])


def test_claims_formats(capsys):
    code, out, _ = run(capsys, "claims")
    assert code == 0 and out.startswith("| suite |")
    code, out, _ = run(capsys, "claims", "--format", "json")
    rows = json.loads(out)
    assert {r["suite"] for r in rows} >= {"identities", "cores", "hodge"}


def test_console_script_entrypoint():
    proc = subprocess.run([sys.executable, "-m", "repcurve.cli", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "0.1.0"
