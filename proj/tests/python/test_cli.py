import json
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("TASKSTOP_CLI")
CONFIGS = Path(os.environ.get("TASKSTOP_CONFIGS", "configs"))

pytestmark = pytest.mark.skipif(CLI is None, reason="TASKSTOP_CLI not set")


def run_cli(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_solve_is_deterministic(tmp_path):
    outs = []
    for sub in ("a", "b"):
        out = tmp_path / sub
        res = run_cli("--config", str(CONFIGS / "solve_deadline.json"), "--out", str(out),
                      "--seed", "7", "--quiet")
        assert res.returncode == 0, res.stderr
        outs.append({f.name: f.read_bytes() for f in sorted(out.iterdir())})
    assert outs[0].keys() == {"solve.csv", "bars.csv", "solve.json"}
    assert outs[0] == outs[1]  # byte-identical rerun

    body = json.loads(outs[0]["solve.json"])
    assert abs(body["profile"]["p"][3] - 0.5) <= 1e-12
    assert body["profile"]["v"][4] == "-inf"
    assert body["meta"]["seed"] == 7
    # simulation within a few standard errors of the analytic profile
    sim = body["simulation"]
    for p_hat, se, p in zip(sim["p_hat"], sim["p_se"], body["profile"]["p"][:4]):
        assert abs(p_hat - p) <= 4 * se + 1e-9


def test_csv_header_block(tmp_path):
    res = run_cli("--config", str(CONFIGS / "aggregate_two_types.json"), "--out", str(tmp_path),
                  "--quiet")
    assert res.returncode == 0, res.stderr
    lines = (tmp_path / "aggregate.csv").read_text().splitlines()
    assert lines[0].startswith("# tool: taskstop")
    assert lines[1].startswith("# config_hash: ")
    assert lines[2].startswith("# tol: ")
    assert lines[3] == "t,p,q"
    first = lines[4].split(",")
    assert float(first[1]) == 0.3


def test_rationalize_roundtrip_schema(tmp_path):
    res = run_cli("--config", str(CONFIGS / "rationalize_sophisticated.json"), "--out",
                  str(tmp_path), "--quiet")
    assert res.returncode == 0, res.stderr
    body = json.loads((tmp_path / "rationalize.json").read_text())
    assert body["distribution"]["variant"] == "discrete"
    target = [0.25827, 0.304687, 0.375, 0.5]
    assert max(abs(a - b) for a, b in zip(body["profile"]["p"], target)) <= 1e-9


def test_exit_codes(tmp_path):
    missing = run_cli("--config", str(tmp_path / "nope.json"), "--out", str(tmp_path))
    assert missing.returncode == 4

    bad = tmp_path / "bad.json"
    bad.write_text('{"command": "rationalize", "mode": "sophisticated", '
                   '"p": [0.9, 0.1], "beta": 0.5, "delta": 0.9, "terminal_value": -1}')
    res = run_cli("--config", str(bad), "--out", str(tmp_path))
    assert res.returncode == 2
    err = json.loads(res.stderr)
    assert err["error"]["code"] == 2
