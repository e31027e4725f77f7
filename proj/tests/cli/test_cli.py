"""Exit codes, report shape, determinism and caching of the mtk command."""

import json
import os
import subprocess
import sys
import tempfile

MTK = os.environ.get("MTK_BIN", "mtk")


def run(*args, env=None):
    p = subprocess.run([MTK, *args], capture_output=True, text=True, env=env)
    return p.returncode, p.stdout, p.stderr


def test_identity_kida_exits_zero():
    rc, out, _ = run("kida", "--curve", "11a1", "-p", "3", "-K", "cyclic:7:3", "-L", "cyclic:7:3")
    assert rc == 0
    rep = json.loads(out)
    assert rep["result"]["table"] == []
    assert rep["result"]["verdict"] == "equal"
    assert rep["version"]
    assert rep["config"]["precision"] == 20
    assert rep["config"]["sturm_override"] is None


def test_malformed_field_exits_two():
    rc, out, err = run("kida", "-L", "set:7:1")
    assert rc == 2
    assert json.loads(err)["error"]["kind"] == "NotSubgroup"
    assert json.loads(out)["error"]["kind"] == "NotSubgroup"
    rc, _, _ = run("kida", "-L", "cyclic:8:3")
    assert rc == 2
    rc, _, _ = run("kida", "--bogus")
    assert rc == 2


def test_crippled_precision_exits_three():
    rc, out, _ = run("kida", "--curve", "14a1", "-L", "cyclic:7:3", "-n", "2", "--precision", "2")
    assert rc == 3
    assert json.loads(out)["error"]["kind"] == "PrecisionExhausted"


def test_unequal_verdict_exits_one():
    rc, out, _ = run("kida", "--curve", "14a1", "-L", "cyclic:7:3", "-n", "2")
    assert rc == 1
    assert json.loads(out)["result"]["verdict"] == "unequal"


def test_output_is_deterministic():
    args = ("kida", "--curve", "11a1", "-L", "cyclic:67:3", "-n", "2", "--format", "tsv")
    first = run(*args)
    second = run(*args)
    assert first[0] == 0
    assert first[1] == second[1]


def test_cache_round_trip():
    with tempfile.TemporaryDirectory() as d:
        env = dict(os.environ, MTK_CACHE_DIR=d)
        args = ("invariants", "--curve", "37a1", "-p", "5", "-n", "1-2")
        rc1, out1, _ = run(*args, env=env)
        assert any(f.startswith("symbol_N37_p5") for f in os.listdir(d))
        rc2, out2, _ = run(*args, env=env)
        plain = run(*args)
        assert rc1 == rc2 == plain[0] == 0
        assert out1 == out2 == plain[1]


def test_formats():
    rc, out, _ = run("invariants", "--curve", "11a1", "-n", "1-3", "--format", "tsv")
    assert rc == 0
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    assert lines[0].split("\t") == ["infinite", "lambda", "level_bound", "mu", "n"]
    assert len(lines) == 4
    rc, out, _ = run("space", "--curve", "11a1", "--format", "text")
    assert rc == 0 and "dimension: 3" in out


def test_signed_scan_and_oracle():
    rc, out, _ = run("signed", "--scan", "-p", "3", "-n", "1-3")
    assert rc == 0
    rep = json.loads(out)
    assert rep["result"]["curve"] == "17a1"
    rc, out, _ = run("oracle-check", "--curve", "11a1", "-p", "3", "-n", "2", "-i", "1")
    assert rc == 0
    assert json.loads(out)["result"]["table"][0]["agree"]


if __name__ == "__main__":
    sys.exit(subprocess.call([sys.executable, "-m", "pytest", "-q", __file__]))
