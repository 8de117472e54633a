from __future__ import annotations

import json
import subprocess
import sys

import pytest

from skeinlab.cli import main
from skeinlab.cluster import initial_seed, mutate_path
from skeinlab.surface import SurfaceSpec


def run(*args):
    return main([str(a) for a in args])


def test_explore_counts(tmp_path, capsys):
    out = tmp_path / "g"
    assert run("explore", "--g", 1, "--p", 1, "--depth", 2, "--out", out) == 0
    assert "10 nodes" in capsys.readouterr().out
    data = json.loads(out.with_suffix(".json").read_text())
    assert len(data["nodes"]) == 10 and data["complete"]
    assert out.with_suffix(".dot").read_text().startswith("graph exchange {")
    assert run("explore", "--g", 1, "--p", 1, "--depth", 0) == 0
    assert "1 nodes" in capsys.readouterr().out


def test_explore_errors(capsys):
    assert run("explore", "--g", 1, "--p", 0) == 2
    assert run("explore", "--g", 1, "--p", 1, "--depth", 3, "--budget", 4) == 1
    assert "partial" in capsys.readouterr().out


def test_verify_writes_report(tmp_path):
    out = tmp_path / "r.json"
    assert run("verify", "flip-mutation", "--g", 1, "--p", 2, "--depth", 2, "--out", out) == 0
    rep = json.loads(out.read_text())
    assert rep["suite"] == "flip-mutation" and rep["totals"]["fail"] == 0
    assert rep["config"]["surface"] == {"g": 1, "p": 2}
    # deterministic bytes
    out2 = tmp_path / "r2.json"
    run("verify", "--suite", "flip-mutation", "--g", 1, "--p", 2, "--depth", 2, "--out", out2)
    assert out.read_bytes() == out2.read_bytes()


def test_verify_notched_torus():
    assert run("verify", "notched", "--g", 1, "--p", 1, "--depth", 4) == 0


def test_verify_failure_exit_and_witness(tmp_path):
    out = tmp_path / "pot.json"
    assert run("verify", "potentials", "--g", 0, "--p", 4, "--depth", 3, "--out", out) == 1
    rep = json.loads(out.read_text())
    fails = [r for r in rep["records"] if r["status"] == "fail"]
    assert fails and all(r["witness"] for r in fails)
    assert all("path" in r["witness"]["examples"][0] for r in fails)


def test_verify_config_errors():
    assert run("verify", "nonsense") == 2
    assert run("verify", "laurent", "--g", 0, "--p", 2) == 2


def test_verify_catalogue_flag(tmp_path):
    bad = tmp_path / "cat.json"
    bad.write_text(json.dumps({"version": 1, "entries": [], "cuts": []}))
    assert run("verify", "skein-identities", "--g", 1, "--p", 2, "--depth", 1, "--catalogue", bad) == 0


def test_count(tmp_path, capsys):
    assert run("count") == 0
    assert "fitted exponent" in capsys.readouterr().out
    out = tmp_path / "c.json"
    assert run("count", "--preset", "quotient", "--format", "json", "--out", out) == 0
    assert json.loads(out.read_text())["fitted_exponent"] == 0
    assert run("count", "--ladder", "64") == 2
    assert run("count", "--g", 0, "--p", 4) == 2
    assert run("count", "--g", 0, "--p", 4, "--sphere") == 0


def test_export_round_trip(tmp_path, capsys):
    seed = mutate_path(initial_seed(SurfaceSpec(1, 2)), [0, 2])
    src = tmp_path / "s.json"
    src.write_text(seed.to_json())
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("export", src, "--out", a) == 0
    assert run("export", a, "--out", b) == 0
    assert a.read_bytes() == b.read_bytes()


def test_export_dot_depth_one(tmp_path):
    src = tmp_path / "s.json"
    src.write_text(initial_seed(SurfaceSpec(1, 1)).to_json())
    out = tmp_path / "g.dot"
    assert run("export", src, "--format", "dot", "--out", out) == 0
    lines = out.read_text().splitlines()
    assert sum(1 for l in lines if "[label=" in l and "--" not in l) == 4
    assert sum(1 for l in lines if "--" in l) == 3


def test_export_corrupt(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"eps": [[0, 1],\n')
    assert run("export", bad) == 2
    assert ":2:" in capsys.readouterr().err
    bad.write_text(json.dumps({"eps": [[0]], "vars": ["A1 +* 2"]}))
    assert run("export", bad) == 2
    assert "column" in capsys.readouterr().err
    assert run("export", "/nonexistent/file.json") == 2


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "skeinlab.cli", "explore", "--depth", "1"], capture_output=True, text=True)
    assert r.returncode == 0 and "4 nodes" in r.stdout
