import json
import os
import subprocess

import pytest

CLI = os.environ["DSEA_CLI"]
CONFIGS = os.environ["DSEA_CONFIGS"]


def run(*args, **kwargs):
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kwargs)


def test_check_passes():
    r = run("check")
    assert r.returncode == 0
    assert "all checks passed" in r.stdout


def test_fluct_graphite(tmp_path):
    r = run("fluct", "--config", os.path.join(CONFIGS, "graphite.json"),
            "--out", str(tmp_path))
    assert r.returncode == 0
    out = json.loads((tmp_path / "fluct.json").read_text())
    assert 2.3e-6 < out["distinguishability_radius_graphite"] < 2.9e-6
    assert out["asymptotic_stddev"] > 0.0
    assert out["provenance"]["version"] == "1.0.0"


def test_fluct_sweep(tmp_path):
    r = run("fluct-sweep", "--config", os.path.join(CONFIGS, "fluct_sweep.json"),
            "--out", str(tmp_path))
    assert r.returncode == 0
    lines = (tmp_path / "fluct_sweep.csv").read_text().splitlines()
    assert lines[0].startswith("# config_hash=")
    assert lines[1] == "b,cutoff,n0,variance_total,stddev,asymptotic_stddev"
    assert len(lines) == 5


def test_evolve_writes_fields(tmp_path):
    r = run("evolve", "--config", os.path.join(CONFIGS, "evolve.json"),
            "--out", str(tmp_path))
    assert r.returncode == 0
    state = json.loads((tmp_path / "state.json").read_text())
    assert state["time"] == pytest.approx(0.5)
    fields = (tmp_path / "fields.csv").read_text().splitlines()
    assert fields[1] == "x,rho,v,g"


def test_ensemble_deterministic(tmp_path):
    out1, out2, out3 = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    cfg = os.path.join(CONFIGS, "ensemble.json")
    r1 = run("ensemble", "--config", cfg, "--seed", "11", "--out", str(out1))
    r2 = run("ensemble", "--config", cfg, "--seed", "11", "--out", str(out2))
    r3 = run("ensemble", "--config", cfg, "--seed", "12", "--out", str(out3))
    assert r1.returncode == r2.returncode == r3.returncode == 0
    first = (out1 / "trajectories.csv").read_bytes()
    assert first == (out2 / "trajectories.csv").read_bytes()
    assert first != (out3 / "trajectories.csv").read_bytes()
    rep = json.loads((out1 / "equilibrium.json").read_text())
    assert rep["aborted"] == 0
    assert len(rep["tv"]) == 3
    assert max(rep["tv"]) < 0.25


def test_measure_reports_weights(tmp_path):
    r = run("measure", "--config", os.path.join(CONFIGS, "measure.json"),
            "--seed", "3", "--out", str(tmp_path))
    assert r.returncode == 0
    rep = json.loads((tmp_path / "measure.json").read_text())
    occ = rep["occupancy"]
    assert occ[0] + occ[1] == pytest.approx(1.0)
    assert occ[0] == pytest.approx(0.5, abs=0.05)


def test_unknown_config_key_is_a_usage_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"cutoff": 1.0, "radius": 1.0, "bogus": 1}')
    r = run("fluct", "--config", str(bad), "--out", str(tmp_path))
    assert r.returncode == 2
    assert "unknown key" in r.stderr


def test_missing_config_is_a_usage_error(tmp_path):
    r = run("ensemble", "--out", str(tmp_path))
    assert r.returncode == 2
