import json
import subprocess
import sys

import pytest

from resonance_emission import cli
from resonance_emission.results import RunResult

HO = """
potential.kind = harmonic
potential.omega0 = 1.0
grid.x_min = -12
grid.x_max = 12
grid.n_points = 241
run.theta = {theta}
run.initial_state = {n}
validation.theta_list = 0.0, 0.1, 0.2
validation.alt_x_min = -14
validation.alt_x_max = 14
validation.alt_n_points = 281
"""


def write_cfg(tmp_path, theta="0.1", n=1, extra=""):
    p = tmp_path / "ho.cfg"
    p.write_text(HO.format(theta=theta, n=n) + extra)
    return p


def run(tmp_path, command, cfg, *more):
    out = tmp_path / "out"
    code = cli.main([command, "--config", str(cfg), "--out", str(out), *more])
    return code, out


def test_spectrum_outputs(tmp_path):
    code, out = run(tmp_path, "spectrum", write_cfg(tmp_path))
    assert code == 0
    assert {p.name for p in out.iterdir()} == {"spectrum.json", "spectrum.csv", "rays.csv"}
    data = json.loads((out / "spectrum.json").read_text())
    assert data["schema_version"] == "1"
    assert data["command"] == "spectrum"


def test_rates_outputs_and_value(tmp_path):
    code, out = run(tmp_path, "rates", write_cfg(tmp_path))
    assert code == 0
    names = {p.name for p in out.iterdir()}
    assert {"rates.json", "convergence.csv"} <= names
    res = RunResult.from_json((out / "rates.json").read_text())
    [rec] = res.rates
    assert rec["decay"]["total"] == pytest.approx(1 / (4 * 137.035999), rel=1e-6)


def test_multi_theta_suffix(tmp_path):
    code, out = run(tmp_path, "spectrum", write_cfg(tmp_path, theta="0.1, 0.2"))
    assert code == 0
    names = {p.name for p in out.iterdir()}
    assert "spectrum_theta_0.1.csv" in names and "spectrum_theta_0.2.csv" in names


def test_format_flag(tmp_path):
    code, out = run(tmp_path, "spectrum", write_cfg(tmp_path), "--format", "json")
    assert code == 0
    assert {p.name for p in out.iterdir()} == {"spectrum.json"}


def test_scan_theta(tmp_path):
    code, out = run(tmp_path, "scan-theta", write_cfg(tmp_path, theta="0.05, 0.1, 0.15"))
    assert code == 0
    assert (out / "trajectory.json").exists()


def test_validate_passes(tmp_path):
    code, out = run(tmp_path, "validate", write_cfg(tmp_path, theta="0.0"))
    assert code == 0
    report = json.loads((out / "validate.json").read_text())["validation"]
    assert report["passed"] and report["checks"]


def test_validate_failure_exit(tmp_path):
    cfg = write_cfg(tmp_path, theta="0.0", extra="validation.sum_rule_tol = 1e-30\n")
    code, out = run(tmp_path, "validate", cfg)
    assert code == 1
    report = json.loads((out / "validate.json").read_text())["validation"]
    assert not report["passed"]


def test_config_error_exit(tmp_path):
    p = tmp_path / "bad.cfg"
    p.write_text("run.theta = 0.1\n")
    code, _ = run(tmp_path, "spectrum", p)
    assert code == 2


def test_numerical_error_exit(tmp_path):
    code, _ = run(tmp_path, "rates", write_cfg(tmp_path, n=500))
    assert code == 3


def test_json_round_trip(tmp_path):
    code, out = run(tmp_path, "rates", write_cfg(tmp_path))
    text = (out / "rates.json").read_text()
    assert RunResult.from_json(text).to_json() == text


def test_deterministic_bytes(tmp_path):
    cfg = write_cfg(tmp_path)
    a = cli.main(["rates", "--config", str(cfg), "--out", str(tmp_path / "a")])
    b = cli.main(["rates", "--config", str(cfg), "--out", str(tmp_path / "b")])
    assert a == b == 0
    for p in (tmp_path / "a").iterdir():
        assert p.read_bytes() == (tmp_path / "b" / p.name).read_bytes()


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "resonance_emission.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "scan-theta" in proc.stdout
