from pathlib import Path

import pytest

from resonance_emission import config
from resonance_emission.errors import ConfigError

BASE = """
potential.kind = harmonic
potential.omega0 = 1.0   # trailing comment
grid.x_min = -12
grid.x_max = 12
grid.n_points = 241
run.theta = 0.0, 0.1
"""


def parse(extra=""):
    entries = config.parse_text(BASE)
    entries.update(config.parse_text(extra))
    return config.from_entries(entries)


def test_parse_and_defaults():
    cfg = parse()
    assert cfg.potential.kind == "harmonic"
    assert cfg.thetas == (0.0, 0.1)
    assert cfg.theta == 0.0
    assert cfg.initial_state == 3
    assert cfg.units.c_light == pytest.approx(137.035999)
    assert cfg.cutoff_sq is None
    assert cfg.formats == ("json", "csv")
    assert cfg.timing is False


def test_echo_is_plain_data():
    import json
    echo = parse("emission.cutoff_sq = 1e5\n").echo()
    assert json.loads(json.dumps(echo)) == echo


@pytest.mark.parametrize("extra,match", [
    ("bogus.key = 1\n", "unknown keys"),
    ("grid.n_points = 10\n", "points"),
    ("run.initial_state = -1\n", "initial_state"),
    ("emission.cutoff_sq = 0\n", "cutoff_sq"),
    ("units.c_light = -1\n", "c_light"),
    ("output.formats = xml\n", "formats"),
    ("output.timing = maybe\n", "timing"),
    ("tolerances.tol_bound = -1\n", "tol_bound"),
    ("validation.alt_n_points = 12\n", "alternative grid"),
])
def test_invalid_entries(extra, match):
    with pytest.raises(ConfigError, match=match):
        parse(extra)


def test_duplicate_key():
    with pytest.raises(ConfigError, match="duplicate"):
        config.parse_text("a.b = 1\na.b = 2\n")


def test_line_without_equals():
    with pytest.raises(ConfigError, match="expected"):
        config.parse_text("potential.kind harmonic\n")


def test_missing_potential():
    with pytest.raises(ConfigError, match="missing potential block"):
        config.from_entries(config.parse_text("run.theta = 0.1\n"))


def test_bad_angle_and_domain():
    text = BASE.replace("run.theta = 0.0, 0.1", "run.theta = 0.9")
    with pytest.raises(ConfigError):
        config.from_entries(config.parse_text(text))
    text = BASE.replace("grid.x_min = -12", "grid.x_min = -10")
    with pytest.raises(ConfigError):
        config.from_entries(config.parse_text(text))


def test_output_precedence(tmp_path, monkeypatch):
    p = tmp_path / "run.cfg"
    p.write_text(BASE + "output.directory = from_file\n")
    assert config.load(p).output_dir == "from_file"
    monkeypatch.setenv(config.OUT_ENV, "from_env")
    assert config.load(p).output_dir == "from_env"
    assert config.load(p, out_dir="from_flag").output_dir == "from_flag"


def test_unreadable_file(tmp_path):
    with pytest.raises(ConfigError):
        config.load(tmp_path / "nope.cfg")


@pytest.mark.parametrize("name", ["fig1.cfg", "fig3.cfg", "theta_scan.cfg", "harmonic.cfg"])
def test_shipped_configs_load(name):
    root = Path(__file__).resolve().parents[1]
    cfg = config.load(root / "configs" / name)
    assert cfg.grid.n_points >= 64
