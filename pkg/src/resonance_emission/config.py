"""Flat ``section.key = value`` run configuration."""
from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

from .discretization import Grid, build_grid
from .errors import ConfigError, ResonanceError
from .model import C_LIGHT_AU, PotentialSpec, UnitSystem, check_theta
from .spectral import Tolerances

OUT_ENV = "RESONANCE_EMISSION_OUT"
FORMATS = ("json", "csv")

_POTENTIAL_PARAMS = {"gaussian-well": ("a", "b", "w"), "harmonic": ("omega0",)}


@dataclass(frozen=True)
class ValidationSettings:
    theta_list: tuple = (0.12, 0.15, 0.18)
    alt_x_min: float = -200.0
    alt_x_max: float = 200.0
    alt_n_points: int = 1001
    sum_rule_tol: float = 1e-5
    theta_tol: float = 1e-3
    oracle_tol: float = 1e-6
    pole_tol: float = 1e-6
    coupling_ratio: float = 0.1


@dataclass(frozen=True)
class RunConfig:
    potential: PotentialSpec
    grid: Grid
    thetas: tuple
    initial_state: int = 3
    units: UnitSystem = UnitSystem()
    cutoff_sq: Optional[float] = None
    tolerances: Tolerances = Tolerances()
    output_dir: str = "out"
    formats: tuple = FORMATS
    timing: bool = False
    validation: ValidationSettings = ValidationSettings()

    @property
    def theta(self) -> float:
        return self.thetas[0]

    def echo(self) -> dict:
        """Resolved configuration as plain JSON-ready data."""
        return {
            "potential": self.potential.describe(),
            "grid": self.grid.describe(),
            "theta": list(self.thetas),
            "initial_state": self.initial_state,
            "c_light": self.units.c_light,
            "cutoff_sq": self.cutoff_sq,
            "tolerances": {f.name: getattr(self.tolerances, f.name) for f in fields(Tolerances)},
            "validation": {
                f.name: (list(v) if isinstance(v := getattr(self.validation, f.name), tuple) else v)
                for f in fields(ValidationSettings)
            },
        }


def parse_text(text: str) -> dict:
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'section.key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = value
    return entries


def _float(entries, key, default=None):
    if key not in entries:
        if default is None:
            raise ConfigError(f"missing required key {key!r}")
        return default
    try:
        return float(entries.pop(key))
    except ValueError:
        raise ConfigError(f"{key} must be a number") from None


def _int(entries, key, default):
    if key not in entries:
        return default
    try:
        return int(entries.pop(key))
    except ValueError:
        raise ConfigError(f"{key} must be an integer") from None


def _floats(entries, key, default=None):
    if key not in entries:
        if default is None:
            raise ConfigError(f"missing required key {key!r}")
        return tuple(default)
    try:
        return tuple(float(v) for v in entries.pop(key).split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"{key} must be a comma-separated list of numbers") from None


def _bool(entries, key, default):
    if key not in entries:
        return default
    v = entries.pop(key).lower()
    if v in ("true", "yes", "1", "on"):
        return True
    if v in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{key} must be true or false")


def from_entries(entries: dict) -> RunConfig:
    """Build and validate a RunConfig; every precondition is checked here."""
    entries = dict(entries)
    kind = entries.pop("potential.kind", None)
    if kind is None:
        raise ConfigError("missing potential block (potential.kind)")
    if kind not in _POTENTIAL_PARAMS:
        raise ConfigError(f"unknown potential.kind {kind!r}")
    params = {p: _float(entries, f"potential.{p}") for p in _POTENTIAL_PARAMS[kind]}

    try:
        potential = PotentialSpec(kind, params)
        grid = build_grid(_float(entries, "grid.x_min", -160.0), _float(entries, "grid.x_max", 160.0),
                          _int(entries, "grid.n_points", 801))
        thetas = _floats(entries, "run.theta")
        if not thetas:
            raise ConfigError("run.theta is empty")
        thetas = tuple(check_theta(t) for t in thetas)
        c_light = _float(entries, "units.c_light", C_LIGHT_AU)
        units = UnitSystem(c_light=c_light)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    except ResonanceError as exc:
        raise ConfigError(str(exc)) from None

    initial = _int(entries, "run.initial_state", 3)
    if initial < 0:
        raise ConfigError("run.initial_state must be >= 0")
    cutoff = entries.pop("emission.cutoff_sq", None)
    if cutoff is not None:
        try:
            cutoff = float(cutoff)
        except ValueError:
            raise ConfigError("emission.cutoff_sq must be a number") from None
        if not cutoff > 0:
            raise ConfigError("emission.cutoff_sq must be positive")

    tol_kwargs = {}
    for f in fields(Tolerances):
        key = f"tolerances.{f.name}"
        if key in entries:
            tol_kwargs[f.name] = _float(entries, key)
            if not tol_kwargs[f.name] > 0:
                raise ConfigError(f"{key} must be positive")
    tolerances = Tolerances(**tol_kwargs)

    val_default = ValidationSettings()
    val_kwargs = {}
    for f in fields(ValidationSettings):
        key = f"validation.{f.name}"
        if key not in entries:
            continue
        if f.name == "theta_list":
            val_kwargs[f.name] = tuple(check_theta(t) for t in _floats(entries, key))
        elif f.name == "alt_n_points":
            val_kwargs[f.name] = _int(entries, key, val_default.alt_n_points)
        else:
            val_kwargs[f.name] = _float(entries, key)
    validation = ValidationSettings(**val_kwargs)
    try:
        build_grid(validation.alt_x_min, validation.alt_x_max, validation.alt_n_points)
    except ResonanceError as exc:
        raise ConfigError(f"validation alternative grid: {exc}") from None

    output_dir = entries.pop("output.directory", "out")
    formats = tuple(s.strip() for s in entries.pop("output.formats", "json, csv").split(",") if s.strip())
    if not formats or any(f not in FORMATS for f in formats):
        raise ConfigError(f"output.formats must be drawn from {FORMATS}")
    timing = _bool(entries, "output.timing", False)

    if entries:
        raise ConfigError(f"unknown keys: {', '.join(sorted(entries))}")
    return RunConfig(potential, grid, thetas, initial, units, cutoff, tolerances,
                     output_dir, formats, timing, validation)


def load(path, out_dir: Optional[str] = None, formats: Optional[str] = None) -> RunConfig:
    """Read a config file, then apply the environment and command-line overrides."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    entries = parse_text(text)
    if os.environ.get(OUT_ENV):
        entries["output.directory"] = os.environ[OUT_ENV]
    if out_dir is not None:
        entries["output.directory"] = out_dir
    if formats is not None:
        entries["output.formats"] = formats
    return from_entries(entries)
