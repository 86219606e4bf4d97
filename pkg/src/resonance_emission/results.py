"""RunResult record and deterministic JSON/CSV writers."""
from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from .emission import DecayBreakdown, ShiftBreakdown
from .spectral import Spectrum

SCHEMA_VERSION = "1"


def cplx(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


@dataclass
class RunResult:
    command: str
    config: dict
    schema_version: str = SCHEMA_VERSION
    spectra: list = field(default_factory=list)
    rates: list = field(default_factory=list)
    theta_scan: Optional[dict] = None
    trajectories: Optional[list] = None
    validation: Optional[dict] = None
    timing: Optional[dict] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=1, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunResult":
        return cls(**json.loads(text))


def spectrum_record(spectrum: Spectrum) -> dict:
    theta = spectrum.theta
    photonic = [
        {"state_index": s.index, "origin_re": s.energy.re, "origin_im": s.energy.im, "angle": -2.0 * theta}
        for s in spectrum.states if s.is_discrete
    ]
    return {
        "theta": theta,
        "n_bound": spectrum.n_bound,
        "n_resonance": spectrum.n_resonance,
        "n_discrete": spectrum.n_discrete,
        "states": [
            {"index": s.index, "re_E": s.energy.re, "im_E": s.energy.im, "kind": s.kind, "parity": s.parity}
            for s in spectrum.states
        ],
        "rays": {
            "electronic_continuum": {"origin_re": 0.0, "origin_im": 0.0, "angle": -2.0 * theta},
            "photonic": photonic,
        },
    }


def decay_record(decay: DecayBreakdown, shift: ShiftBreakdown, theta: float, energy) -> dict:
    return {
        "theta": theta,
        "initial_index": decay.initial_index,
        "initial_state": decay.initial_ordinal,
        "initial_energy": cplx(energy),
        "cutoff_sq": decay.cutoff_sq,
        "decay": {
            "total": decay.total,
            "discrete_sum": decay.discrete_sum,
            "continuum_sum": decay.continuum_sum,
            "partials": [{"final_index": j, "kind": k, "rate": r} for j, k, r in decay.partials],
            "cumulative": decay.cumulative,
        },
        "shift": {
            "total": shift.total,
            "partials": [{"final_index": j, "shift": v} for j, v in shift.partials],
        },
    }


def _fmt(v) -> str:
    return repr(float(v)) if isinstance(v, float) else str(v)


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def write_json(path: Path, result: RunResult) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(result.to_json())


def spectrum_rows(record: dict):
    return [(s["index"], s["re_E"], s["im_E"], s["kind"], s["parity"]) for s in record["states"]]


def ray_rows(record: dict):
    rays = record["rays"]
    ec = rays["electronic_continuum"]
    rows = [("electronic", "", ec["origin_re"], ec["origin_im"], ec["angle"])]
    rows += [("photonic", r["state_index"], r["origin_re"], r["origin_im"], r["angle"]) for r in rays["photonic"]]
    return rows


def convergence_rows(record: dict):
    total = record["decay"]["total"]
    return [(k + 1, s, s / total if total else float("nan"))
            for k, s in enumerate(record["decay"]["cumulative"])]
