"""Orchestration of the spectrum / rates / validate / scan-theta runs."""
from __future__ import annotations

import logging
import math
import time
from contextlib import contextmanager
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import validation as val
from .config import RunConfig
from .discretization import build_grid
from .emission import total_rate, total_shift
from .errors import ResonanceError
from .results import RunResult, decay_record, spectrum_record
from .spectral import BOUND, solve, theta_trajectory
from .transition import build_table

log = logging.getLogger(__name__)


class _Clock:
    def __init__(self):
        self.marks = {}

    @contextmanager
    def __call__(self, name):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.marks[name] = self.marks.get(name, 0.0) + time.perf_counter() - t0


def _spectra(cfg: RunConfig, thetas):
    # numpy/LAPACK release the GIL, so threads overlap the eigensolves
    with ThreadPoolExecutor(max_workers=min(len(thetas), 4)) as pool:
        futures = [pool.submit(solve, cfg.grid, cfg.potential, t, cfg.tolerances) for t in thetas]
        return [f.result() for f in futures]


def _finish(result: RunResult, cfg: RunConfig, clock: _Clock) -> RunResult:
    if cfg.timing:
        result.timing = {k: clock.marks[k] for k in sorted(clock.marks)}
    return result


def run_spectrum(cfg: RunConfig) -> RunResult:
    clock = _Clock()
    with clock("diagonalize"):
        spectra = _spectra(cfg, cfg.thetas)
    result = RunResult("spectrum", cfg.echo(), spectra=[spectrum_record(s) for s in spectra])
    return _finish(result, cfg, clock)


def _emitter_energy(spectra, n):
    """Energy of discrete state n at the largest angle (most poles exposed)."""
    widest = max(spectra, key=lambda s: s.theta)
    return widest.discrete(n).energy.value


def _ordinal_near(spectrum, energy) -> int:
    disc = spectrum.discrete_indices
    return int(np.argmin([abs(spectrum.energies[j] - energy) for j in disc]))


def run_rates(cfg: RunConfig) -> RunResult:
    clock = _Clock()
    with clock("diagonalize"):
        spectra = _spectra(cfg, cfg.thetas)
    records = []
    energy = _emitter_energy(spectra, cfg.initial_state) if len(spectra) > 1 else None
    for spec in spectra:
        n = cfg.initial_state if energy is None else _ordinal_near(spec, energy)
        with clock("transition_table"):
            table = build_table(spec)
        with clock("emission"):
            decay = total_rate(n, spec, table, cfg.units, cfg.cutoff_sq)
            shift = total_shift(n, spec, table, cfg.units, cfg.cutoff_sq)
        records.append(decay_record(decay, shift, spec.theta, spec.energies[decay.initial_index]))
    result = RunResult("rates", cfg.echo(), rates=records)
    if len(records) > 1:
        rates = [r["decay"]["total"] for r in records]
        shifts = [r["shift"]["total"] for r in records]
        result.theta_scan = {
            "theta": [r["theta"] for r in records],
            "total_rate": rates,
            "total_shift": shifts,
            "rate_max_rel_deviation": val._rel_spread(rates),
            "shift_max_rel_deviation": val._rel_spread(shifts),
        }
    return _finish(result, cfg, clock)


def run_scan(cfg: RunConfig) -> RunResult:
    clock = _Clock()
    with clock("trajectory"):
        tracks = theta_trajectory(cfg.grid, cfg.potential, cfg.thetas, cfg.tolerances)
    out = [
        {
            "kind": tr.kind,
            "drift": tr.drift,
            "confirmed": tr.confirmed,
            "theta": list(cfg.thetas),
            "re_E": [e.real for e in tr.energies],
            "im_E": [e.imag for e in tr.energies],
        }
        for tr in tracks
    ]
    return _finish(RunResult("scan-theta", cfg.echo(), trajectories=out), cfg, clock)


def _check(name, passed, value, tolerance, detail=""):
    v = float(value) if value is not None and math.isfinite(value) else None
    return {"name": name, "passed": bool(passed), "value": v, "tolerance": tolerance, "detail": detail}


def _guarded(name, tolerance, fn):
    try:
        return fn()
    except ResonanceError as exc:
        return [_check(name, False, None, tolerance, f"{type(exc).__name__}: {exc}")]


def run_validate(cfg: RunConfig) -> RunResult:
    clock = _Clock()
    vs = cfg.validation
    checks = []
    theta = cfg.theta

    with clock("diagonalize"):
        try:
            spec = solve(cfg.grid, cfg.potential, theta, cfg.tolerances)
            table = build_table(spec)
        except ResonanceError as exc:
            spec = table = None
            checks.append(_check("pipeline", False, None, None, f"{type(exc).__name__}: {exc}"))

    if spec is not None:
        def sum_rule():
            rep = val.sum_rule_report(spec, table)
            return [_check("sum_rule", rep.max_abs_error < vs.sum_rule_tol, rep.max_abs_error, vs.sum_rule_tol,
                           f"{len(rep.per_initial)} discrete states at theta={theta}")]

        def oracle():
            out = []
            n_bound = sum(s.kind == BOUND for s in spec.states)
            for n in range(n_bound):
                ref_rate, ref_shift = val.hermitian_oracle(cfg.potential, cfg.grid, n, cfg.units, cfg.cutoff_sq)
                rate = total_rate(n, spec, table, cfg.units, cfg.cutoff_sq)
                shift = total_shift(n, spec, table, cfg.units, cfg.cutoff_sq)
                for label, br, b in (("rate", rate, ref_rate), ("shift", shift, ref_shift)):
                    a = br.total
                    # scale by the summed partial magnitudes so cancelling sums (ground state) compare sanely
                    scale = max(abs(a), abs(b), sum(abs(p[-1]) for p in br.partials))
                    rel = abs(a - b) / scale if scale > 0 else 0.0
                    ok = rel < vs.oracle_tol
                    out.append(_check(f"hermitian_oracle_{label}_bound_{n}", ok, rel, vs.oracle_tol,
                                      f"pipeline {a!r} vs oracle {b!r}"))
            return out

        def conventions():
            n = cfg.initial_state
            state_idx = spec.discrete(n).index
            f_row = table.f[state_idx]
            cut = cfg.units.compton_cutoff_sq if cfg.cutoff_sq is None else cfg.cutoff_sq
            # discrete finals only: the continuum nodes reach the grid's kinetic cutoff
            fmax = max(abs(f_row[j]) for j in spec.discrete_indices if j != state_idx)
            gamma = total_rate(n, spec, table, cfg.units, cfg.cutoff_sq).total
            coupled = [abs(f_row[j]) for j in spec.discrete_indices
                       if j != state_idx and abs(table.d[state_idx, j]) > 1e-8]
            ratio = abs(gamma) / min(coupled) if coupled else 0.0
            return [
                _check("compton_cutoff_above_transition_frequencies", math.sqrt(cut) > fmax,
                       math.sqrt(cut) / fmax, 1.0, "cutoff frequency over the largest discrete |f| of the emitter"),
                _check("weak_coupling", ratio < vs.coupling_ratio, ratio, vs.coupling_ratio,
                       "total rate over the smallest dipole-coupled |f|"),
            ]

        with clock("sum_rule"):
            checks += _guarded("sum_rule", vs.sum_rule_tol, sum_rule)
        with clock("hermitian_oracle"):
            checks += _guarded("hermitian_oracle", vs.oracle_tol, oracle)
        checks += _guarded("conventions", None, conventions)

    def scan():
        out = []
        for obs in ("total_rate", "total_shift"):
            dev, values = val.theta_scan(obs, cfg.initial_state, vs.theta_list, cfg.grid, cfg.potential,
                                         cfg.units, cfg.cutoff_sq, cfg.tolerances)
            out.append(_check(f"theta_scan_{obs}", dev < vs.theta_tol, dev, vs.theta_tol,
                              f"values {values!r} at theta {list(vs.theta_list)!r}"))
        return out

    def cross():
        alt = build_grid(vs.alt_x_min, vs.alt_x_max, vs.alt_n_points)
        deltas = val.cross_discretization_check(cfg.potential, theta, [cfg.grid, alt], cfg.tolerances)
        worst = max((d.delta for d in deltas), default=0.0)
        return [_check("cross_discretization", worst < vs.pole_tol, worst, vs.pole_tol,
                       f"{len(deltas)} poles matched")]

    with clock("theta_scan"):
        checks += _guarded("theta_scan", vs.theta_tol, scan)
    with clock("cross_discretization"):
        checks += _guarded("cross_discretization", vs.pole_tol, cross)

    report = {"passed": all(c["passed"] for c in checks), "checks": checks}
    for c in checks:
        log.info("%s %s", "PASS" if c["passed"] else "FAIL", c["name"])
    return _finish(RunResult("validate", cfg.echo(), validation=report), cfg, clock)
