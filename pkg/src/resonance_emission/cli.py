"""Command-line entry point: spectrum | rates | validate | scan-theta."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import config as config_mod
from . import pipeline
from .errors import ResonanceError
from .results import (
    convergence_rows,
    ray_rows,
    spectrum_rows,
    write_csv,
    write_json,
)

log = logging.getLogger("resonance_emission")

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2, 3


def _suffix(theta: float, many: bool) -> str:
    return f"_theta_{theta!r}" if many else ""


def _emit_spectrum(result, cfg, out: Path):
    many = len(result.spectra) > 1
    for rec in result.spectra:
        tag = _suffix(rec["theta"], many)
        if "json" in cfg.formats:
            sub = pipeline.RunResult(result.command, result.config, spectra=[rec], timing=result.timing)
            write_json(out / f"spectrum{tag}.json", sub)
        if "csv" in cfg.formats:
            write_csv(out / f"spectrum{tag}.csv", ("index", "re_E", "im_E", "kind", "parity"), spectrum_rows(rec))
            write_csv(out / f"rays{tag}.csv", ("ray", "state_index", "origin_re", "origin_im", "angle"),
                      ray_rows(rec))


def _emit_rates(result, cfg, out: Path):
    many = len(result.rates) > 1
    for rec in result.rates:
        tag = _suffix(rec["theta"], many)
        if "json" in cfg.formats:
            sub = pipeline.RunResult(result.command, result.config, rates=[rec], timing=result.timing)
            write_json(out / f"rates{tag}.json", sub)
        if "csv" in cfg.formats:
            write_csv(out / f"convergence{tag}.csv",
                      ("n_states_included", "cumulative_rate", "cumulative_fraction"), convergence_rows(rec))
    if result.theta_scan is not None:
        summary = pipeline.RunResult(result.command, result.config, theta_scan=result.theta_scan,
                                     timing=result.timing)
        if "json" in cfg.formats:
            write_json(out / "theta_scan.json", summary)
        if "csv" in cfg.formats:
            ts = result.theta_scan
            write_csv(out / "theta_scan.csv", ("theta", "total_rate", "total_shift"),
                      zip(ts["theta"], ts["total_rate"], ts["total_shift"]))


def _emit_scan(result, cfg, out: Path):
    if "json" in cfg.formats:
        write_json(out / "trajectory.json", result)
    if "csv" in cfg.formats:
        rows = []
        for k, tr in enumerate(result.trajectories):
            for th, re, im in zip(tr["theta"], tr["re_E"], tr["im_E"]):
                rows.append((k, tr["kind"], th, re, im, tr["drift"], str(tr["confirmed"]).lower()))
        write_csv(out / "trajectory.csv", ("pole", "kind", "theta", "re_E", "im_E", "drift", "confirmed"), rows)


def _emit_validate(result, cfg, out: Path):
    if "json" in cfg.formats:
        write_json(out / "validate.json", result)
    if "csv" in cfg.formats:
        rows = [(c["name"], str(c["passed"]).lower(), "" if c["value"] is None else c["value"],
                 "" if c["tolerance"] is None else c["tolerance"]) for c in result.validation["checks"]]
        write_csv(out / "validate.csv", ("check", "passed", "value", "tolerance"), rows)


COMMANDS = {
    "spectrum": (pipeline.run_spectrum, _emit_spectrum),
    "rates": (pipeline.run_rates, _emit_rates),
    "validate": (pipeline.run_validate, _emit_validate),
    "scan-theta": (pipeline.run_scan, _emit_scan),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="resonance-emission",
        description="Spontaneous-emission rates from complex-scaled resonance states",
    )
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--config", required=True, help="flat 'section.key = value' config file")
    ap.add_argument("--out", default=None, help="output directory (overrides config and environment)")
    ap.add_argument("--format", default=None, help="comma-separated subset of json,csv")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="[%(name)s] %(message)s")
    try:
        cfg = config_mod.load(args.config, out_dir=args.out, formats=args.format)
    except ResonanceError as exc:
        print(f"config-invalid: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    run, emit = COMMANDS[args.command]
    try:
        result = run(cfg)
    except ResonanceError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code

    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    emit(result, cfg, out)
    log.info("wrote %s output to %s", args.command, out)

    if args.command == "validate" and not result.validation["passed"]:
        for c in result.validation["checks"]:
            if not c["passed"]:
                print(f"FAIL {c['name']}: {c['detail']}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
