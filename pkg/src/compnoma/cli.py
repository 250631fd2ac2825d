"""Command-line front end: config loading, sweeps, figure presets, validation.

Exit status: 0 success, 1 configuration error, 2 runtime error. Every run that
gets past config resolution writes a JSON manifest (resolved config, seed,
version, duration, warnings) plus a human-readable log next to the CSV.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__, validate
from .config import SCHEMES, ScenarioConfig
from .errors import ConfigError
from .sim import run_sweep

log = logging.getLogger("compnoma")

GAMMA_SWEEP_DB = tuple(float(g) for g in range(-10, 1))  # -10 .. 0 dB, 1 dB steps

FIGURE_PRESETS = {
    # throughput vs user density at the reference threshold, both BS densities
    "figure3": {
        "bs_density": (16.0, 30.0),
        "user_density": (40.0, 50.0, 60.0, 70.0, 80.0, 90.0, 140.0, 150.0),
        "comp_threshold_db": (-6.5,),
    },
    # throughput vs threshold at fixed densities
    "figure4": {
        "bs_density": (16.0,),
        "user_density": (50.0,),
        "comp_threshold_db": GAMMA_SWEEP_DB,
    },
    # coverage vs threshold (same sweep; the CSV always carries coverage)
    "figure5": {
        "bs_density": (16.0,),
        "user_density": (50.0,),
        "comp_threshold_db": GAMMA_SWEEP_DB,
    },
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compnoma",
        description="Monte Carlo comparison of OMA / CoMP / NOMA / combined downlink serving schemes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_config=True):
        if with_config:
            p.add_argument("--config", type=Path, help="key=value config file")
            p.add_argument("--from-manifest", type=Path, help="re-run the exact config of a previous manifest")
        p.add_argument("--out", type=Path, help="output CSV path")
        p.add_argument("--seed", type=int, help="master seed")
        p.add_argument("--iterations", type=int, help="Monte Carlo iterations per point")
        p.add_argument("--threads", type=int, help="worker processes")
        p.add_argument("--schemes", help=f"comma list out of {','.join(SCHEMES)}")
        p.add_argument("--dump-iterations", type=Path, help="also write the per-iteration CSV here")
        p.add_argument("--area-km2", type=float, dest="area_km2")
        p.add_argument("--bs-density", dest="bs_density", help="value or comma list, per km2")
        p.add_argument("--user-density", dest="user_density", help="value or comma list, per km2")
        p.add_argument("--comp-threshold-db", dest="comp_threshold_db", help="value or comma list, dB")
        p.add_argument("--mcs-table", dest="mcs_table", help="path to an MCS table file")
        p.add_argument("--msd-mode", dest="msd_mode", choices=["rate_feasibility", "fixed_gap"])
        p.add_argument("--quiet", action="store_true", help="suppress console progress")

    add_common(sub.add_parser("sweep", help="run the configured Cartesian sweep"))
    for fig in FIGURE_PRESETS:
        add_common(sub.add_parser(fig, help=f"run the {fig} preset sweep"), with_config=False)
    v = sub.add_parser("validate", help="run the oracle and invariant battery")
    v.add_argument("--fast", action="store_true", help="shrink the invariant run")
    v.add_argument("--quiet", action="store_true")
    return parser


_OVERRIDE_KEYS = (
    "seed", "iterations", "threads", "schemes", "area_km2",
    "bs_density", "user_density", "comp_threshold_db", "mcs_table", "msd_mode",
)


def resolve_config(args) -> ScenarioConfig:
    """defaults -> preset -> config file -> flag overrides, in that order."""
    if getattr(args, "from_manifest", None):
        manifest = json.loads(Path(args.from_manifest).read_text())
        cfg = ScenarioConfig.from_mapping(manifest["config"])
    elif getattr(args, "config", None):
        cfg = ScenarioConfig.from_file(args.config)
    else:
        cfg = ScenarioConfig()

    preset = FIGURE_PRESETS.get(args.command)
    if preset:
        cfg = cfg.with_overrides(preset)

    overrides = {}
    for key in _OVERRIDE_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            overrides["master_seed" if key == "seed" else key] = value
    return cfg.with_overrides(overrides)


def _setup_logging(log_path: Path | None, quiet: bool):
    handlers: list[logging.Handler] = []
    console = logging.StreamHandler(sys.stderr)
    console.setLevel(logging.WARNING if quiet else logging.INFO)
    handlers.append(console)
    if log_path is not None:
        handlers.append(logging.FileHandler(log_path, mode="w"))
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s %(levelname)s %(message)s",
        handlers=handlers,
        force=True,
    )


def _write_manifest(path: Path, cfg: ScenarioConfig, status: str, duration_s: float,
                    warnings: dict, csv_path: Path, error: str = "") -> None:
    manifest = {
        "config": cfg.to_dict(),
        "master_seed": cfg.master_seed,
        "version": __version__,
        "status": status,
        "error": error,
        "duration_s": round(duration_s, 3),
        "warnings": warnings,
        "csv": str(csv_path),
    }
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _run_sweep_command(args) -> int:
    cfg = resolve_config(args)  # ConfigError here -> exit 1 in main()
    out = args.out or Path(f"{args.command}.csv")
    manifest_path = out.with_suffix(".manifest.json")
    log_path = out.with_suffix(".log")
    _setup_logging(log_path, args.quiet)

    log.info("resolved config: %s", json.dumps(cfg.to_dict(), sort_keys=True))
    log.info("sweep: %d points x %d iterations, schemes=%s",
             len(cfg.points()), cfg.iterations, ",".join(cfg.selected_schemes()))
    start = time.perf_counter()
    try:
        report = run_sweep(cfg)
        report.to_csv(out)
        if args.dump_iterations:
            report.to_iteration_csv(args.dump_iterations)
    except ConfigError as exc:
        _write_manifest(manifest_path, cfg, "error", time.perf_counter() - start, {}, out, str(exc))
        raise
    except Exception as exc:
        _write_manifest(manifest_path, cfg, "error", time.perf_counter() - start, {}, out, str(exc))
        log.error("run failed: %s", exc)
        return 2
    duration = time.perf_counter() - start
    for key, count in sorted(report.warnings.items()):
        log.info("warning count: %s = %d", key, count)
    _write_manifest(manifest_path, cfg, "ok", duration, report.warnings, out)
    log.info("wrote %s (%d rows) in %.2fs", out, len(report.rows), duration)
    return 0


def _run_validate(args) -> int:
    _setup_logging(None, args.quiet)
    results = validate.run_all(fast=args.fast)
    width = max(len(r.name) for r in results)
    ok = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name:<{width}}  {r.detail}")
        ok &= r.passed
    return 0 if ok else 2


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "validate":
            return _run_validate(args)
        return _run_sweep_command(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint():
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
