"""Command-line front end: single rates, sweeps, figure data, MC validation.

Subcommands
    rate      one key-rate evaluation, printed with 9 significant digits
    sweep     optimized key rate versus transmission, written as CSV
    figures   the nine preset sweep CSVs behind the two summary figures
    validate  Monte Carlo run compared against the analytic model

Every output file is accompanied by `<file>.manifest.json` holding the
full resolved parameter set, which together with the CSV reproduces the
run bit-exactly on the same build. CSV dialect: comma-separated, header
row, LF line endings, UTF-8, '.' decimal point; floats are written with
repr so they round-trip losslessly.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numerical
failure (message carries the achieved quadrature error estimate).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .channel import ChannelParams, SignalParams
from .ecmodel import ECModel, cascade_linear_fit, load_table
from .keyrate import QuadratureError, RateConfig, key_rate
from .montecarlo import MIN_BIN_SAMPLES, MCConfig, MCReport, simulate
from .optimize import SweepSpec, sweep

__all__ = ["main", "run"]

SWEEP_HEADER = (
    "eta",
    "alpha_opt",
    "G",
    "I_ab",
    "chi_total",
    "ps_boundary",
    "ps_fraction",
    "error",
)

VALIDATE_HEADER = (
    "bin_center",
    "count",
    "error_count",
    "empirical_e",
    "analytic_e",
    "stderr",
)

# (file stem, scheme, postselect, ec, delta) for the two summary figures:
# curves versus transmission for noiseless detectors, and the detector-noise
# comparison at delta = 0.1
FIGURE_PRESETS = (
    ("fig1_dr_ps_ideal", "dr", True, "ideal", 0.0),
    ("fig1_dr_ps_cascade", "dr", True, "cascade", 0.0),
    ("fig1_rr_ideal", "rr", False, "ideal", 0.0),
    ("fig1_rr_cascade", "rr", False, "cascade", 0.0),
    ("fig1_rr_ps_cascade", "rr", True, "cascade", 0.0),
    ("fig2_dr_ps_ideal_d0", "dr", True, "ideal", 0.0),
    ("fig2_dr_ps_cascade_d0.1", "dr", True, "cascade", 0.1),
    ("fig2_rr_ps_ideal_d0", "rr", True, "ideal", 0.0),
    ("fig2_rr_ps_cascade_d0.1", "rr", True, "cascade", 0.1),
)

_SETTING_DEFAULTS = {
    "quad_rel_tol": 1e-9,
    "quad_abs_tol": 1e-12,
    "cutoff_sigmas": 10.0,
    "alpha_min": 0.05,
    "alpha_max": 5.0,
    "coarse_points": 100,
    "refine_tol": 1e-4,
}


def _load_config_file(path: str) -> dict:
    """Parse `key = value` lines; '#' starts a comment."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, text = (part.strip() for part in line.partition("="))
        if key not in _SETTING_DEFAULTS:
            raise ValueError(f"{path}:{lineno}: unknown setting {key!r}")
        values[key] = int(text) if key == "coarse_points" else float(text)
    return values


def _resolve_settings(args) -> dict:
    """Built-in defaults, overridden by the config file, overridden by flags."""
    settings = dict(_SETTING_DEFAULTS)
    if getattr(args, "config", None):
        settings.update(_load_config_file(args.config))
    for key in _SETTING_DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return settings


def _parse_ec(spec: str) -> ECModel:
    if spec == "ideal":
        return ECModel.ideal()
    if spec == "cascade":
        return cascade_linear_fit()
    if spec.startswith("table:"):
        return load_table(spec[len("table:"):])
    raise ValueError(f"--ec must be 'ideal', 'cascade' or 'table:PATH', got {spec!r}")


def _rate_config(args, settings) -> RateConfig:
    return RateConfig(
        scheme=args.scheme,
        ec=_parse_ec(args.ec),
        postselect=args.postselect,
        quad_rel_tol=settings["quad_rel_tol"],
        quad_abs_tol=settings["quad_abs_tol"],
        cutoff_sigmas=settings["cutoff_sigmas"],
    )


def _eta_grid(args) -> tuple:
    if getattr(args, "eta_list", None):
        return tuple(float(v) for v in args.eta_list.split(","))
    if args.eta_steps < 1:
        raise ValueError("--eta-steps must be >= 1")
    return tuple(float(v) for v in np.linspace(args.eta_min, args.eta_max, args.eta_steps))


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_manifest(out_path, command: str, parameters: dict) -> None:
    manifest = {
        "tool": "cvqkd",
        "version": __version__,
        "command": command,
        "parameters": parameters,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    Path(f"{out_path}.manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _write_sweep_csv(path, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for r in rows:
            writer.writerow(
                [
                    _fmt(r.eta),
                    _fmt(r.alpha_opt),
                    _fmt(r.G),
                    _fmt(r.I_ab),
                    _fmt(r.chi_total),
                    _fmt(r.ps_boundary),
                    _fmt(r.ps_fraction),
                    r.error or "",
                ]
            )


def _sweep_parameters(args, settings, etas, delta) -> dict:
    return {
        "eta_values": list(etas),
        "delta": delta,
        "scheme": args.scheme if hasattr(args, "scheme") else None,
        "postselect": getattr(args, "postselect", None),
        "ec": getattr(args, "ec", None),
        **settings,
    }


def cmd_rate(args) -> int:
    settings = _resolve_settings(args)
    signal = SignalParams(alpha=args.alpha)
    channel = ChannelParams(eta=args.eta, delta=args.delta)
    result = key_rate(signal, channel, _rate_config(args, settings))
    boundary = "none" if result.ps_boundary is None else f"{result.ps_boundary:.9g}"
    print(f"G           = {result.G:.9g}")
    print(f"I_ab        = {result.I_ab:.9g}")
    print(f"chi_total   = {result.chi_total:.9g}")
    print(f"ps_boundary = {boundary}")
    print(f"ps_fraction = {result.ps_fraction:.9g}")
    return 0


def cmd_sweep(args) -> int:
    settings = _resolve_settings(args)
    etas = _eta_grid(args)
    spec = SweepSpec(
        eta_values=etas,
        delta=args.delta,
        config=_rate_config(args, settings),
        alpha_min=settings["alpha_min"],
        alpha_max=settings["alpha_max"],
        coarse_points=int(settings["coarse_points"]),
        refine_tol=settings["refine_tol"],
    )
    rows = sweep(spec, workers=args.workers)
    _write_sweep_csv(args.out, rows)
    _write_manifest(args.out, "sweep", _sweep_parameters(args, settings, etas, args.delta))
    failed = sum(1 for r in rows if r.error)
    print(f"wrote {len(rows)} rows to {args.out}" + (f" ({failed} failed)" if failed else ""))
    return 0


def cmd_figures(args) -> int:
    settings = _resolve_settings(args)
    etas = _eta_grid(args)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for stem, scheme, postselect, ec, delta in FIGURE_PRESETS:
        config = RateConfig(
            scheme=scheme,
            ec=_parse_ec(ec),
            postselect=postselect,
            quad_rel_tol=settings["quad_rel_tol"],
            quad_abs_tol=settings["quad_abs_tol"],
            cutoff_sigmas=settings["cutoff_sigmas"],
        )
        spec = SweepSpec(
            eta_values=etas,
            delta=delta,
            config=config,
            alpha_min=settings["alpha_min"],
            alpha_max=settings["alpha_max"],
            coarse_points=int(settings["coarse_points"]),
            refine_tol=settings["refine_tol"],
        )
        rows = sweep(spec, workers=args.workers)
        path = out_dir / f"{stem}.csv"
        _write_sweep_csv(path, rows)
        parameters = {
            "eta_values": list(etas),
            "delta": delta,
            "scheme": scheme,
            "postselect": postselect,
            "ec": ec,
            **settings,
        }
        _write_manifest(path, "figures", parameters)
        print(f"wrote {path}")
    return 0


def validation_gates(report: MCReport) -> tuple:
    """(error-rate gate, mutual-information gate) for a simulation report.

    Error rates must sit within 4 binomial sigma in every bin with at
    least MIN_BIN_SAMPLES samples; the information estimate must match
    within 1% relative (an absolute floor of 2e-3 covers the vacuum case
    where the analytic value is zero).
    """
    mask = report.counts >= MIN_BIN_SAMPLES
    deviations = np.abs(report.empirical_e[mask] - report.analytic_e[mask])
    rates_ok = bool(np.all(deviations <= 4.0 * report.stderr[mask]))
    iab_ok = abs(report.empirical_iab - report.analytic_iab) <= max(
        0.01 * abs(report.analytic_iab), 2e-3
    )
    return rates_ok, iab_ok


def cmd_validate(args) -> int:
    signal = SignalParams(alpha=args.alpha)
    channel = ChannelParams(eta=args.eta, delta=args.delta)
    mc = MCConfig(n_samples=args.samples, seed=args.seed, bin_width=args.bin_width)
    report = simulate(signal, channel, mc)
    rates_ok, iab_ok = validation_gates(report)

    print(
        f"validate: alpha={args.alpha:.9g} eta={args.eta:.9g} "
        f"delta={args.delta:.9g} samples={args.samples} seed={args.seed}"
    )
    print(f"{'center':>8} {'count':>9} {'empirical':>11} {'analytic':>11} {'sigmas':>8}")
    for i in range(len(report.centers)):
        if report.stderr[i] > 0.0:
            sigmas = abs(report.empirical_e[i] - report.analytic_e[i]) / report.stderr[i]
            sig_text = f"{sigmas:8.2f}"
        else:
            sig_text = f"{'-':>8}"
        print(
            f"{report.centers[i]:8.3f} {report.counts[i]:9d} "
            f"{report.empirical_e[i]:11.6f} {report.analytic_e[i]:11.6f} {sig_text}"
        )
    print(
        f"I_ab: empirical = {report.empirical_iab:.9g}, "
        f"analytic = {report.analytic_iab:.9g}, discrepancy = {report.discrepancy:.3e}"
    )
    print(f"error-rate gate (4 sigma, bins with >= {MIN_BIN_SAMPLES} samples): "
          + ("PASS" if rates_ok else "FAIL"))
    print("mutual-information gate (1% relative): " + ("PASS" if iab_ok else "FAIL"))
    verdict = rates_ok and iab_ok
    print("verdict: " + ("PASS" if verdict else "FAIL"))

    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(VALIDATE_HEADER)
            for i in range(len(report.centers)):
                writer.writerow(
                    [
                        _fmt(float(report.centers[i])),
                        int(report.counts[i]),
                        int(report.error_counts[i]),
                        _fmt(float(report.empirical_e[i])),
                        _fmt(float(report.analytic_e[i])),
                        _fmt(float(report.stderr[i])),
                    ]
                )
        _write_manifest(
            args.out,
            "validate",
            {
                "alpha": args.alpha,
                "eta": args.eta,
                "delta": args.delta,
                "samples": args.samples,
                "seed": args.seed,
                "bin_width": args.bin_width,
            },
        )
    return 0 if verdict else 1


def _add_numeric_options(parser, search: bool) -> None:
    parser.add_argument("--config", help="plain-text settings file (key = value lines)")
    parser.add_argument("--quad-rel-tol", dest="quad_rel_tol", type=float)
    parser.add_argument("--quad-abs-tol", dest="quad_abs_tol", type=float)
    parser.add_argument("--cutoff-sigmas", dest="cutoff_sigmas", type=float)
    if search:
        parser.add_argument("--alpha-min", dest="alpha_min", type=float)
        parser.add_argument("--alpha-max", dest="alpha_max", type=float)
        parser.add_argument("--coarse-points", dest="coarse_points", type=int)
        parser.add_argument("--refine-tol", dest="refine_tol", type=float)
        parser.add_argument("--workers", type=int, default=1,
                            help="parallel processes for sweep rows (default 1)")


def _add_protocol_options(parser) -> None:
    parser.add_argument("--scheme", choices=("dr", "rr"), required=True,
                        help="reconciliation direction")
    parser.add_argument("--postselect", action="store_true",
                        help="discard channels with negative advantage")
    parser.add_argument("--ec", default="ideal",
                        help="'ideal', 'cascade' (linear fit) or 'table:PATH'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvqkd",
        description="Key rates for binary-modulated coherent-state QKD over a lossy channel",
    )
    parser.add_argument("--version", action="version", version=f"cvqkd {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_rate = sub.add_parser("rate", help="key rate at a single parameter point")
    p_rate.add_argument("--alpha", type=float, required=True)
    p_rate.add_argument("--eta", type=float, required=True)
    p_rate.add_argument("--delta", type=float, default=0.0)
    _add_protocol_options(p_rate)
    _add_numeric_options(p_rate, search=False)
    p_rate.set_defaults(func=cmd_rate)

    p_sweep = sub.add_parser("sweep", help="optimized key rate versus transmission")
    p_sweep.add_argument("--eta-min", dest="eta_min", type=float, default=0.05)
    p_sweep.add_argument("--eta-max", dest="eta_max", type=float, default=1.0)
    p_sweep.add_argument("--eta-steps", dest="eta_steps", type=int, default=20)
    p_sweep.add_argument("--eta-list", dest="eta_list",
                         help="comma-separated eta values (overrides min/max/steps)")
    p_sweep.add_argument("--delta", type=float, default=0.0)
    _add_protocol_options(p_sweep)
    _add_numeric_options(p_sweep, search=True)
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.set_defaults(func=cmd_sweep)

    p_fig = sub.add_parser("figures", help="regenerate the nine preset figure CSVs")
    p_fig.add_argument("--out-dir", dest="out_dir", required=True)
    p_fig.add_argument("--eta-min", dest="eta_min", type=float, default=0.05)
    p_fig.add_argument("--eta-max", dest="eta_max", type=float, default=1.0)
    p_fig.add_argument("--eta-steps", dest="eta_steps", type=int, default=20)
    _add_numeric_options(p_fig, search=True)
    p_fig.set_defaults(func=cmd_figures)

    p_val = sub.add_parser("validate", help="Monte Carlo check of the analytic model")
    p_val.add_argument("--alpha", type=float, required=True)
    p_val.add_argument("--eta", type=float, required=True)
    p_val.add_argument("--delta", type=float, default=0.0)
    p_val.add_argument("--samples", type=int, default=1_000_000)
    p_val.add_argument("--seed", type=int, default=20240501)
    p_val.add_argument("--bin-width", dest="bin_width", type=float, default=0.1)
    p_val.add_argument("--out", help="optional per-bin CSV path")
    p_val.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except QuadratureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())
