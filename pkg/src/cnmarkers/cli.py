"""Command-line front end: simulate | detect | sweep | report.

Exit codes: 0 ok, 2 usage/config/ingestion, 3 runtime failure. Every command
writes a manifest next to its outputs; outputs are write-once unless --force.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
import time

import numpy as np

from . import __version__
from .causality import DEFAULT_BINS
from .configio import (apply_config, config_snapshot, make_manifest,
                       parse_config_file, parse_events_file, parse_set_items,
                       prepare_output, write_manifest)
from .errors import CnmError, ConfigError, DataError, DegenerateInput
from .grouping import parse_grouping_file
from .markers import (DEFAULT_STRIDE, DEFAULT_WINDOW, MARKER_KINDS,
                      detect_warning, evaluate_combined, evaluate_warnings,
                      marker_stream, marker_sweep)
from .models import get_model
from .series import load_csv, moving_average, write_csv
from .svgplot import polyline_chart

FLOAT_FMT = "%.17g"


def _parse_kinds(text: str):
    kinds = tuple(k.strip() for k in text.split(",") if k.strip())
    if not kinds:
        raise ConfigError("--marker expects a comma-separated list of marker kinds")
    for k in kinds:
        if k not in MARKER_KINDS:
            raise ConfigError(f"unknown marker kind {k!r}; choices: {', '.join(MARKER_KINDS)}")
    return kinds


def _build_config(model: str, args):
    config_cls, simulate = get_model(model)
    cfg = config_cls()
    inputs = []
    if args.config:
        cfg = apply_config(cfg, parse_config_file(args.config))
        inputs.append(args.config)
    cfg = apply_config(cfg, parse_set_items(args.set or []))
    if args.seed is not None:
        cfg = apply_config(cfg, {"seed": str(args.seed)})
    return cfg, simulate, inputs


def _finish(args, stem: str, out_dir: str, seed, config: dict, inputs, outputs,
            t0: float, argv) -> int:
    manifest_path = os.path.join(out_dir, f"{stem}.manifest.json")
    prepare_output(manifest_path, args.force)
    manifest = make_manifest(command=["cnm", *argv], version=__version__, seed=seed,
                             config=config, inputs=inputs,
                             outputs=[os.fspath(p) for p in outputs],
                             duration_seconds=round(time.monotonic() - t0, 3))
    write_manifest(manifest, manifest_path)
    return 0


def cmd_simulate(args, argv) -> int:
    t0 = time.monotonic()
    cfg, simulate, inputs = _build_config(args.model, args)
    out = args.out if args.out else f"{args.model}.csv"
    prepare_output(out, args.force)
    series = simulate(cfg)
    write_csv(series, out)
    stem = os.path.splitext(os.path.basename(out))[0]  # one manifest per output
    return _finish(args, stem, os.path.dirname(os.path.abspath(out)),
                   getattr(cfg, "seed", None), config_snapshot(cfg), inputs,
                   [out], t0, argv)


def _write_marker_csv(path: str, m, smooth5, smooth12) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("time,value,smooth5,smooth12\n")
        for t, v, s5, s12 in zip(m.times, m.values, smooth5.values, smooth12.values):
            fh.write(",".join(FLOAT_FMT % x for x in (t, v, s5, s12)) + "\n")


def _plot_marker_csv(csv_path: str, svg_path: str, kind: str, warn_times) -> None:
    # plots are rebuilt from the CSV on disk so they can never diverge from it
    rows = np.genfromtxt(csv_path, delimiter=",", names=True)
    rows = np.atleast_1d(rows)
    polyline_chart(svg_path, f"{kind} marker", [
        (kind, rows["time"], rows["value"]),
        ("5 s mean", rows["time"], rows["smooth5"]),
        ("12 s mean", rows["time"], rows["smooth12"]),
    ], ticks=warn_times, ylabel="marker value")


def cmd_detect(args, argv) -> int:
    t0 = time.monotonic()
    kinds = _parse_kinds(args.marker)
    series = load_csv(args.input, dt=args.dt)
    if series.n_channels < 2:
        raise DataError(f"{args.input}: need at least 2 channels, got {series.n_channels}")
    grouping = None
    inputs = [args.input]
    if args.grouping_file:
        grouping = parse_grouping_file(args.grouping_file, series.channel_names)
        inputs.append(args.grouping_file)
    out_dir = args.out if args.out else "detect-run"
    os.makedirs(out_dir, exist_ok=True)
    outputs = []
    warning_rows = []
    for kind in kinds:
        m = marker_stream(series, window_length=args.window, stride=args.stride,
                          kind=kind, grouping_mode=args.grouping,
                          grouping=grouping, bins=args.bins)
        if len(m) == 0:
            raise DegenerateInput(f"{kind}: every window failed; no marker values")
        warn = detect_warning(m, args.baseline, args.kappa)
        csv_path = os.path.join(out_dir, f"{kind}.csv")
        prepare_output(csv_path, args.force)
        _write_marker_csv(csv_path, m, moving_average(m, 5.0), moving_average(m, 12.0))
        outputs.append(csv_path)
        svg_path = os.path.join(out_dir, f"{kind}.svg")
        prepare_output(svg_path, args.force)
        _plot_marker_csv(csv_path, svg_path, kind, warn)
        outputs.append(svg_path)
        warning_rows.extend((kind, t) for t in warn)
    warn_path = os.path.join(out_dir, "warnings.csv")
    prepare_output(warn_path, args.force)
    with open(warn_path, "w", encoding="utf-8", newline="") as fh:
        fh.write("marker,time\n")
        for kind, t in warning_rows:
            fh.write(f"{kind},{FLOAT_FMT % t}\n")
    outputs.append(warn_path)
    snapshot = {"marker": ",".join(kinds), "window": args.window, "stride": args.stride,
                "grouping": args.grouping, "grouping_file": args.grouping_file,
                "bins": args.bins, "kappa": args.kappa, "baseline": args.baseline,
                "dt": args.dt}
    return _finish(args, "detect", out_dir, args.seed, snapshot, inputs, outputs,
                   t0, argv)


def _parse_grid(spec: str):
    name, sep, rest = spec.partition("=")
    parts = rest.split(":")
    if not sep or not name.strip() or len(parts) != 3:
        raise ConfigError(f"parameter grid must look like name=start:stop:steps, got {spec!r}")
    name = name.strip()
    try:
        start, stop = float(parts[0]), float(parts[1])
        steps = int(parts[2])
    except ValueError:
        raise ConfigError(f"parameter grid must look like name=start:stop:steps, got {spec!r}") from None
    if steps < 1:
        raise ConfigError(f"parameter grid needs at least 1 step, got {steps}")
    return name, np.linspace(start, stop, steps)


def cmd_sweep(args, argv) -> int:
    t0 = time.monotonic()
    kinds = _parse_kinds(args.marker)
    param, values = _parse_grid(args.grid)
    cfg, _, inputs = _build_config(args.model, args)
    seed = args.seed if args.seed is not None else getattr(cfg, "seed", 0)
    out_dir = args.out if args.out else "sweep-run"
    os.makedirs(out_dir, exist_ok=True)
    points = marker_sweep(args.model, param, values, kinds=kinds, config=cfg,
                          seed=seed, tail=args.tail, bins=args.bins,
                          jobs=args.jobs)
    csv_path = os.path.join(out_dir, "sweep.csv")
    prepare_output(csv_path, args.force)
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([param, *kinds, "status"])
        for p in points:
            cells = [FLOAT_FMT % p.value]
            cells += [FLOAT_FMT % p.markers[k] if p.error is None else "" for k in kinds]
            cells.append("ok" if p.error is None else p.error)
            writer.writerow(cells)
    svg_path = os.path.join(out_dir, "sweep.svg")
    prepare_output(svg_path, args.force)
    with open(csv_path, encoding="utf-8", newline="") as fh:
        table = list(csv.reader(fh))
    ok = [row for row in table[1:] if row[-1] == "ok"]
    xs = np.array([float(r[0]) for r in ok])
    tracks = [(kind, xs, np.array([float(r[1 + j]) for r in ok]))
              for j, kind in enumerate(kinds)]
    polyline_chart(svg_path, f"{args.model}: markers vs {param}", tracks,
                   xlabel=param, ylabel="marker value")
    snapshot = dict(config_snapshot(cfg), grid=args.grid, marker=",".join(kinds),
                    tail=args.tail, bins=args.bins)
    return _finish(args, "sweep", out_dir, seed, snapshot, inputs,
                   [csv_path, svg_path], t0, argv)


def _read_warning_sets(run_dir: str) -> dict:
    warn_path = os.path.join(run_dir, "warnings.csv")
    if not os.path.exists(warn_path):
        raise ConfigError(f"{warn_path} not found; run detect first")
    sets = {}
    # markers that raised no warnings still get a row set from their CSVs
    for kind in MARKER_KINDS:
        if os.path.exists(os.path.join(run_dir, f"{kind}.csv")):
            sets[kind] = []
    with open(warn_path, encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["marker", "time"]:
            raise ConfigError(f"{warn_path}: expected a marker,time header")
        for row in reader:
            if len(row) < 2:
                continue
            sets.setdefault(row[0].strip(), []).append(float(row[1]))
    if not sets:
        raise ConfigError(f"{run_dir}: no marker runs found")
    return {k: np.asarray(v, dtype=np.float64) for k, v in sets.items()}


def cmd_report(args, argv) -> int:
    t0 = time.monotonic()
    sets = _read_warning_sets(args.run_dir)
    events = parse_events_file(args.events)
    out_dir = args.out if args.out else args.run_dir
    os.makedirs(out_dir, exist_ok=True)
    rows = []
    order = [k for k in MARKER_KINDS if k in sets] + \
            [k for k in sorted(sets) if k not in MARKER_KINDS]
    for kind in order:
        rep = evaluate_warnings(sets[kind], events, args.lead)
        rows.append((kind, len(sets[kind]), rep.accuracy))
        if kind == "cnm-te" or (kind == "cnm-gc" and "cnm-te" not in sets):
            cnm_sets = {k: sets[k] for k in ("cnm-gc", "cnm-te") if k in sets}
            combo = evaluate_combined(cnm_sets, events, args.lead, mode="any")
            rows.append(("cnms", sum(len(v) for v in cnm_sets.values()),
                         combo.accuracy))
    txt_path = os.path.join(out_dir, "report.txt")
    csv_path = os.path.join(out_dir, "report.csv")
    prepare_output(txt_path, args.force)
    prepare_output(csv_path, args.force)
    width = max(6, max(len(r[0]) for r in rows))
    lines = [f"{'marker'.ljust(width)}  warnings  accuracy"]
    lines += [f"{kind.ljust(width)}  {n:8d}  {acc * 100:7.1f}%" for kind, n, acc in rows]
    with open(txt_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write("marker,n_warnings,accuracy\n")
        for kind, n, acc in rows:
            fh.write(f"{kind},{n},{FLOAT_FMT % acc}\n")
    snapshot = {"run_dir": args.run_dir, "events": args.events, "lead": args.lead}
    return _finish(args, "report", out_dir, args.seed, snapshot,
                   [args.run_dir, args.events], [txt_path, csv_path], t0, argv)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file")
    common.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="override a single config key (repeatable)")
    common.add_argument("--seed", type=int, default=None, help="master RNG seed")
    common.add_argument("--out", help="output file (simulate) or directory")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="worker processes for sweep grids")
    common.add_argument("--force", action="store_true",
                        help="allow overwriting existing outputs")

    parser = argparse.ArgumentParser(
        prog="cnm",
        description="Tipping-point detection via causal network markers.")
    parser.add_argument("--version", action="version", version=f"cnm {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("simulate", parents=[common],
                       help="run a benchmark model and write its series CSV")
    p.add_argument("model", help="genetic | mutualistic | turing | linear-oracle")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("detect", parents=[common],
                       help="sliding-window markers + warning times for a CSV")
    p.add_argument("input", help="multivariate series CSV")
    p.add_argument("--marker", default=",".join(MARKER_KINDS),
                   help="comma list of marker kinds")
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW,
                   help="window length in samples")
    p.add_argument("--stride", type=int, default=DEFAULT_STRIDE,
                   help="window stride in samples")
    p.add_argument("--grouping", choices=("per-window", "frozen"),
                   default="per-window", help="variance grouping refresh policy")
    p.add_argument("--grouping-file", help="fixed DG/NDG assignment file")
    p.add_argument("--bins", type=int, default=DEFAULT_BINS,
                   help="histogram bins for binned transfer entropy")
    p.add_argument("--kappa", type=float, default=3.0,
                   help="z-score threshold for warnings")
    p.add_argument("--baseline", type=float, default=60.0,
                   help="trailing baseline window in seconds")
    p.add_argument("--dt", type=float, default=None,
                   help="sample spacing when the CSV has no time column")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("sweep", parents=[common],
                       help="stationary-tail markers over a parameter grid")
    p.add_argument("model", help="genetic | mutualistic | turing | linear-oracle")
    p.add_argument("grid", metavar="name=start:stop:steps",
                   help="parameter grid, e.g. P=-4:-0.5:8")
    p.add_argument("--marker", default=",".join(MARKER_KINDS),
                   help="comma list of marker kinds")
    p.add_argument("--tail", type=int, default=None,
                   help="tail window length in samples (default: n/4 capped)")
    p.add_argument("--bins", type=int, default=DEFAULT_BINS,
                   help="histogram bins for binned transfer entropy")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", parents=[common],
                       help="score warning times from a detect run against events")
    p.add_argument("run_dir", help="directory written by detect")
    p.add_argument("--events", required=True,
                   help="events file, onset_seconds,end_seconds per line")
    p.add_argument("--lead", type=float, default=10.0,
                   help="valid lead window before onset, seconds")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, argv)
    except CnmError as exc:
        print(f"cnm: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"cnm: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
