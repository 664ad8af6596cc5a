"""Command-line interface.

Subcommands: sweep, point, no-sink, ring-lattice, metrics, presets.
Exit codes: 0 success, 1 configuration error, 2 numerical-guard failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .errors import ConfigError, NumericalInstabilityError, SqwsError
from .experiments import (
    DEFAULT_GAMMAS,
    DEFAULT_OMEGAS,
    SweepConfig,
    config_from_dict,
    config_to_dict,
    default_workers,
    metrics_to_text,
    point_id,
    ring_lattice_study,
    run_no_sink_grid,
    run_point,
    run_sweep,
    table1_report,
    write_heatmaps_csv,
    write_manifest,
    write_metrics_csv,
    write_profile_csv,
    write_records_csv,
    write_series_csv,
)
from .graphs import FamilySpec, TargetSelector, generate, to_edge_list_text
from .presets import PRESETS, build_preset, preset_kind
from dataclasses import replace


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise ConfigError(f"config file {path}: {exc}") from exc


def _resolve_sweep_config(arg: str, kinds=("sweep", "no_sink")) -> SweepConfig:
    if os.path.exists(arg):
        return config_from_dict(_load_json(arg))
    if arg in PRESETS:
        if preset_kind(arg) not in kinds:
            raise ConfigError(f"preset '{arg}' has kind '{preset_kind(arg)}', "
                              f"expected one of {kinds}")
        return build_preset(arg)
    raise ConfigError(f"--config: '{arg}' is neither a file nor a known preset")


def _resolve_ring_config(arg: str) -> dict:
    if os.path.exists(arg):
        return _load_json(arg)
    if arg in PRESETS:
        if preset_kind(arg) not in ("ring_lattice", "profile"):
            raise ConfigError(f"preset '{arg}' is not a ring-lattice preset")
        return build_preset(arg)
    raise ConfigError(f"--config: '{arg}' is neither a file nor a known preset")


def _apply_overrides(cfg: SweepConfig, args) -> SweepConfig:
    if getattr(args, "seed", None) is not None:
        cfg = replace(cfg, seed=args.seed)
    if getattr(args, "series", False):
        cfg = replace(cfg, record_series=True)
    return cfg


def _write_graph(cfg: SweepConfig, out_dir: str):
    g = generate(replace(cfg.graph, seed=cfg.seed))
    with open(os.path.join(out_dir, "graph.txt"), "w") as fh:
        fh.write(to_edge_list_text(g))


def _cmd_sweep(args) -> int:
    cfg = _apply_overrides(_resolve_sweep_config(args.config, kinds=("sweep",)), args)
    workers = args.workers or default_workers()
    started = time.perf_counter()
    series: dict = {}
    records = run_sweep(cfg, workers=workers,
                        collect_series=series if cfg.record_series else None)
    os.makedirs(args.out, exist_ok=True)
    write_records_csv(records, os.path.join(args.out, "records.csv"))
    if cfg.record_series:
        sdir = os.path.join(args.out, "series")
        os.makedirs(sdir, exist_ok=True)
        for pid, arr in series.items():
            write_series_csv(arr, os.path.join(sdir, f"{pid}.csv"))
    _write_graph(cfg, args.out)
    write_manifest(
        os.path.join(args.out, "manifest.json"), "sweep", config_to_dict(cfg),
        workers, time.perf_counter() - started,
        [{"id": point_id(r.target, r.omega, r.gamma), "wall_time": r.wall_time,
          "error": r.error} for r in records])
    failures = [r for r in records if r.error]
    for r in failures:
        print(f"warning: {point_id(r.target, r.omega, r.gamma)}: {r.error}", file=sys.stderr)
    return 2 if failures else 0


def _cmd_point(args) -> int:
    cfg = _apply_overrides(_resolve_sweep_config(args.config), args)
    if args.target is not None:
        try:
            target = TargetSelector("index", int(args.target))
        except ValueError:
            target = TargetSelector("named", args.target)
    else:
        target = cfg.targets[0]
    record = run_point(replace(cfg, record_series=False), target, args.omega, args.gamma)
    doc = {k: getattr(record, k) for k in record.__dataclass_fields__}
    print(json.dumps(doc, indent=2, sort_keys=True))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "point.json"), "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if record.error:
        print(f"error: {record.error}", file=sys.stderr)
        return 2
    return 0


def _cmd_no_sink(args) -> int:
    cfg = _apply_overrides(_resolve_sweep_config(args.config, kinds=("no_sink",)), args)
    if cfg.sink_rate != 0.0:
        raise ConfigError(f"sink_rate: no-sink runs require 0, got {cfg.sink_rate}")
    workers = args.workers or default_workers()
    started = time.perf_counter()
    grid = run_no_sink_grid(cfg, workers=workers)
    os.makedirs(args.out, exist_ok=True)
    write_heatmaps_csv(grid, os.path.join(args.out, "heatmaps.csv"))
    _write_graph(cfg, args.out)
    write_manifest(os.path.join(args.out, "manifest.json"), "no-sink",
                   config_to_dict(cfg), workers, time.perf_counter() - started)
    return 0


def _cmd_ring(args) -> int:
    doc = _resolve_ring_config(args.config)
    if args.seed is not None:
        doc["seed"] = args.seed
    workers = args.workers or default_workers()
    started = time.perf_counter()
    os.makedirs(args.out, exist_ok=True)
    if "omegas" in doc or "gammas" in doc:
        sweeps, profile = ring_lattice_study(
            int(doc["n"]), [int(k) for k in doc["ks"]],
            omegas=tuple(doc.get("omegas", DEFAULT_OMEGAS)),
            gammas=tuple(doc.get("gammas", DEFAULT_GAMMAS)),
            t_max=doc.get("t_max"), seed=int(doc.get("seed", 0)),
            workers=workers, samples=int(doc.get("samples", 1024)))
        for k, records in sweeps.items():
            kdir = os.path.join(args.out, f"k{k}")
            os.makedirs(kdir, exist_ok=True)
            write_records_csv(records, os.path.join(kdir, "records.csv"))
    else:
        from .graphs import ring_lattice_profile
        profile = ring_lattice_profile(int(doc["n"]), [int(k) for k in doc["ks"]])
    write_profile_csv(profile, os.path.join(args.out, "profile.csv"))
    write_manifest(os.path.join(args.out, "manifest.json"), "ring-lattice", doc,
                   workers, time.perf_counter() - started)
    return 0


def _cmd_metrics(args) -> int:
    specs = None
    if args.config and args.config != "table-metrics":
        if os.path.exists(args.config):
            doc = _load_json(args.config)
            specs = []
            for entry in doc:
                gdoc = entry["graph"]
                spec = FamilySpec(gdoc["family"], dict(gdoc.get("params", {})),
                                  int(gdoc.get("seed", 0)))
                targets = [TargetSelector(t["mode"], t["value"], t.get("depth"))
                           for t in entry["targets"]]
                specs.append((spec, targets))
        else:
            raise ConfigError(f"--config: '{args.config}' is not a metrics config file")
    rows = table1_report(specs)
    text = metrics_to_text(rows)
    print(text, end="")
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        write_metrics_csv(rows, os.path.join(args.out, "metrics.csv"))
        with open(os.path.join(args.out, "metrics.txt"), "w") as fh:
            fh.write(text)
    return 0


def _cmd_presets(_args) -> int:
    width = max(len(n) for n in PRESETS)
    for name in sorted(PRESETS):
        p = PRESETS[name]
        print(f"{name.ljust(width)}  [{p['kind']}]  {p['describe']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqws",
        description="Stochastic quantum walk search experiments on graphs with a trapping sink")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, workers=True):
        p.add_argument("--config", required=True,
                       help="preset name or JSON config file")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--seed", type=int, default=None, help="override config seed")
        if workers:
            p.add_argument("--workers", type=int, default=None,
                           help="worker processes (default: SQWS_WORKERS or CPU count)")

    p = sub.add_parser("sweep", help="run a (target, omega, gamma) grid")
    add_common(p)
    p.add_argument("--series", action="store_true", help="write per-point time series")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("point", help="run a single grid point")
    add_common(p, workers=False)
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--target", default=None, help="target index or role tag")
    p.set_defaults(func=_cmd_point, out=None)

    p = sub.add_parser("no-sink", help="success-probability grid without a sink")
    add_common(p)
    p.set_defaults(func=_cmd_no_sink)

    p = sub.add_parser("ring-lattice", help="ring-lattice transition study")
    add_common(p)
    p.set_defaults(func=_cmd_ring)

    p = sub.add_parser("metrics", help="topology metric table")
    p.add_argument("--config", default="table-metrics")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("presets", help="list named presets")
    p.set_defaults(func=_cmd_presets)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalInstabilityError as exc:
        print(f"numerical guard failure: {exc}", file=sys.stderr)
        return 2
    except SqwsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
