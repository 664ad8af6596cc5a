"""Declarative sweep harness: resolve configs into (graph, target, omega,
gamma) grids, run trajectories in a worker pool, and emit CSV/JSON records.

Output files
------------
records.csv    one row per grid point, fixed column order, 12 significant
               digits; byte-identical across worker counts for a fixed
               config and seed (wall times live in the manifest).
series/<id>.csv per-point time series (t, sink_pop, target_pop, entropy,
               coherence) when series recording is on.
heatmaps.csv   long-format (omega, gamma, t, p) success probabilities of
               sink-free grids.
profile.csv    (k, eccentricity, degree_centrality) for ring-lattice studies.
metrics.csv    topology metric table (one row per graph/target pair).
manifest.json  config echo, library versions, per-point wall times.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
import scipy

from . import __version__ as _pkg_version
from .errors import ConfigError, NumericalInstabilityError
from .graphs import (
    FamilySpec,
    Graph,
    TargetSelector,
    degree_centrality,
    density,
    eccentricity,
    generate,
    resolve_target,
    ring_lattice_profile,
)
from .observables import entropy_peak_time, entropy_series, transfer_efficiency
from .operators import JUMP_CONVENTIONS, SearchInstance
from .propagate import IntegratorConfig, integrate

DEFAULT_OMEGAS = tuple(round(0.1 * i, 1) for i in range(11))
DEFAULT_GAMMAS = (0.0, 0.1, 0.3, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 30.0)


@dataclass
class SweepConfig:
    """One experiment: a graph, its targets, and the parameter grids."""

    graph: FamilySpec
    targets: list[TargetSelector]
    omegas: tuple[float, ...] = DEFAULT_OMEGAS
    gammas: tuple[float, ...] = DEFAULT_GAMMAS
    sink_rate: float = 1.0
    t_max: float | None = None  # None resolves to 10 * graph size
    dt: float | None = None
    samples: int = 1024
    method: str = "rk4_fixed"
    record_series: bool = False
    seed: int = 0
    jump_convention: str = "all_entries"
    sqrt_rates: bool = True

    def __post_init__(self):
        if not self.targets:
            raise ConfigError("targets: must list at least one selector")
        if not self.omegas:
            raise ConfigError("omegas: grid must be non-empty")
        if not self.gammas:
            raise ConfigError("gammas: grid must be non-empty")
        for w in self.omegas:
            if not 0.0 <= w <= 1.0:
                raise ConfigError(f"omegas: value {w} outside [0,1]")
        for g in self.gammas:
            if g < 0.0:
                raise ConfigError(f"gammas: value {g} is negative")
        if self.sink_rate < 0.0:
            raise ConfigError(f"sink_rate: {self.sink_rate} is negative")
        if self.t_max is not None and self.t_max <= 0.0:
            raise ConfigError(f"t_max: {self.t_max} must be positive")
        if self.samples < 2:
            raise ConfigError(f"samples: {self.samples} must be >= 2")
        if self.jump_convention not in JUMP_CONVENTIONS:
            raise ConfigError(f"jump_convention: unknown value '{self.jump_convention}'")


@dataclass
class ResultRecord:
    """One completed grid point; column order below is the CSV schema."""

    graph_id: str
    graph_seed: int
    target: str
    target_index: int
    omega: float
    gamma: float
    sink_rate: float
    t_max: float
    dt: float
    efficiency: float
    peak_success: float
    peak_success_time: float
    entropy_peak_time: float
    entropy_peak: float
    final_coherence: float
    max_trace_drift: float
    min_eigenvalue: float
    error: str = ""
    wall_time: float = 0.0  # manifest only, never in records.csv

CSV_COLUMNS = [f.name for f in dataclasses.fields(ResultRecord) if f.name != "wall_time"]


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def point_id(target: str, omega: float, gamma: float) -> str:
    return f"{target}_w{omega:g}_g{gamma:g}"


def resolved_t_max(cfg: SweepConfig, g: Graph) -> float:
    return cfg.t_max if cfg.t_max is not None else 10.0 * g.n


def _point_task(payload: dict) -> dict:
    """Worker entry: run one grid point from a plain-dict description."""
    spec = FamilySpec(payload["family"], payload["params"], payload["graph_seed"])
    g = generate(spec)
    target_index = payload["target_index"]
    t_max = payload["t_max"]
    started = time.perf_counter()
    out = {
        "index": payload["index"],
        "graph_id": spec.id_string(),
        "graph_seed": spec.seed,
        "target": payload["target"],
        "target_index": target_index,
        "omega": payload["omega"],
        "gamma": payload["gamma"],
        "sink_rate": payload["sink_rate"],
        "t_max": t_max,
        "dt": math.nan,
        "efficiency": math.nan,
        "peak_success": math.nan,
        "peak_success_time": math.nan,
        "entropy_peak_time": math.nan,
        "entropy_peak": math.nan,
        "final_coherence": math.nan,
        "max_trace_drift": math.nan,
        "min_eigenvalue": math.nan,
        "error": "",
        "series": None,
    }
    try:
        inst = SearchInstance(
            g, target_index, omega=payload["omega"], gamma=payload["gamma"],
            sink_rate=payload["sink_rate"], jump_convention=payload["jump_convention"],
            sqrt_rates=payload["sqrt_rates"])
        cfg = IntegratorConfig(t_max=t_max, dt=payload["dt"], samples=payload["samples"],
                               method=payload["method"])
        traj = integrate(inst, cfg)
        k_peak = int(np.argmax(traj.target_pop))
        t_s, s_max = entropy_peak_time(entropy_series(traj))
        out.update(
            dt=traj.metadata["dt"],
            efficiency=transfer_efficiency(traj),
            peak_success=float(traj.target_pop[k_peak]),
            peak_success_time=float(traj.times[k_peak]),
            entropy_peak_time=t_s,
            entropy_peak=s_max,
            final_coherence=float(traj.coherence[-1]),
            max_trace_drift=traj.diagnostics["max_trace_drift"],
            min_eigenvalue=traj.diagnostics["min_eigenvalue"],
        )
        if payload["want_series"]:
            out["series"] = np.column_stack(
                (traj.times, traj.sink_pop, traj.target_pop, traj.entropy, traj.coherence))
    except NumericalInstabilityError as exc:
        out["error"] = str(exc)
    out["wall_time"] = time.perf_counter() - started
    return out


def _build_tasks(cfg: SweepConfig, want_series: bool) -> list[dict]:
    spec = replace(cfg.graph, seed=cfg.seed)
    g = generate(spec)  # validates family params up front
    t_max = resolved_t_max(cfg, g)
    tasks = []
    for target in cfg.targets:
        tindex = resolve_target(g, target)
        for omega in cfg.omegas:
            for gamma in cfg.gammas:
                tasks.append({
                    "index": len(tasks),
                    "family": spec.family,
                    "params": spec.params,
                    "graph_seed": spec.seed,
                    "target": target.name(),
                    "target_index": tindex,
                    "omega": float(omega),
                    "gamma": float(gamma),
                    "sink_rate": float(cfg.sink_rate),
                    "t_max": float(t_max),
                    "dt": cfg.dt,
                    "samples": cfg.samples,
                    "method": cfg.method,
                    "jump_convention": cfg.jump_convention,
                    "sqrt_rates": cfg.sqrt_rates,
                    "want_series": want_series,
                })
    return tasks


def _run_tasks(tasks: list[dict], workers: int) -> list[dict]:
    if workers <= 1 or len(tasks) <= 1:
        results = [_point_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_point_task, tasks))
    results.sort(key=lambda r: r["index"])
    return results


def _to_record(raw: dict) -> ResultRecord:
    keep = {f.name: raw[f.name] for f in dataclasses.fields(ResultRecord)}
    return ResultRecord(**keep)


def run_point(cfg: SweepConfig, target: TargetSelector,
              omega: float, gamma: float) -> ResultRecord:
    """Run a single grid point of a config; deterministic given seed and dt."""
    one = replace(cfg, targets=[target], omegas=(omega,), gammas=(gamma,))
    tasks = _build_tasks(one, want_series=False)
    return _to_record(_run_tasks(tasks, workers=1)[0])


def run_sweep(cfg: SweepConfig, workers: int = 1,
              collect_series: dict | None = None) -> list[ResultRecord]:
    """Run the full targets x omegas x gammas grid.

    Point failures are recorded (error column) without aborting the sweep.
    Output order is (target, omega, gamma) regardless of scheduling. Pass
    a dict as ``collect_series`` to receive point-id -> series array.
    """
    want_series = cfg.record_series or collect_series is not None
    tasks = _build_tasks(cfg, want_series)
    results = _run_tasks(tasks, workers)
    if collect_series is not None:
        for raw in results:
            if raw["series"] is not None:
                collect_series[point_id(raw["target"], raw["omega"], raw["gamma"])] = raw["series"]
    return [_to_record(raw) for raw in results]


@dataclass
class NoSinkGrid:
    """Success probabilities P(omega, gamma, t) of a sink-free sweep."""

    omegas: tuple[float, ...]
    gammas: tuple[float, ...]
    times: np.ndarray
    p: np.ndarray  # shape (len(omegas), len(gammas), len(times))


def run_no_sink_grid(cfg: SweepConfig, workers: int = 1) -> NoSinkGrid:
    """Target-vertex population over time for every (omega, gamma) point."""
    if cfg.sink_rate != 0.0:
        raise ConfigError(f"sink_rate: no-sink grid requires 0, got {cfg.sink_rate}")
    if len(cfg.targets) != 1:
        raise ConfigError("targets: no-sink grid expects exactly one target")
    tasks = _build_tasks(cfg, want_series=True)
    results = _run_tasks(tasks, workers)
    times = None
    p = np.full((len(cfg.omegas), len(cfg.gammas), cfg.samples), np.nan)
    for raw in results:
        if raw["error"]:
            raise NumericalInstabilityError(raw["error"])
        iw = cfg.omegas.index(raw["omega"])
        ig = cfg.gammas.index(raw["gamma"])
        series = raw["series"]
        times = series[:, 0]
        p[iw, ig, :] = series[:, 2]
    return NoSinkGrid(tuple(cfg.omegas), tuple(cfg.gammas), times, p)


def ring_lattice_study(n: int, ks, omegas=DEFAULT_OMEGAS, gammas=DEFAULT_GAMMAS,
                       t_max: float | None = None, seed: int = 0,
                       workers: int = 1, samples: int = 1024):
    """One sweep per ring-lattice connectivity k, plus the metric profile."""
    profile = ring_lattice_profile(n, ks)
    sweeps = {}
    for k in ks:
        cfg = SweepConfig(
            graph=FamilySpec("ring_lattice", {"n": n, "k": int(k)}),
            targets=[TargetSelector("index", 0)],
            omegas=tuple(omegas), gammas=tuple(gammas),
            t_max=t_max if t_max is not None else 10.0 * n,
            seed=seed, samples=samples)
        sweeps[int(k)] = run_sweep(cfg, workers=workers)
    return sweeps, profile


TABLE_METRIC_SPECS: list[tuple[FamilySpec, list[TargetSelector]]] = [
    (FamilySpec("complete", {"n": 64}), [TargetSelector("index", 0)]),
    (FamilySpec("cycle", {"n": 64}), [TargetSelector("index", 0)]),
    (FamilySpec("hypercube", {"d": 6}), [TargetSelector("index", 0)]),
    (FamilySpec("grid", {"rows": 9, "cols": 9}),
     [TargetSelector("named", "center"), TargetSelector("named", "border")]),
    (FamilySpec("star", {"n": 64}),
     [TargetSelector("named", "center"), TargetSelector("named", "border")]),
    (FamilySpec("wheel", {"n": 64}),
     [TargetSelector("named", "center"), TargetSelector("named", "border")]),
    (FamilySpec("perfect_binary_tree", {"depth": 5}),
     [TargetSelector("named", "root"), TargetSelector("named", "depth", depth=3),
      TargetSelector("named", "leaf")]),
    (FamilySpec("path", {"n": 65}),
     [TargetSelector("named", "center"), TargetSelector("named", "border")]),
    (FamilySpec("lollipop", {"m": 32, "n": 32}),
     [TargetSelector("named", "complete"), TargetSelector("named", "shared"),
      TargetSelector("named", "path")]),
    (FamilySpec("tadpole", {"m": 32, "n": 32}),
     [TargetSelector("named", "cycle"), TargetSelector("named", "shared"),
      TargetSelector("named", "path")]),
    (FamilySpec("glued_small_world", {}, seed=1),
     [TargetSelector("named", "HC"), TargetSelector("named", "IC"),
      TargetSelector("named", "LC")]),
    (FamilySpec("maze", {"rows": 9, "cols": 9}, seed=1),
     [TargetSelector("named", "exit")]),
]


def table1_report(specs=None) -> list[dict]:
    """Density plus target degree centrality and eccentricity per graph."""
    rows = []
    for spec, targets in (specs if specs is not None else TABLE_METRIC_SPECS):
        g = generate(spec)
        for sel in targets:
            v = resolve_target(g, sel)
            rows.append({
                "graph_id": spec.id_string(),
                "size": g.n,
                "density": density(g),
                "target": sel.name(),
                "target_index": v,
                "degree_centrality": degree_centrality(g, v),
                "eccentricity": eccentricity(g, v),
            })
    return rows


def metrics_to_text(rows: list[dict]) -> str:
    header = ("graph", "size", "density", "target", "centrality", "eccentricity")
    table = [header] + [
        (r["graph_id"], str(r["size"]), f"{r['density']:.4f}", r["target"],
         f"{r['degree_centrality']:.4f}", str(r["eccentricity"]))
        for r in rows
    ]
    widths = [max(len(row[c]) for row in table) for c in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in table]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# file output

def write_records_csv(records: list[ResultRecord], path: str):
    with open(path, "w") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for rec in records:
            fh.write(",".join(_fmt(getattr(rec, c)) for c in CSV_COLUMNS) + "\n")


def write_series_csv(series: np.ndarray, path: str):
    with open(path, "w") as fh:
        fh.write("t,sink_pop,target_pop,entropy,coherence\n")
        for row in series:
            fh.write(",".join(_fmt(float(x)) for x in row) + "\n")


def write_heatmaps_csv(grid: NoSinkGrid, path: str):
    with open(path, "w") as fh:
        fh.write("omega,gamma,t,p\n")
        for iw, omega in enumerate(grid.omegas):
            for ig, gamma in enumerate(grid.gammas):
                for it, t in enumerate(grid.times):
                    fh.write(f"{omega:.12g},{gamma:.12g},{t:.12g},{grid.p[iw, ig, it]:.12g}\n")


def write_profile_csv(profile, path: str):
    with open(path, "w") as fh:
        fh.write("k,eccentricity,degree_centrality\n")
        for k, ecc, cen in profile:
            fh.write(f"{k},{ecc},{cen:.12g}\n")


def write_metrics_csv(rows: list[dict], path: str):
    cols = ("graph_id", "size", "density", "target", "target_index",
            "degree_centrality", "eccentricity")
    with open(path, "w") as fh:
        fh.write(",".join(cols) + "\n")
        for r in rows:
            fh.write(",".join(_fmt(r[c]) for c in cols) + "\n")


def write_manifest(path: str, command: str, cfg_dict: dict, workers: int,
                   wall_time: float, points: list[dict] | None = None):
    doc = {
        "command": command,
        "config": cfg_dict,
        "versions": {"sqws": _pkg_version, "numpy": np.__version__, "scipy": scipy.__version__},
        "workers": workers,
        "wall_time_total": wall_time,
    }
    if points is not None:
        doc["points"] = points
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# JSON config round-trip

def config_to_dict(cfg: SweepConfig) -> dict:
    return {
        "graph": {"family": cfg.graph.family, "params": cfg.graph.params,
                  "seed": cfg.graph.seed},
        "targets": [
            {"mode": t.mode, "value": t.value, **({"depth": t.depth} if t.depth is not None else {})}
            for t in cfg.targets
        ],
        "omegas": list(cfg.omegas),
        "gammas": list(cfg.gammas),
        "sink_rate": cfg.sink_rate,
        "t_max": cfg.t_max,
        "integrator": {"dt": cfg.dt, "samples": cfg.samples, "method": cfg.method},
        "record_series": cfg.record_series,
        "seed": cfg.seed,
        "jump_convention": cfg.jump_convention,
        "sqrt_rates": cfg.sqrt_rates,
    }


def config_from_dict(doc: dict) -> SweepConfig:
    try:
        gdoc = doc["graph"]
        graph = FamilySpec(gdoc["family"], dict(gdoc.get("params", {})),
                           int(gdoc.get("seed", 0)))
        targets = [
            TargetSelector(t["mode"], t["value"], t.get("depth"))
            for t in doc["targets"]
        ]
        integ = doc.get("integrator", {})
        return SweepConfig(
            graph=graph,
            targets=targets,
            omegas=tuple(doc.get("omegas", DEFAULT_OMEGAS)),
            gammas=tuple(doc.get("gammas", DEFAULT_GAMMAS)),
            sink_rate=float(doc.get("sink_rate", 1.0)),
            t_max=doc.get("t_max"),
            dt=integ.get("dt"),
            samples=int(integ.get("samples", 1024)),
            method=integ.get("method", "rk4_fixed"),
            record_series=bool(doc.get("record_series", False)),
            seed=int(doc.get("seed", 0)),
            jump_convention=doc.get("jump_convention", "all_entries"),
            sqrt_rates=bool(doc.get("sqrt_rates", True)),
        )
    except KeyError as exc:
        raise ConfigError(f"config missing required field {exc}") from exc


def default_workers() -> int:
    env = os.environ.get("SQWS_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ConfigError(f"SQWS_WORKERS: not an integer: '{env}'") from exc
    return max(1, min(8, os.cpu_count() or 1))
