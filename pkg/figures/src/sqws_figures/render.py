"""Build figures from the sweep harness's CSV files.

Five figure kinds cover the produced data sets:

* ``efficiency_curves`` - records.csv: efficiency vs omega, one line per
  gamma, one panel per target.
* ``heatmap_grid``     - heatmaps.csv: success probability over (gamma, t),
  one panel per omega.
* ``entropy_series``   - series/*.csv: entropy vs time, one panel per
  gamma, one line per (target, omega), a marker at each curve's peak.
* ``ts_vs_gamma``      - records.csv: entropy-peak time vs gamma, one line
  per (target, omega).
* ``metric_profile``   - profile.csv: eccentricity and degree centrality
  vs ring-lattice connectivity k.

All consumption happens through the documented CSV schemas; nothing here
imports the simulation package.
"""

from __future__ import annotations

import csv
import json
import os
import re
from dataclasses import dataclass, field

import matplotlib.pyplot as plt
import numpy as np

from .style import HEATMAP_CMAP, apply_style, color_for, marker_for

KINDS = ("efficiency_curves", "heatmap_grid", "entropy_series",
         "ts_vs_gamma", "metric_profile")

# figure kind consuming each named preset's output files
PRESET_FIGURE_KINDS = {
    "fig2-complete": "efficiency_curves",
    "fig2-hypercube": "efficiency_curves",
    "fig2-cycle": "efficiency_curves",
    "fig2-path": "efficiency_curves",
    "fig2-maze": "efficiency_curves",
    "fig2-tadpole": "efficiency_curves",
    "fig4-entropy": "entropy_series",
    "fig5-ts": "ts_vs_gamma",
    "fig6-lollipop": "efficiency_curves",
    "fig6-star": "efficiency_curves",
    "fig6-wheel": "efficiency_curves",
    "fig6-grid": "efficiency_curves",
    "fig6-pbt": "efficiency_curves",
    "fig6-smallworld": "efficiency_curves",
    "fig8-ring-metrics": "metric_profile",
    "fig9-ring": "efficiency_curves",  # per-k records, plus profile.csv
    "figA-complete": "heatmap_grid",
    "figA-hypercube": "heatmap_grid",
    "figA-cycle": "heatmap_grid",
    "demo": "efficiency_curves",
}
PRESET_FIGURE_KINDS.update({f"{k}-desk": v for k, v in PRESET_FIGURE_KINDS.items()
                            if f"{k}-desk" != k})


class RenderError(ValueError):
    """Bad figure spec, missing file, or schema mismatch."""


@dataclass
class FigureSpec:
    kind: str
    input: dict = field(default_factory=dict)
    output: str = "figure.svg"
    styling: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise RenderError(f"unknown figure kind '{self.kind}'")


def load_spec(path: str) -> FigureSpec:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise RenderError(f"spec {path}: {exc}") from exc
    if "kind" not in doc:
        raise RenderError(f"spec {path}: missing 'kind'")
    return FigureSpec(kind=doc["kind"], input=doc.get("input", {}),
                      output=doc.get("output", "figure.svg"),
                      styling=doc.get("styling", {}))


def default_spec(kind: str, output: str | None = None) -> FigureSpec:
    inputs = {
        "efficiency_curves": {"records": "records.csv"},
        "ts_vs_gamma": {"records": "records.csv"},
        "heatmap_grid": {"heatmaps": "heatmaps.csv"},
        "entropy_series": {"series_dir": "series"},
        "metric_profile": {"profile": "profile.csv"},
    }
    return FigureSpec(kind=kind, input=inputs[kind],
                      output=output or f"{kind}.svg")


def _read_csv(path: str, required: tuple[str, ...]) -> dict[str, np.ndarray]:
    if not os.path.exists(path):
        raise RenderError(f"input file not found: {path}")
    with open(path) as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise RenderError(f"{path}: empty input")
        for col in required:
            if col not in reader.fieldnames:
                raise RenderError(f"{path}: missing column '{col}'")
        rows = list(reader)
    if not rows:
        raise RenderError(f"{path}: empty input (no data rows)")
    out: dict[str, np.ndarray] = {}
    for col in reader.fieldnames:
        vals = [r[col] for r in rows]
        try:
            out[col] = np.array([float(v) for v in vals])
        except ValueError:
            out[col] = np.array(vals)
    return out


def _ordered_unique(values) -> list:
    seen: list = []
    for v in values:
        if v not in seen:
            seen.append(v)
    return seen


SERIES_NAME = re.compile(r"^(?P<target>.+)_w(?P<omega>[^_]+)_g(?P<gamma>[^_]+)\.csv$")


def _build_efficiency_curves(spec: FigureSpec, in_dir: str):
    data = _read_csv(os.path.join(in_dir, spec.input.get("records", "records.csv")),
                     ("target", "omega", "gamma", "efficiency"))
    targets = _ordered_unique(data["target"])
    gammas = _ordered_unique(data["gamma"])
    fig, axes = plt.subplots(1, len(targets), squeeze=False,
                             figsize=(4.2 * len(targets), 3.4), sharey=True)
    for ax, target in zip(axes[0], targets):
        sel = data["target"] == target
        for gi, gamma in enumerate(gammas):
            mask = sel & (data["gamma"] == gamma)
            order = np.argsort(data["omega"][mask])
            ax.plot(data["omega"][mask][order], data["efficiency"][mask][order],
                    color=color_for(gi), marker=marker_for(gi),
                    label=f"gamma={gamma:g}")
        ax.set_xlabel(spec.styling.get("xlabel", "omega"))
        ax.set_title(str(target))
        ax.set_xlim(-0.02, 1.02)
        if spec.styling.get("logy"):
            ax.set_yscale("log")
    axes[0][0].set_ylabel(spec.styling.get("ylabel", "transfer efficiency"))
    axes[0][-1].legend(loc="best")
    return fig


def _build_heatmap_grid(spec: FigureSpec, in_dir: str):
    data = _read_csv(os.path.join(in_dir, spec.input.get("heatmaps", "heatmaps.csv")),
                     ("omega", "gamma", "t", "p"))
    omegas = _ordered_unique(data["omega"])
    gammas = _ordered_unique(data["gamma"])
    times = _ordered_unique(data["t"])
    ncols = min(4, len(omegas))
    nrows = -(-len(omegas) // ncols)
    fig, axes = plt.subplots(nrows, ncols, squeeze=False,
                             figsize=(3.3 * ncols, 2.6 * nrows),
                             sharex=True, sharey=True)
    vmax = float(data["p"].max())
    mesh = None
    for wi, omega in enumerate(omegas):
        ax = axes[wi // ncols][wi % ncols]
        grid = np.empty((len(gammas), len(times)))
        sel = data["omega"] == omega
        for gi, gamma in enumerate(gammas):
            mask = sel & (data["gamma"] == gamma)
            order = np.argsort(data["t"][mask])
            grid[gi] = data["p"][mask][order]
        mesh = ax.imshow(grid, aspect="auto", origin="lower", cmap=HEATMAP_CMAP,
                         vmin=0.0, vmax=vmax,
                         extent=(times[0], times[-1], -0.5, len(gammas) - 0.5))
        ax.set_yticks(range(len(gammas)), [f"{g:g}" for g in gammas])
        ax.set_title(f"omega={omega:g}")
        ax.grid(False)
    for wi in range(len(omegas), nrows * ncols):
        axes[wi // ncols][wi % ncols].set_axis_off()
    for ax in axes[-1]:
        ax.set_xlabel(spec.styling.get("xlabel", "t"))
    for row in axes:
        row[0].set_ylabel(spec.styling.get("ylabel", "gamma"))
    fig.colorbar(mesh, ax=[a for row in axes for a in row],
                 label="success probability", shrink=0.8)
    return fig


def _load_series_dir(path: str) -> list[dict]:
    if not os.path.isdir(path):
        raise RenderError(f"series directory not found: {path}")
    entries = []
    for name in sorted(os.listdir(path)):
        m = SERIES_NAME.match(name)
        if not m:
            continue
        data = _read_csv(os.path.join(path, name),
                         ("t", "sink_pop", "target_pop", "entropy", "coherence"))
        entries.append({"target": m["target"], "omega": float(m["omega"]),
                        "gamma": float(m["gamma"]), "data": data})
    if not entries:
        raise RenderError(f"{path}: empty input (no series files)")
    return entries


def _build_entropy_series(spec: FigureSpec, in_dir: str):
    entries = _load_series_dir(os.path.join(in_dir, spec.input.get("series_dir", "series")))
    gammas = sorted({e["gamma"] for e in entries})
    keys = sorted({(e["target"], e["omega"]) for e in entries})
    ncols = min(3, len(gammas))
    nrows = -(-len(gammas) // ncols)
    fig, axes = plt.subplots(nrows, ncols, squeeze=False,
                             figsize=(3.6 * ncols, 2.8 * nrows), sharex=True)
    for gi, gamma in enumerate(gammas):
        ax = axes[gi // ncols][gi % ncols]
        for ki, key in enumerate(keys):
            ent = next((e for e in entries
                        if (e["target"], e["omega"]) == key and e["gamma"] == gamma), None)
            if ent is None:
                continue
            t, s = ent["data"]["t"], ent["data"]["entropy"]
            label = (f"{key[0]}, omega={key[1]:g}" if len({k[0] for k in keys}) > 1
                     else f"omega={key[1]:g}")
            ax.plot(t, s, color=color_for(ki), label=label)
            peak = int(np.argmax(s))
            ax.plot([t[peak]], [s[peak]], color=color_for(ki),
                    marker=marker_for(ki), markersize=7, zorder=5)
        ax.set_title(f"gamma={gamma:g}")
    for wi in range(len(gammas), nrows * ncols):
        axes[wi // ncols][wi % ncols].set_axis_off()
    for ax in axes[-1]:
        ax.set_xlabel(spec.styling.get("xlabel", "t"))
    for row in axes:
        row[0].set_ylabel(spec.styling.get("ylabel", "entropy"))
    axes[0][0].legend(loc="best")
    return fig


def _build_ts_vs_gamma(spec: FigureSpec, in_dir: str):
    data = _read_csv(os.path.join(in_dir, spec.input.get("records", "records.csv")),
                     ("target", "omega", "gamma", "entropy_peak_time"))
    keys = _ordered_unique(list(zip(data["target"], data["omega"])))
    fig, ax = plt.subplots(figsize=(4.6, 3.4))
    multi_target = len({k[0] for k in keys}) > 1
    for ki, (target, omega) in enumerate(keys):
        mask = (data["target"] == target) & (data["omega"] == omega)
        order = np.argsort(data["gamma"][mask])
        label = f"{target}, omega={omega:g}" if multi_target else f"omega={omega:g}"
        ax.plot(data["gamma"][mask][order], data["entropy_peak_time"][mask][order],
                color=color_for(ki), marker=marker_for(ki), label=label)
    ax.set_xlabel(spec.styling.get("xlabel", "gamma"))
    ax.set_ylabel(spec.styling.get("ylabel", "time of entropy peak"))
    if spec.styling.get("logx"):
        ax.set_xscale("log")
    ax.legend(loc="best")
    return fig


def _build_metric_profile(spec: FigureSpec, in_dir: str):
    data = _read_csv(os.path.join(in_dir, spec.input.get("profile", "profile.csv")),
                     ("k", "eccentricity", "degree_centrality"))
    order = np.argsort(data["k"])
    fig, ax = plt.subplots(figsize=(4.6, 3.4))
    ax.plot(data["k"][order], data["eccentricity"][order], color=color_for(0),
            marker=marker_for(0), label="eccentricity")
    ax.set_xlabel(spec.styling.get("xlabel", "k"))
    ax.set_ylabel("eccentricity", color=color_for(0))
    twin = ax.twinx()
    twin.plot(data["k"][order], data["degree_centrality"][order], color=color_for(1),
              marker=marker_for(1), label="degree centrality")
    twin.set_ylabel("degree centrality", color=color_for(1))
    twin.grid(False)
    lines = ax.get_lines() + twin.get_lines()
    ax.legend(lines, [ln.get_label() for ln in lines], loc="center right")
    return fig


_BUILDERS = {
    "efficiency_curves": _build_efficiency_curves,
    "heatmap_grid": _build_heatmap_grid,
    "entropy_series": _build_entropy_series,
    "ts_vs_gamma": _build_ts_vs_gamma,
    "metric_profile": _build_metric_profile,
}


def build_figure(spec: FigureSpec, in_dir: str):
    """Construct the matplotlib figure for a spec (no file output)."""
    apply_style()
    builder = _BUILDERS[spec.kind]
    fig = builder(spec, in_dir)
    if "title" in spec.styling:
        fig.suptitle(spec.styling["title"])
    return fig


def render(spec: FigureSpec, in_dir: str, out_dir: str, raster: bool = False) -> str:
    """Render a spec to a vector image (or PNG with raster=True).

    Output bytes are deterministic for fixed inputs: styling is pinned and
    timestamp metadata is stripped.
    """
    fig = build_figure(spec, in_dir)
    os.makedirs(out_dir, exist_ok=True)
    out_path = os.path.join(out_dir, spec.output)
    if raster and out_path.endswith(".svg"):
        out_path = out_path[:-4] + ".png"
    root, ext = os.path.splitext(out_path)
    if ext not in (".svg", ".png", ".pdf"):
        out_path = root + ".svg"
    if out_path.endswith(".svg"):
        fig.savefig(out_path, format="svg", metadata={"Date": None})
    elif out_path.endswith(".pdf"):
        fig.savefig(out_path, format="pdf", metadata={"CreationDate": None})
    else:
        fig.savefig(out_path, format="png")
    plt.close(fig)
    return out_path
