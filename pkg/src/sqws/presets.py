"""Named experiment presets, one per reproduced figure, plus desk-scale
variants (roughly halved vertex count, t = 10N) for quick runs.
"""

from __future__ import annotations

from .experiments import DEFAULT_GAMMAS, DEFAULT_OMEGAS, SweepConfig, TABLE_METRIC_SPECS
from .errors import ConfigError
from .graphs import FamilySpec, TargetSelector

_V0 = [TargetSelector("index", 0)]
_CB = [TargetSelector("named", "center"), TargetSelector("named", "border")]
_ENTROPY_OMEGAS = (0.0, 0.1, 0.5, 1.0)
_ENTROPY_GAMMAS = (0.0, 0.5, 1.0, 2.0, 5.0)


def _sweep(family, params, targets, t_max, seed=0, **kw) -> SweepConfig:
    return SweepConfig(graph=FamilySpec(family, params, seed), targets=list(targets),
                       t_max=t_max, seed=seed, **kw)


PRESETS: dict[str, dict] = {
    # efficiency-vs-omega sweeps, one line per gamma (sink on)
    "fig2-complete": dict(kind="sweep", describe="complete graph K_64, t=640",
                          build=lambda: _sweep("complete", {"n": 64}, _V0, 640.0)),
    "fig2-hypercube": dict(kind="sweep", describe="6-dimensional hypercube, t=640",
                           build=lambda: _sweep("hypercube", {"d": 6}, _V0, 640.0)),
    "fig2-cycle": dict(kind="sweep", describe="cycle C_64, t=640",
                       build=lambda: _sweep("cycle", {"n": 64}, _V0, 640.0)),
    "fig2-path": dict(kind="sweep", describe="path P_65, center+border targets, t=650",
                      build=lambda: _sweep("path", {"n": 65}, _CB, 650.0)),
    "fig2-maze": dict(kind="sweep", describe="9x9 DFS maze, exit target, t=810",
                      build=lambda: _sweep("maze", {"rows": 9, "cols": 9},
                                           [TargetSelector("named", "exit")], 810.0, seed=1)),
    "fig2-tadpole": dict(kind="sweep", describe="tadpole T_{32,32}, three targets, t=640",
                         build=lambda: _sweep("tadpole", {"m": 32, "n": 32},
                                              [TargetSelector("named", "cycle"),
                                               TargetSelector("named", "shared"),
                                               TargetSelector("named", "path")], 640.0)),
    # entropy traces and entropy-peak times
    "fig4-entropy": dict(kind="sweep", describe="K_64 entropy series per (omega, gamma)",
                         build=lambda: _sweep("complete", {"n": 64}, _V0, 640.0,
                                              omegas=_ENTROPY_OMEGAS, gammas=_ENTROPY_GAMMAS,
                                              record_series=True)),
    "fig5-ts": dict(kind="sweep", describe="K_64 entropy-peak time vs gamma",
                    build=lambda: _sweep("complete", {"n": 64}, _V0, 640.0,
                                         omegas=_ENTROPY_OMEGAS)),
    # appendix sweeps on non-vertex-transitive graphs
    "fig6-lollipop": dict(kind="sweep", describe="lollipop L_{32,32}, three targets, t=640",
                          build=lambda: _sweep("lollipop", {"m": 32, "n": 32},
                                               [TargetSelector("named", "complete"),
                                                TargetSelector("named", "shared"),
                                                TargetSelector("named", "path")], 640.0)),
    "fig6-star": dict(kind="sweep", describe="star graph on 64 vertices, t=640",
                      build=lambda: _sweep("star", {"n": 64}, _CB, 640.0)),
    "fig6-wheel": dict(kind="sweep", describe="wheel graph on 64 vertices, t=640",
                       build=lambda: _sweep("wheel", {"n": 64}, _CB, 640.0)),
    "fig6-grid": dict(kind="sweep", describe="9x9 grid, center+border targets, t=810",
                      build=lambda: _sweep("grid", {"rows": 9, "cols": 9}, _CB, 810.0)),
    "fig6-pbt": dict(kind="sweep", describe="perfect binary tree depth 5, t=630",
                     build=lambda: _sweep("perfect_binary_tree", {"depth": 5},
                                          [TargetSelector("named", "root"),
                                           TargetSelector("named", "depth", depth=3),
                                           TargetSelector("named", "leaf")], 630.0)),
    "fig6-smallworld": dict(kind="sweep", describe="three glued small-world components, t=660",
                            build=lambda: _sweep("glued_small_world", {},
                                                 [TargetSelector("named", "HC"),
                                                  TargetSelector("named", "IC"),
                                                  TargetSelector("named", "LC")], 660.0, seed=1)),
    # ring-lattice transition and its metric profile
    "fig8-ring-metrics": dict(kind="profile", describe="ring-lattice metrics vs k, N=32",
                              build=lambda: {"n": 32, "ks": list(range(2, 33, 2))}),
    "fig9-ring": dict(kind="ring_lattice", describe="ring-lattice sweeps, N=32, t=320",
                      build=lambda: {"n": 32, "ks": list(range(2, 33, 2)),
                                     "omegas": list(DEFAULT_OMEGAS),
                                     "gammas": list(DEFAULT_GAMMAS),
                                     "t_max": 320.0, "seed": 0, "samples": 1024}),
    # sink-free success-probability heatmaps
    "figA-complete": dict(kind="no_sink", describe="no-sink heatmap grid on K_64",
                          build=lambda: _sweep("complete", {"n": 64}, _V0, 640.0, sink_rate=0.0)),
    "figA-hypercube": dict(kind="no_sink", describe="no-sink heatmap grid on the 6-hypercube",
                           build=lambda: _sweep("hypercube", {"d": 6}, _V0, 640.0, sink_rate=0.0)),
    "figA-cycle": dict(kind="no_sink", describe="no-sink heatmap grid on C_64",
                       build=lambda: _sweep("cycle", {"n": 64}, _V0, 640.0, sink_rate=0.0)),
    # topology metric table
    "table-metrics": dict(kind="metrics", describe="density/centrality/eccentricity table",
                          build=lambda: TABLE_METRIC_SPECS),
    # smoke-scale preset for demos and determinism checks
    "demo": dict(kind="sweep", describe="tiny cycle sweep for smoke tests",
                 build=lambda: _sweep("cycle", {"n": 8}, _V0, 40.0,
                                      omegas=(0.0, 0.1, 1.0), gammas=(0.0, 1.0),
                                      samples=256)),
}

_DESK: dict[str, dict] = {
    "fig2-complete-desk": dict(kind="sweep", describe="desk-scale K_32, t=320",
                               build=lambda: _sweep("complete", {"n": 32}, _V0, 320.0)),
    "fig2-hypercube-desk": dict(kind="sweep", describe="desk-scale 5-hypercube, t=320",
                                build=lambda: _sweep("hypercube", {"d": 5}, _V0, 320.0)),
    "fig2-cycle-desk": dict(kind="sweep", describe="desk-scale C_32, t=320",
                            build=lambda: _sweep("cycle", {"n": 32}, _V0, 320.0)),
    "fig2-path-desk": dict(kind="sweep", describe="desk-scale P_33, t=330",
                           build=lambda: _sweep("path", {"n": 33}, _CB, 330.0)),
    "fig2-maze-desk": dict(kind="sweep", describe="desk-scale 6x6 maze, t=360",
                           build=lambda: _sweep("maze", {"rows": 6, "cols": 6},
                                                [TargetSelector("named", "exit")], 360.0, seed=1)),
    "fig2-tadpole-desk": dict(kind="sweep", describe="desk-scale T_{16,16}, t=320",
                              build=lambda: _sweep("tadpole", {"m": 16, "n": 16},
                                                   [TargetSelector("named", "cycle"),
                                                    TargetSelector("named", "shared"),
                                                    TargetSelector("named", "path")], 320.0)),
    "fig4-entropy-desk": dict(kind="sweep", describe="desk-scale K_32 entropy series",
                              build=lambda: _sweep("complete", {"n": 32}, _V0, 320.0,
                                                   omegas=_ENTROPY_OMEGAS,
                                                   gammas=_ENTROPY_GAMMAS, record_series=True)),
    "fig5-ts-desk": dict(kind="sweep", describe="desk-scale K_32 entropy-peak times",
                         build=lambda: _sweep("complete", {"n": 32}, _V0, 320.0,
                                              omegas=_ENTROPY_OMEGAS)),
    "fig6-lollipop-desk": dict(kind="sweep", describe="desk-scale L_{16,16}, t=320",
                               build=lambda: _sweep("lollipop", {"m": 16, "n": 16},
                                                    [TargetSelector("named", "complete"),
                                                     TargetSelector("named", "shared"),
                                                     TargetSelector("named", "path")], 320.0)),
    "fig6-star-desk": dict(kind="sweep", describe="desk-scale star on 32 vertices",
                           build=lambda: _sweep("star", {"n": 32}, _CB, 320.0)),
    "fig6-wheel-desk": dict(kind="sweep", describe="desk-scale wheel on 32 vertices",
                            build=lambda: _sweep("wheel", {"n": 32}, _CB, 320.0)),
    "fig6-grid-desk": dict(kind="sweep", describe="desk-scale 6x6 grid, t=360",
                           build=lambda: _sweep("grid", {"rows": 6, "cols": 6}, _CB, 360.0)),
    "fig6-pbt-desk": dict(kind="sweep", describe="desk-scale binary tree depth 4",
                          build=lambda: _sweep("perfect_binary_tree", {"depth": 4},
                                               [TargetSelector("named", "root"),
                                                TargetSelector("named", "depth", depth=2),
                                                TargetSelector("named", "leaf")], 310.0)),
    "fig6-smallworld-desk": dict(kind="sweep", describe="desk-scale glued small-world (3x11)",
                                 build=lambda: _sweep("glued_small_world",
                                                      {"comp_size": 11, "ks": (6, 4, 3)},
                                                      [TargetSelector("named", "HC"),
                                                       TargetSelector("named", "IC"),
                                                       TargetSelector("named", "LC")],
                                                      330.0, seed=1)),
    "fig9-ring-desk": dict(kind="ring_lattice", describe="desk-scale ring lattice, N=16",
                           build=lambda: {"n": 16, "ks": [2, 4, 6, 8, 16],
                                          "omegas": list(DEFAULT_OMEGAS),
                                          "gammas": list(DEFAULT_GAMMAS),
                                          "t_max": 160.0, "seed": 0, "samples": 1024}),
    "figA-complete-desk": dict(kind="no_sink", describe="desk-scale no-sink grid on K_32",
                               build=lambda: _sweep("complete", {"n": 32}, _V0, 320.0,
                                                    sink_rate=0.0)),
    "figA-hypercube-desk": dict(kind="no_sink", describe="desk-scale no-sink grid, 5-hypercube",
                                build=lambda: _sweep("hypercube", {"d": 5}, _V0, 320.0,
                                                     sink_rate=0.0)),
    "figA-cycle-desk": dict(kind="no_sink", describe="desk-scale no-sink grid on C_32",
                            build=lambda: _sweep("cycle", {"n": 32}, _V0, 320.0,
                                                 sink_rate=0.0)),
}

PRESETS.update(_DESK)


def preset_names(kind: str | None = None) -> list[str]:
    return sorted(n for n, p in PRESETS.items() if kind is None or p["kind"] == kind)


def build_preset(name: str):
    if name not in PRESETS:
        raise ConfigError(f"unknown preset '{name}'; see the presets command")
    return PRESETS[name]["build"]()


def preset_kind(name: str) -> str:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset '{name}'; see the presets command")
    return PRESETS[name]["kind"]
