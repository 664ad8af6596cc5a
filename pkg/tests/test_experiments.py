import math

import numpy as np
import pytest

from sqws import (
    ConfigError,
    FamilySpec,
    SweepConfig,
    TargetSelector,
    config_from_dict,
    config_to_dict,
    ring_lattice_study,
    run_no_sink_grid,
    run_point,
    run_sweep,
    table1_report,
)
from sqws.experiments import (
    CSV_COLUMNS,
    metrics_to_text,
    point_id,
    write_records_csv,
)
from sqws.presets import PRESETS, build_preset, preset_kind, preset_names


def tiny_config(**kw):
    base = dict(
        graph=FamilySpec("cycle", {"n": 6}),
        targets=[TargetSelector("index", 0)],
        omegas=(0.0, 0.5),
        gammas=(0.0, 1.0),
        t_max=12.0,
        samples=64,
    )
    base.update(kw)
    return SweepConfig(**base)


def test_config_validation_messages():
    with pytest.raises(ConfigError, match="omegas"):
        tiny_config(omegas=(0.0, 2.0))
    with pytest.raises(ConfigError, match="gammas"):
        tiny_config(gammas=(-1.0,))
    with pytest.raises(ConfigError, match="sink_rate"):
        tiny_config(sink_rate=-2.0)
    with pytest.raises(ConfigError, match="targets"):
        tiny_config(targets=[])
    with pytest.raises(ConfigError, match="jump_convention"):
        tiny_config(jump_convention="whatever")


def test_run_point_fields():
    cfg = tiny_config()
    rec = run_point(cfg, TargetSelector("index", 0), 0.5, 1.0)
    assert rec.graph_id == "cycle(n=6)"
    assert rec.target == "v0" and rec.target_index == 0
    assert rec.omega == 0.5 and rec.gamma == 1.0
    assert 0.0 <= rec.efficiency <= 1.0
    assert rec.error == ""
    assert rec.dt == pytest.approx(min(0.01, 0.1 / 3.0))
    assert rec.wall_time > 0.0


def test_run_point_gamma_zero_sink_zero_efficiency():
    cfg = tiny_config(sink_rate=0.0)
    rec = run_point(cfg, TargetSelector("index", 0), 0.3, 1.0)
    assert rec.efficiency == 0.0


def test_run_sweep_grid_and_order():
    cfg = tiny_config(targets=[TargetSelector("index", 0), TargetSelector("index", 3)])
    records = run_sweep(cfg, workers=1)
    assert len(records) == 2 * 2 * 2
    keys = [(r.target, r.omega, r.gamma) for r in records]
    expect = [(t, w, g) for t in ("v0", "v3") for w in (0.0, 0.5) for g in (0.0, 1.0)]
    assert keys == expect


def test_run_sweep_worker_count_invariance():
    cfg = tiny_config()
    seq = run_sweep(cfg, workers=1)
    par = run_sweep(cfg, workers=2)
    for a, b in zip(seq, par):
        for col in CSV_COLUMNS:
            va, vb = getattr(a, col), getattr(b, col)
            if isinstance(va, float):
                assert va == vb or (math.isnan(va) and math.isnan(vb))
            else:
                assert va == vb


def test_records_csv_format(tmp_path):
    cfg = tiny_config()
    records = run_sweep(cfg, workers=1)
    path = tmp_path / "records.csv"
    write_records_csv(records, str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 1 + len(records)
    assert "wall_time" not in lines[0]
    # repeated run writes byte-identical bytes
    again = tmp_path / "records2.csv"
    write_records_csv(run_sweep(cfg, workers=2), str(again))
    assert path.read_bytes() == again.read_bytes()


def test_series_collection():
    cfg = tiny_config(record_series=True)
    series: dict = {}
    run_sweep(cfg, workers=1, collect_series=series)
    assert set(series) == {point_id("v0", w, g) for w in (0.0, 0.5) for g in (0.0, 1.0)}
    arr = series[point_id("v0", 0.0, 1.0)]
    assert arr.shape == (64, 5)
    assert arr[0, 0] == 0.0 and arr[-1, 0] == pytest.approx(12.0)


def test_no_sink_grid_values():
    cfg = tiny_config(sink_rate=0.0, omegas=(0.0, 1.0), gammas=(0.0, 1.0))
    grid = run_no_sink_grid(cfg, workers=1)
    assert grid.p.shape == (2, 2, 64)
    assert np.allclose(grid.p[:, :, 0], 1.0 / 6.0)  # uniform start everywhere
    assert np.isfinite(grid.p).all()
    with pytest.raises(ConfigError, match="sink_rate"):
        run_no_sink_grid(tiny_config(sink_rate=1.0), workers=1)


def test_ring_lattice_study_shapes():
    sweeps, profile = ring_lattice_study(
        8, [2, 8], omegas=(0.0, 1.0), gammas=(0.0,), t_max=8.0, samples=32)
    assert set(sweeps) == {2, 8}
    assert len(sweeps[2]) == 2
    assert profile[0] == (2, 4, pytest.approx(2 / 7))
    assert profile[1] == (8, 1, 1.0)


def test_table1_report_contents():
    rows = table1_report()
    by_key = {(r["graph_id"], r["target"]): r for r in rows}
    wheel = by_key[("wheel(n=64)", "center")]
    assert wheel["degree_centrality"] == 1.0 and wheel["eccentricity"] == 1
    pbt = by_key[("perfect_binary_tree(depth=5)", "leaf")]
    assert pbt["eccentricity"] == 10
    lolli = by_key[("lollipop(m=32,n=32)", "path")]
    assert f"{lolli['degree_centrality']:.4f}" == "0.0159"  # 1/63 rounded
    text = metrics_to_text(rows)
    assert "wheel(n=64)" in text and "eccentricity" in text


def test_config_json_roundtrip():
    cfg = tiny_config(targets=[TargetSelector("named", "depth", depth=2)],
                      graph=FamilySpec("perfect_binary_tree", {"depth": 3}))
    doc = config_to_dict(cfg)
    back = config_from_dict(doc)
    assert config_to_dict(back) == doc
    assert back.targets[0].depth == 2
    with pytest.raises(ConfigError):
        config_from_dict({"targets": []})


def test_presets_cover_required_figures():
    names = preset_names()
    assert len(names) >= 12
    for required in ("fig2-complete", "fig2-cycle", "fig2-maze", "fig2-tadpole",
                     "fig4-entropy", "fig5-ts", "fig8-ring-metrics", "fig9-ring",
                     "figA-complete", "figA-hypercube", "figA-cycle", "fig6-lollipop"):
        assert required in names
    for name in names:
        built = build_preset(name)
        kind = preset_kind(name)
        if kind in ("sweep", "no_sink"):
            assert isinstance(built, SweepConfig)
            if kind == "no_sink":
                assert built.sink_rate == 0.0
        elif kind in ("ring_lattice", "profile"):
            assert "n" in built and "ks" in built
        else:
            assert kind == "metrics"
    # every full-size preset has a desk variant where it makes sense
    for name in ("fig2-complete", "fig2-cycle", "fig2-hypercube", "figA-cycle"):
        assert f"{name}-desk" in PRESETS


def test_workers_env_default(monkeypatch):
    from sqws.experiments import default_workers
    monkeypatch.setenv("SQWS_WORKERS", "3")
    assert default_workers() == 3
    monkeypatch.setenv("SQWS_WORKERS", "junk")
    with pytest.raises(ConfigError, match="SQWS_WORKERS"):
        default_workers()
    monkeypatch.delenv("SQWS_WORKERS")
    assert default_workers() >= 1


def test_preset_smoke_run():
    cfg = build_preset("demo")
    records = run_sweep(cfg, workers=1)
    assert len(records) == 3 * 2
    assert all(r.error == "" for r in records)
    assert all(0.0 <= r.efficiency <= 1.0 for r in records)
