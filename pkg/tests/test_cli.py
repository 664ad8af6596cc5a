import json

import pytest

from sqws.cli import main


def test_presets_lists_required_names(capsys):
    assert main(["presets"]) == 0
    out = capsys.readouterr().out
    for name in ("fig2-complete", "fig4-entropy", "fig5-ts", "figA-complete", "fig9-ring"):
        assert name in out


def test_point_rejects_out_of_range_omega(capsys):
    code = main(["point", "--config", "demo", "--omega", "2.0", "--gamma", "1.0"])
    assert code == 1
    err = capsys.readouterr().err
    assert "omega" in err and "[0,1]" in err


def test_unknown_preset_is_config_error(capsys):
    assert main(["sweep", "--config", "no-such-preset", "--out", "/tmp/x"]) == 1
    assert "preset" in capsys.readouterr().err


def test_point_runs_and_prints_record(capsys):
    code = main(["point", "--config", "demo", "--omega", "0.5", "--gamma", "1.0"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["omega"] == 0.5 and doc["gamma"] == 1.0
    assert 0.0 <= doc["efficiency"] <= 1.0


def test_sweep_writes_outputs(tmp_path):
    out = tmp_path / "run"
    assert main(["sweep", "--config", "demo", "--out", str(out), "--workers", "1"]) == 0
    assert (out / "records.csv").exists()
    assert (out / "manifest.json").exists()
    assert (out / "graph.txt").exists()
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == "sweep"
    assert manifest["config"]["graph"]["family"] == "cycle"
    assert len(manifest["points"]) == 6
    header = (out / "records.csv").read_text().splitlines()[0]
    assert header.startswith("graph_id,graph_seed,target,target_index,omega,gamma")


def test_sweep_series_files(tmp_path):
    out = tmp_path / "run"
    assert main(["sweep", "--config", "demo", "--out", str(out), "--workers", "1",
                 "--series"]) == 0
    series = sorted((out / "series").glob("*.csv"))
    assert len(series) == 6
    head = series[0].read_text().splitlines()[0]
    assert head == "t,sink_pop,target_pop,entropy,coherence"


def test_sweep_from_json_config(tmp_path):
    cfg = {
        "graph": {"family": "path", "params": {"n": 4}, "seed": 0},
        "targets": [{"mode": "named", "value": "border"}],
        "omegas": [0.0, 1.0],
        "gammas": [1.0],
        "sink_rate": 1.0,
        "t_max": 8.0,
        "integrator": {"dt": 0.01, "samples": 32, "method": "rk4_fixed"},
        "record_series": False,
        "seed": 0,
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    out = tmp_path / "run"
    assert main(["sweep", "--config", str(cfg_path), "--out", str(out)]) == 0
    rows = (out / "records.csv").read_text().splitlines()
    assert len(rows) == 3


def test_metrics_command(tmp_path, capsys):
    out = tmp_path / "m"
    assert main(["metrics", "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "lollipop" in printed
    assert (out / "metrics.csv").exists() and (out / "metrics.txt").exists()


def test_ring_profile_command(tmp_path):
    out = tmp_path / "r"
    assert main(["ring-lattice", "--config", "fig8-ring-metrics", "--out", str(out)]) == 0
    lines = (out / "profile.csv").read_text().splitlines()
    assert lines[0] == "k,eccentricity,degree_centrality"
    assert len(lines) == 1 + 16


def test_no_sink_command(tmp_path):
    cfg = {
        "graph": {"family": "cycle", "params": {"n": 5}, "seed": 0},
        "targets": [{"mode": "index", "value": 0}],
        "omegas": [0.0, 1.0],
        "gammas": [0.0, 1.0],
        "sink_rate": 0.0,
        "t_max": 5.0,
        "integrator": {"samples": 16},
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    out = tmp_path / "run"
    assert main(["no-sink", "--config", str(cfg_path), "--out", str(out)]) == 0
    lines = (out / "heatmaps.csv").read_text().splitlines()
    assert lines[0] == "omega,gamma,t,p"
    assert len(lines) == 1 + 2 * 2 * 16
