import csv
import json
import math

import numpy as np
import pytest

from arpsim import ensemble_from_csv
from arpsim.cli import main


def run(args, tmp_path):
    """Run the CLI in-process from inside tmp_path."""
    import os
    old = os.getcwd()
    os.chdir(tmp_path)
    try:
        return main(args)
    finally:
        os.chdir(old)


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], [[float(x) for x in r] for r in rows[1:]]


def test_evolve_writes_trajectory_and_meta(tmp_path):
    assert run(["evolve", "--area", "1.0", "--samples", "101",
                "--out", "tr.csv"], tmp_path) == 0
    header, rows = read_csv(tmp_path / "tr.csv")
    assert header == ["t_ps", "re_c0", "im_c0", "re_c1", "im_c1", "occupation"]
    assert len(rows) == 101
    assert rows[-1][5] == pytest.approx(1.0, abs=1e-6)  # resonant pi pulse
    norms = [r[1] ** 2 + r[2] ** 2 + r[3] ** 2 + r[4] ** 2 for r in rows]
    assert max(abs(n - 1.0) for n in norms) < 1e-9
    meta = json.loads((tmp_path / "tr.meta.json").read_text())
    assert meta["command"] == "evolve"
    assert meta["config"]["area"] == 1.0
    assert "assumptions" in meta


def test_dressed_track_csv(tmp_path):
    assert run(["dressed", "--area", "2.0", "--phi2", "0.3",
                "--samples", "201", "--out", "dr.csv"], tmp_path) == 0
    header, rows = read_csv(tmp_path / "dr.csv")
    assert header == ["t_ps", "E_minus_meV", "E_plus_meV"]
    assert len(rows) == 201
    gaps = [r[2] - r[1] for r in rows]
    k = min(range(len(gaps)), key=gaps.__getitem__)
    assert rows[k][0] == pytest.approx(0.0, abs=1e-9)  # resonant anticrossing


def test_scan_rabi_csv(tmp_path):
    assert run(["scan", "--kind", "rabi", "--detunings-mev", "0,4",
                "--area-max", "2", "--area-points", "21",
                "--out", "scan.csv"], tmp_path) == 0
    header, rows = read_csv(tmp_path / "scan.csv")
    assert header[0] == "area_pi"
    assert "delta_+0meV" in header and "delta_+4meV" in header
    col = header.index("delta_+0meV")
    at_pi = [r for r in rows if abs(r[0] - 1.0) < 1e-9]
    assert at_pi and at_pi[0][col] == pytest.approx(1.0, abs=1e-6)


def test_scan_twodot_csv(tmp_path):
    assert run(["scan", "--kind", "twodot", "--area-max", "3",
                "--area-points", "7", "--out", "td.csv"], tmp_path) == 0
    header, _ = read_csv(tmp_path / "td.csv")
    assert header == ["area_pi", "A_unchirped", "A_chirped",
                      "B_unchirped", "B_chirped"]


def test_ensemble_csv_loads_back(tmp_path):
    assert run(["ensemble", "--n-dots", "26", "--seed", "1",
                "--out", "dots.csv"], tmp_path) == 0
    ens = ensemble_from_csv(tmp_path / "dots.csv")
    assert len(ens.dots) == 26
    meta = json.loads((tmp_path / "dots.meta.json").read_text())
    assert meta["config"]["n_dots"] == 26


def test_sweep_and_thresholds_pipeline(tmp_path):
    rc = run(["sweep", "--preset", "custom", "--n-dots", "6",
              "--phi2-min", "0", "--phi2-max", "0.04", "--phi2-points", "5",
              "--area-min", "0.5", "--area-max", "4", "--area-points", "8",
              "--out", "map.csv"], tmp_path)
    assert rc == 0
    header, rows = read_csv(tmp_path / "map.csv")
    assert header == ["phi2_ps2", "area_pi", "occupation"]
    assert len(rows) == 5 * 8
    assert all(0.0 <= r[2] <= 1.0 for r in rows)
    # a level the small map certainly reaches somewhere as a plateau corner
    occ = np.array([r[2] for r in rows]).reshape(5, 8)
    attainable = occ[1:, -1].min() * 0.5
    rc = run(["thresholds", "--map", "map.csv", "--level", f"{attainable}",
              "--out", "thr.csv"], tmp_path)
    assert rc == 0
    header, rows = read_csv(tmp_path / "thr.csv")
    assert header == ["level", "area_pi", "phi2_ps2"]
    assert len(rows) == 1
    meta = json.loads((tmp_path / "thr.meta.json").read_text())
    assert meta["command"] == "thresholds"


def test_thresholds_not_found_exit_code(tmp_path):
    assert run(["sweep", "--preset", "custom", "--n-dots", "4",
                "--phi2-min", "0", "--phi2-max", "0.01", "--phi2-points", "2",
                "--area-min", "0", "--area-max", "0.2", "--area-points", "2",
                "--out", "tiny.csv"], tmp_path) == 0
    rc = run(["thresholds", "--map", "tiny.csv", "--level", "0.9999999999"],
             tmp_path)
    assert rc == 4


def test_config_error_exit_code(tmp_path):
    assert run(["evolve", "--area", "-1"], tmp_path) == 2
    assert run(["thresholds", "--map", "missing.csv"], tmp_path) == 2


def test_unknown_config_key_rejected(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("area = 1.0\nbananas = 3\n")
    assert run(["evolve", "--config", str(cfg)], tmp_path) == 2


def test_integration_failure_exit_code(tmp_path):
    # absurd fixed step trips the norm guard
    assert run(["evolve", "--area", "3", "--dt", "0.5"], tmp_path) == 3


def test_flat_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment line\narea = 0.5\nsamples = 11\n")
    assert run(["evolve", "--config", str(cfg), "--area", "1.0",
                "--out", "a.csv"], tmp_path) == 0
    meta = json.loads((tmp_path / "a.meta.json").read_text())
    assert meta["config"]["area"] == 1.0  # flag wins
    assert meta["config"]["samples"] == 11  # file wins over default


def test_meta_round_trip_is_bit_identical(tmp_path):
    assert run(["evolve", "--area", "1.3", "--phi2", "0.1",
                "--samples", "31", "--out", "one.csv"], tmp_path) == 0
    meta_path = tmp_path / "one.meta.json"
    assert run(["evolve", "--config", str(meta_path),
                "--out", "two.csv"], tmp_path) == 0
    one = (tmp_path / "one.csv").read_bytes()
    two = (tmp_path / "two.csv").read_bytes()
    assert one == two


def test_sweep_respects_workers_env(tmp_path, monkeypatch):
    args = ["sweep", "--preset", "custom", "--n-dots", "4",
            "--phi2-min", "0", "--phi2-max", "0.02", "--phi2-points", "2",
            "--area-min", "0.5", "--area-max", "1.5", "--area-points", "3"]
    monkeypatch.delenv("ARPSIM_WORKERS", raising=False)
    assert run(args + ["--out", "w1.csv"], tmp_path) == 0
    monkeypatch.setenv("ARPSIM_WORKERS", "2")
    assert run(args + ["--out", "w2.csv"], tmp_path) == 0
    assert (tmp_path / "w1.csv").read_bytes() == (tmp_path / "w2.csv").read_bytes()


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert "arpsim" in out


def test_config_json_command_mismatch(tmp_path):
    doc = {"command": "dressed", "config": {"area": 1.0}}
    path = tmp_path / "other.json"
    path.write_text(json.dumps(doc))
    assert run(["evolve", "--config", str(path)], tmp_path) == 2
