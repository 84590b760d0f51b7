"""Command-line front end.

Subcommands: evolve, dressed, scan, ensemble, sweep, thresholds. Every run
writes a data CSV plus a JSON meta sidecar that records the fully resolved
configuration and modeling assumptions; feeding that sidecar back through
--config reproduces the data file byte for byte (deterministic modes).

Exit codes: 0 success, 2 configuration error, 3 integration failure,
4 threshold not found.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from ._version import __version__
from .dynamics import (
    IntegrationAccuracyError,
    IntegratorParams,
    QuantumDot,
    dressed_state_track,
    evolve_trajectory,
)
from .ensemble import Ensemble, EnsembleSpec, ensemble_to_csv, sample_ensemble
from .pulse_model import PulseSpec
from .scans import rabi_detuning_scan, two_dot_comparison
from .sweep import (
    OccupationMap,
    SweepGrid,
    ThresholdNotFound,
    occupation_map,
    threshold_finder,
)

__all__ = ["main"]


class ConfigError(Exception):
    pass


def _float(s):
    return float(s)


def _int(s):
    return int(s)


def _opt_float(s):
    if s is None or (isinstance(s, str) and s.strip().lower() in ("", "none", "null")):
        return None
    return float(s)


def _str(s):
    return str(s)


def _workers(s):
    if s is None:
        return None
    if isinstance(s, str) and s.strip().lower() == "auto":
        return "auto"
    n = int(s)
    if n < 1:
        raise ValueError(f"workers must be >= 1 or 'auto', got {s}")
    return n


def _floats(s):
    """Comma-separated float list."""
    if isinstance(s, (list, tuple)):
        return [float(x) for x in s]
    return [float(x) for x in str(s).split(",") if x.strip() != ""]


_INTEGRATOR_KEYS = {
    "dt": (_opt_float, None),
    "t_span_factor": (_float, 4.0),
    "norm_tol": (_float, 1e-9),
}

_ENSEMBLE_KEYS = {
    "n_dots": (_int, 468),
    "energy_mean_mev": (_float, 1063.0),
    "fwhm_mev": (_float, 10.0),
    "dipole_mean_d": (_float, 25.0),
    "dipole_fwhm_d": (_float, 4.0),
    "sampling": (_str, "deterministic-quantile"),
    "seed": (_int, 0),
}

# per-command key tables: name -> (converter, default)
_SCHEMAS = {
    "evolve": {
        "tau0": (_float, 0.12),
        "area": (_float, 1.0),
        "phi2": (_float, 0.0),
        "center_energy_mev": (_float, 1063.0),
        "detuning_mev": (_float, 0.0),
        "dipole_scale": (_float, 1.0),
        "samples": (_int, 1001),
        **_INTEGRATOR_KEYS,
        "out": (_str, "evolve.csv"),
    },
    "dressed": {
        "tau0": (_float, 0.12),
        "area": (_float, 1.0),
        "phi2": (_float, 0.0),
        "center_energy_mev": (_float, 1063.0),
        "detuning_mev": (_float, 0.0),
        "dipole_scale": (_float, 1.0),
        "samples": (_int, 801),
        "t_span_factor": (_float, 4.0),
        "out": (_str, "dressed.csv"),
    },
    "scan": {
        "kind": (_str, "rabi"),
        "tau0": (_float, 0.12),
        "center_energy_mev": (_float, 1063.0),
        "detunings_mev": (_floats, [0.0, 4.0, 8.0]),
        "phi2": (_float, 0.3),
        "energy_a_mev": (_float, 1067.0),
        "energy_b_mev": (_float, 1059.0),
        "dipole_scale_a": (_float, 1.0),
        "dipole_scale_b": (_float, 1.25),
        "area_max": (_float, 4.0),
        "area_points": (_int, 81),
        **_INTEGRATOR_KEYS,
        "out": (_str, "scan.csv"),
    },
    "ensemble": {
        **_ENSEMBLE_KEYS,
        "out": (_str, "ensemble.csv"),
    },
    "sweep": {
        "preset": (_str, "fig4"),
        "tau0": (_float, 0.12),
        "center_energy_mev": (_opt_float, None),
        **_ENSEMBLE_KEYS,
        "phi2_min": (_float, 0.0),
        "phi2_max": (_float, 0.06),
        "phi2_points": (_int, 61),
        "area_min": (_float, 0.0),
        "area_max": (_float, 5.0),
        "area_points": (_int, 51),
        "workers": (_workers, None),
        **_INTEGRATOR_KEYS,
        "out": (_str, "sweep.csv"),
    },
    "thresholds": {
        "map": (_str, "sweep.csv"),
        "level": (_float, 0.99),
        "out": (_str, "thresholds.csv"),
    },
}

_ASSUMPTIONS = {
    "tau0_note": "transform-limited intensity-FWHM duration; 120 fs default",
    "laser_note": "laser center defaults to the ensemble mean transition energy",
    "dissipation": "none; coherent dynamics only",
    "area_note": "pulse area is the transform-limited equivalent area at the mean dipole",
}


def _load_config_file(path: str, command: str) -> dict:
    """Read a flat key=value file or a meta JSON sidecar."""
    text = Path(path).read_text()
    raw = {}
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        cmd = doc.get("command")
        if cmd is not None and cmd != command:
            raise ConfigError(f"config file is for command {cmd!r}, not {command!r}")
        raw = doc.get("config", doc)
        raw = {k: v for k, v in raw.items()}
    else:
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            k, v = line.split("=", 1)
            raw[k.strip()] = v.strip()
    return raw


def _resolve(command: str, args: argparse.Namespace) -> dict:
    """Merge defaults, config file, and explicit flags; strict on keys."""
    schema = _SCHEMAS[command]
    conf = {k: d for k, (_, d) in schema.items()}
    if getattr(args, "config", None):
        for k, v in _load_config_file(args.config, command).items():
            if k not in schema:
                raise ConfigError(f"unknown config key {k!r} for command {command!r}")
            conf[k] = schema[k][0](v)
    for k in schema:
        v = getattr(args, k, None)
        if v is not None:
            conf[k] = schema[k][0](v)
    return conf


def _meta_path(out: str) -> Path:
    p = Path(out)
    return p.with_suffix(".meta.json") if p.suffix == ".csv" else Path(str(p) + ".meta.json")


def _write_meta(command: str, conf: dict, out: str, extra: dict | None = None):
    doc = {
        "command": command,
        "version": __version__,
        "config": conf,
        "assumptions": dict(_ASSUMPTIONS),
    }
    if extra:
        doc.update(extra)
    with open(_meta_path(out), "w") as f:
        json.dump(doc, f, indent=2, sort_keys=True)
        f.write("\n")


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x
                        for x in row])


def _integrator(conf) -> IntegratorParams:
    return IntegratorParams(dt=conf["dt"], t_span_factor=conf["t_span_factor"],
                            norm_tol=conf["norm_tol"])


def _cmd_evolve(conf) -> int:
    pulse = PulseSpec(tau0=conf["tau0"], area=conf["area"],
                      center_energy=conf["center_energy_mev"], phi2=conf["phi2"])
    qd = QuantumDot(transition_energy=conf["center_energy_mev"] + conf["detuning_mev"],
                    dipole_scale=conf["dipole_scale"])
    t, c0, c1 = evolve_trajectory(pulse, qd, _integrator(conf), n_samples=conf["samples"])
    rows = [
        (float(tk), c0[k].real, c0[k].imag, c1[k].real, c1[k].imag, abs(c1[k]) ** 2)
        for k, tk in enumerate(t)
    ]
    _write_csv(conf["out"], ["t_ps", "re_c0", "im_c0", "re_c1", "im_c1", "occupation"], rows)
    _write_meta("evolve", conf, conf["out"])
    print(f"evolve: final occupation {float(rows[-1][-1])!r} -> {conf['out']}")
    return 0


def _cmd_dressed(conf) -> int:
    pulse = PulseSpec(tau0=conf["tau0"], area=conf["area"],
                      center_energy=conf["center_energy_mev"], phi2=conf["phi2"])
    qd = QuantumDot(transition_energy=conf["center_energy_mev"] + conf["detuning_mev"],
                    dipole_scale=conf["dipole_scale"])
    t, e_minus, e_plus = dressed_state_track(pulse, qd, n_samples=conf["samples"],
                                             t_span_factor=conf["t_span_factor"])
    rows = list(zip(t, e_minus, e_plus))
    _write_csv(conf["out"], ["t_ps", "E_minus_meV", "E_plus_meV"], rows)
    _write_meta("dressed", conf, conf["out"])
    print(f"dressed: {len(rows)} samples -> {conf['out']}")
    return 0


def _cmd_scan(conf) -> int:
    areas = np.linspace(0.0, conf["area_max"], conf["area_points"])
    params = _integrator(conf)
    if conf["kind"] == "rabi":
        result = rabi_detuning_scan(conf["detunings_mev"], areas, tau0=conf["tau0"],
                                    center_energy=conf["center_energy_mev"], params=params)
    elif conf["kind"] == "twodot":
        qd_a = QuantumDot(conf["energy_a_mev"], conf["dipole_scale_a"])
        qd_b = QuantumDot(conf["energy_b_mev"], conf["dipole_scale_b"])
        laser = PulseSpec(tau0=conf["tau0"], area=1.0,
                          center_energy=conf["center_energy_mev"], phi2=0.0)
        result = two_dot_comparison(qd_a, qd_b, laser, areas, phi2=conf["phi2"],
                                    params=params)
    else:
        raise ConfigError(f"unknown scan kind {conf['kind']!r} (expected rabi or twodot)")
    names = list(result.curves)
    rows = [
        (a, *[result.curves[n][k] for n in names])
        for k, a in enumerate(result.axis)
    ]
    _write_csv(conf["out"], ["area_pi", *names], rows)
    _write_meta("scan", conf, conf["out"], extra={"curves": result.meta})
    print(f"scan[{conf['kind']}]: {len(names)} curves x {len(rows)} areas -> {conf['out']}")
    return 0


def _cmd_ensemble(conf) -> int:
    spec = EnsembleSpec(
        n_dots=conf["n_dots"], energy_mean=conf["energy_mean_mev"],
        energy_fwhm=conf["fwhm_mev"], dipole_mean=conf["dipole_mean_d"],
        dipole_fwhm=conf["dipole_fwhm_d"], sampling=conf["sampling"], seed=conf["seed"],
    )
    ens = sample_ensemble(spec)
    ensemble_to_csv(ens, conf["out"])
    _write_meta("ensemble", conf, conf["out"])
    print(f"ensemble: {len(ens)} dots -> {conf['out']}")
    return 0


def _cmd_sweep(conf) -> int:
    spec = EnsembleSpec(
        n_dots=conf["n_dots"], energy_mean=conf["energy_mean_mev"],
        energy_fwhm=conf["fwhm_mev"], dipole_mean=conf["dipole_mean_d"],
        dipole_fwhm=conf["dipole_fwhm_d"], sampling=conf["sampling"], seed=conf["seed"],
    )
    center = conf["center_energy_mev"]
    if center is None:
        center = spec.energy_mean
    base = PulseSpec(tau0=conf["tau0"], area=1.0, center_energy=center, phi2=0.0)
    if conf["preset"] == "fig4":
        grid = SweepGrid(phi2_axis=tuple(np.linspace(0.0, 0.06, 61)),
                         area_axis=tuple(np.linspace(0.0, 5.0, 51)))
    elif conf["preset"] == "custom":
        grid = SweepGrid(
            phi2_axis=tuple(np.linspace(conf["phi2_min"], conf["phi2_max"], conf["phi2_points"])),
            area_axis=tuple(np.linspace(conf["area_min"], conf["area_max"], conf["area_points"])),
        )
    else:
        raise ConfigError(f"unknown preset {conf['preset']!r} (expected fig4 or custom)")
    omap = occupation_map(grid, spec, base, _integrator(conf), workers=conf["workers"])
    rows = [
        (p, a, omap.values[i, j])
        for i, p in enumerate(grid.phi2_axis)
        for j, a in enumerate(grid.area_axis)
    ]
    _write_csv(conf["out"], ["phi2_ps2", "area_pi", "occupation"], rows)
    _write_meta("sweep", conf, conf["out"], extra={"map_meta": _jsonable(omap.meta)})
    print(f"sweep: {len(grid.phi2_axis)}x{len(grid.area_axis)} map -> {conf['out']}")
    return 0


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _read_sweep_csv(path) -> OccupationMap:
    phi2s, areas, vals = [], [], {}
    with open(path, newline="") as f:
        r = csv.DictReader(f)
        if r.fieldnames != ["phi2_ps2", "area_pi", "occupation"]:
            raise ConfigError(f"{path} is not a sweep CSV (header {r.fieldnames})")
        for row in r:
            p = float(row["phi2_ps2"])
            a = float(row["area_pi"])
            phi2s.append(p)
            areas.append(a)
            vals[(p, a)] = float(row["occupation"])
    px = sorted(set(phi2s))
    ay = sorted(set(areas))
    if len(vals) != len(px) * len(ay):
        raise ConfigError(f"{path} does not hold a complete grid")
    values = np.array([[vals[(p, a)] for a in ay] for p in px])
    grid = SweepGrid(phi2_axis=tuple(px), area_axis=tuple(ay))
    return OccupationMap(grid=grid, values=values, meta={"source": str(path)})


def _cmd_thresholds(conf) -> int:
    omap = _read_sweep_csv(conf["map"])
    area_star, phi2_star = threshold_finder(omap, conf["level"])
    _write_csv(conf["out"], ["level", "area_pi", "phi2_ps2"],
               [(conf["level"], area_star, phi2_star)])
    _write_meta("thresholds", conf, conf["out"])
    print(f"thresholds: level {conf['level']} corner at area {area_star!r} pi, "
          f"phi2 {phi2_star!r} ps^2 -> {conf['out']}")
    return 0


_RUNNERS = {
    "evolve": _cmd_evolve,
    "dressed": _cmd_dressed,
    "scan": _cmd_scan,
    "ensemble": _cmd_ensemble,
    "sweep": _cmd_sweep,
    "thresholds": _cmd_thresholds,
}


def _add_flags(sub: argparse.ArgumentParser, command: str):
    sub.add_argument("--config", help="key=value file or a meta JSON from a previous run")
    for key in _SCHEMAS[command]:
        flag = "--" + key.replace("_", "-")
        sub.add_argument(flag, dest=key, default=None, metavar="V")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arpsim",
        description="Rabi rotations and adiabatic rapid passage for "
                    "quantum-dot excitons under chirped Gaussian pulses",
    )
    parser.add_argument("--version", action="version", version=f"arpsim {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)
    helps = {
        "evolve": "integrate one dot through one pulse and write the trajectory",
        "dressed": "write the dressed-state energy track for one dot and pulse",
        "scan": "area scans: detuned Rabi curves or the two-dot comparison",
        "ensemble": "sample a Gaussian ensemble and write it as CSV",
        "sweep": "ensemble-mean occupation map over (chirp, area)",
        "thresholds": "plateau-corner threshold of a sweep map at a level",
    }
    for name in _SCHEMAS:
        _add_flags(subs.add_parser(name, help=helps[name]), name)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        conf = _resolve(args.command, args)
        return _RUNNERS[args.command](conf)
    except (ConfigError, ValueError, OSError, json.JSONDecodeError) as e:
        print(f"arpsim {args.command}: {e}", file=sys.stderr)
        return 2
    except IntegrationAccuracyError as e:
        print(f"arpsim {args.command}: integration failure: {e}", file=sys.stderr)
        return 3
    except ThresholdNotFound as e:
        print(f"arpsim {args.command}: threshold not found: {e}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
