"""Grids of ensemble-mean occupation over (chirp, pulse area).

Cells are independent single-ensemble averages, so a map parallelizes over
a process pool; every cell value is computed by the same deterministic
batch rule regardless of which worker runs it, and results are written by
cell index, so the map is bit-identical for any worker count.
"""

from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace

import numpy as np

from ._version import __version__
from .dynamics import IntegratorParams, STEP_PHASE_CAP, ENVELOPE_STEPS
from .ensemble import EnsembleSpec, mean_occupation, sample_ensemble
from .pulse_model import PulseSpec

__all__ = [
    "SweepGrid",
    "OccupationMap",
    "ThresholdNotFound",
    "occupation_map",
    "level_set",
    "threshold_finder",
    "default_fig_grid",
    "resolve_workers",
]

WORKERS_ENV = "ARPSIM_WORKERS"


@dataclass(frozen=True)
class SweepGrid:
    """Strictly increasing (phi2, area) axes.

    Single-point axes are allowed so a 1x1 grid stays exactly equivalent to
    one mean_occupation call; contour and threshold extraction need at
    least 2 points per axis to interpolate.
    """

    phi2_axis: tuple
    area_axis: tuple

    def __post_init__(self):
        object.__setattr__(self, "phi2_axis", tuple(float(p) for p in self.phi2_axis))
        object.__setattr__(self, "area_axis", tuple(float(a) for a in self.area_axis))
        for name, axis in (("phi2_axis", self.phi2_axis), ("area_axis", self.area_axis)):
            if len(axis) < 1:
                raise ValueError(f"{name} must have at least one point")
            if any(b <= a for a, b in zip(axis, axis[1:])):
                raise ValueError(f"{name} must be strictly increasing")


@dataclass(frozen=True)
class OccupationMap:
    grid: SweepGrid
    values: np.ndarray  # shape (len(phi2_axis), len(area_axis))
    meta: dict

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.shape != (len(self.grid.phi2_axis), len(self.grid.area_axis)):
            raise ValueError(f"values shape {v.shape} does not match grid")
        if np.any(v < 0) or np.any(v > 1):
            raise ValueError("occupations must lie in [0, 1]")


class ThresholdNotFound(Exception):
    """The requested level is nowhere attained as a plateau corner."""


def default_fig_grid() -> SweepGrid:
    """Default map grid: phi2 in [0, 0.06] ps^2 (61), area in [0, 5] pi (51)."""
    return SweepGrid(
        phi2_axis=tuple(np.linspace(0.0, 0.06, 61)),
        area_axis=tuple(np.linspace(0.0, 5.0, 51)),
    )


def resolve_workers(workers=None) -> int:
    """Worker count: explicit value, else ARPSIM_WORKERS, else 1; 'auto' = cpu count."""
    if workers is None:
        env = os.environ.get(WORKERS_ENV, "").strip()
        workers = env if env else 1
    if workers == "auto":
        return os.cpu_count() or 1
    n = int(workers)
    if n < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    return n


# per-process state for pool workers: (ensemble, base pulse, params)
_CTX = None


def _init_worker(spec, base, params):
    global _CTX
    _CTX = (sample_ensemble(spec), base, params)


def _cell(task):
    i, j, phi2, area = task
    ens, base, params = _CTX
    try:
        return i, j, mean_occupation(ens, replace(base, phi2=phi2, area=area), params)
    except Exception as e:
        raise type(e)(f"cell (phi2={phi2}, area={area}) at grid index ({i}, {j}): {e}") from e


def occupation_map(grid: SweepGrid, spec: EnsembleSpec, base: PulseSpec,
                   params: IntegratorParams | None = None, workers=None) -> OccupationMap:
    """Ensemble-mean occupation at every grid cell.

    base supplies tau0 and center_energy; phi2 and area come from the grid.
    """
    if params is None:
        params = IntegratorParams()
    n_workers = resolve_workers(workers)
    tasks = [
        (i, j, p, a)
        for i, p in enumerate(grid.phi2_axis)
        for j, a in enumerate(grid.area_axis)
    ]
    values = np.empty((len(grid.phi2_axis), len(grid.area_axis)))
    if n_workers == 1:
        _init_worker(spec, base, params)
        results = map(_cell, tasks)
        for i, j, v in results:
            values[i, j] = v
    else:
        chunk = max(1, len(tasks) // (n_workers * 8))
        with ProcessPoolExecutor(
            max_workers=n_workers,
            initializer=_init_worker,
            initargs=(spec, base, params),
        ) as pool:
            for i, j, v in pool.map(_cell, tasks, chunksize=chunk):
                values[i, j] = v
    meta = {
        "version": __version__,
        "ensemble": asdict(spec),
        "pulse": {"tau0": base.tau0, "center_energy": base.center_energy},
        "grid": {"phi2_ps2": list(grid.phi2_axis), "area_pi": list(grid.area_axis)},
        "integrator": {
            "dt": params.dt,
            "t_span_factor": params.t_span_factor,
            "norm_tol": params.norm_tol,
            "step_phase_cap": STEP_PHASE_CAP,
            "envelope_steps": ENVELOPE_STEPS,
        },
        "assumptions": {
            "tau0_ps": base.tau0,
            "tau0_note": "transform-limited intensity-FWHM duration; 120 fs default",
            "sampling": spec.sampling,
            "laser_note": "laser center defaults to the ensemble mean transition energy",
            "dissipation": "none; coherent dynamics only",
        },
    }
    return OccupationMap(grid=grid, values=values, meta=meta)


# marching-squares segment table: for each cell case (bit k set means corner
# k >= level, corners ordered BL, BR, TR, TL), the edges each segment joins.
# Edges: 0 bottom, 1 right, 2 top, 3 left. Ambiguous saddles (5, 10) are
# split by the cell-center mean.
_SEGMENTS = {
    0: [],
    1: [(3, 0)],
    2: [(0, 1)],
    3: [(3, 1)],
    4: [(1, 2)],
    6: [(0, 2)],
    7: [(3, 2)],
    8: [(2, 3)],
    9: [(2, 0)],
    11: [(2, 1)],
    12: [(1, 3)],
    13: [(1, 0)],
    14: [(0, 3)],
    15: [],
}


def _edge_point(edge, x0, x1, y0, y1, c, level):
    """Linear interpolation of the level crossing on one cell edge."""
    bl, br, tr, tl = c
    if edge == 0:
        f = (level - bl) / (br - bl)
        return x0 + f * (x1 - x0), y0
    if edge == 1:
        f = (level - br) / (tr - br)
        return x1, y0 + f * (y1 - y0)
    if edge == 2:
        f = (level - tl) / (tr - tl)
        return x0 + f * (x1 - x0), y1
    f = (level - bl) / (tl - bl)
    return x0, y0 + f * (y1 - y0)


def level_set(omap: OccupationMap, level: float):
    """Contour polylines of the map at the given level.

    Marching squares with linear interpolation, no smoothing. The x
    coordinate of returned points is phi2 (ps^2) and y is area (pi units).
    Returns a list of (n, 2) arrays; empty list if the level is never
    crossed.
    """
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    px = omap.grid.phi2_axis
    ay = omap.grid.area_axis
    v = omap.values
    segments = []
    for i in range(len(px) - 1):
        for j in range(len(ay) - 1):
            c = (v[i, j], v[i + 1, j], v[i + 1, j + 1], v[i, j + 1])
            case = sum(1 << k for k, val in enumerate(c) if val >= level)
            if case in (5, 10):
                # saddle: connect according to the center value
                center_hi = (sum(c) / 4.0) >= level
                if case == 5:
                    segs = [(3, 2), (1, 0)] if center_hi else [(3, 0), (1, 2)]
                else:
                    segs = [(0, 1), (2, 3)] if center_hi else [(0, 3), (2, 1)]
            else:
                segs = _SEGMENTS[case]
            for ea, eb in segs:
                pa = _edge_point(ea, px[i], px[i + 1], ay[j], ay[j + 1], c, level)
                pb = _edge_point(eb, px[i], px[i + 1], ay[j], ay[j + 1], c, level)
                segments.append((pa, pb))
    return _join_segments(segments)


def _join_segments(segments):
    """Chain shared endpoints into polylines.

    Segment orientation from the case table is not globally consistent, so
    endpoints are matched undirected and candidates flipped on the fly.
    """
    def key(p):
        return (round(p[0], 12), round(p[1], 12))

    segs = [s for s in segments if key(s[0]) != key(s[1])]
    by_end = {}
    for idx, seg in enumerate(segs):
        for end in (0, 1):
            by_end.setdefault(key(seg[end]), []).append((idx, end))
    used = [False] * len(segs)

    def take(pt_key):
        for idx, end in by_end.get(pt_key, []):
            if not used[idx]:
                used[idx] = True
                return segs[idx][1 - end]
        return None

    lines = []
    for idx, seg in enumerate(segs):
        if used[idx]:
            continue
        used[idx] = True
        line = deque((seg[0], seg[1]))
        while (nxt := take(key(line[-1]))) is not None:
            line.append(nxt)
        while (prv := take(key(line[0]))) is not None:
            line.appendleft(prv)
        lines.append(np.array(line))
    return lines


def _suffix_feasible(values, level):
    """feas[i, j]: every cell in values[i:, j:] is >= level."""
    ok = values >= level
    feas = np.zeros_like(ok)
    ni, nj = ok.shape
    for i in range(ni - 1, -1, -1):
        for j in range(nj - 1, -1, -1):
            f = ok[i, j]
            if i + 1 < ni:
                f = f and feas[i + 1, j]
            if j + 1 < nj:
                f = f and feas[i, j + 1]
            feas[i, j] = f
    return feas


def _bisect(lo, hi, pred, iters=60):
    """Smallest x in (lo, hi] with pred(x), assuming pred(hi) holds."""
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def threshold_finder(omap: OccupationMap, level: float):
    """Corner of the plateau where the map stays >= level.

    Finds the smallest chirp phi2* for which some area completes a fully
    covered rectangle [area, max] x [phi2*, max], and the smallest such
    area* at that chirp; both coordinates are then bisection-refined
    between grid lines on the bilinear interpolant. Returns (area*, phi2*).

    Raises ThresholdNotFound when no cell anchors such a rectangle; that is
    a result about the map, not an integration error.
    """
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    px = omap.grid.phi2_axis
    ay = omap.grid.area_axis
    v = omap.values
    feas = _suffix_feasible(v, level)
    if not feas.any():
        raise ThresholdNotFound(
            f"level {level} is not attained as a plateau corner "
            f"(map max {float(v.max()):.9g})"
        )
    i0 = int(np.argmax(feas.any(axis=1)))
    j0 = int(np.argmax(feas[i0]))

    # chirp first: between rows i0-1 and i0 the interpolant is linear in
    # phi2, so the rectangle at columns j0: stays covered iff the
    # interpolated row does
    phi2_star = px[i0]
    if i0 > 0:
        def phi2_ok(p):
            f = (p - px[i0 - 1]) / (px[i0] - px[i0 - 1])
            row = v[i0 - 1, j0:] + f * (v[i0, j0:] - v[i0 - 1, j0:])
            return bool(np.all(row >= level))

        if phi2_ok(px[i0 - 1]):
            phi2_star = px[i0 - 1]
        else:
            phi2_star = _bisect(px[i0 - 1], px[i0], phi2_ok)

    # boundary row of the rectangle at phi2_star; including it in the area
    # predicate keeps the refined corner itself >= level on the interpolant
    if i0 > 0 and phi2_star < px[i0]:
        f = (phi2_star - px[i0 - 1]) / (px[i0] - px[i0 - 1])
        frow = v[i0 - 1] + f * (v[i0] - v[i0 - 1])
        rows = np.vstack([frow[None, :], v[i0:]])
    else:
        rows = v[i0:]

    area_star = ay[j0]
    if j0 > 0:
        def area_ok(a):
            g = (a - ay[j0 - 1]) / (ay[j0] - ay[j0 - 1])
            col = rows[:, j0 - 1] + g * (rows[:, j0] - rows[:, j0 - 1])
            return bool(np.all(col >= level))

        if area_ok(ay[j0 - 1]):
            area_star = ay[j0 - 1]
        else:
            area_star = _bisect(ay[j0 - 1], ay[j0], area_ok)

    return float(area_star), float(phi2_star)
