"""End-to-end acceptance checks.

Each test prints one summary line

    ACCEPTANCE <n>: <name>: PASS|FAIL (<measured details>)

before asserting, so a full run documents every criterion whether or not
the assertion holds. Run with -rA (or -s) to see the lines for passing
tests too.
"""

import dataclasses
import math
import time
from decimal import Decimal, getcontext

import numpy as np
import pytest

from arpsim import (
    EnsembleSpec,
    IntegratorParams,
    PulseSpec,
    QuantumDot,
    SweepGrid,
    ThresholdNotFound,
    batch_occupations,
    chirp_rate,
    default_fig_grid,
    evolve,
    occupation_map,
    sample_ensemble,
    threshold_finder,
)

CENTER = 1063.0


def report(n, name, ok, detail):
    status = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {n}: {name}: {status} ({detail})"
    print(line)
    return line


def test_acceptance_1_area_theorem():
    t0 = time.perf_counter()
    areas = np.linspace(0.0, 4.0, 81)
    qd = QuantumDot(transition_energy=CENTER)
    worst = 0.0
    for a in areas:
        _, occ = evolve(PulseSpec(area=float(a), center_energy=CENTER), qd)
        worst = max(worst, abs(occ - math.sin(a * math.pi / 2.0) ** 2))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-6 and elapsed < 10.0
    line = report(1, "resonant area theorem",
                  ok, f"max |occ - sin^2| = {worst:.3g} over 81 areas in [0, 4pi], {elapsed:.2f} s")
    assert ok, line


def best_zero_chirp_mean(fwhm):
    from arpsim import mean_occupation
    spec = EnsembleSpec(n_dots=468, energy_fwhm=fwhm)
    ens = sample_ensemble(spec)
    grid = default_fig_grid()
    best_occ, best_area = -1.0, 0.0
    for a in grid.area_axis:
        pulse = PulseSpec(tau0=0.12, area=float(a), center_energy=CENTER, phi2=0.0)
        occ = mean_occupation(ens, pulse)
        if occ > best_occ:
            best_occ, best_area = occ, float(a)
    return best_occ, best_area


def test_acceptance_2_zero_chirp_ensemble_maxima():
    t0 = time.perf_counter()
    occ10, area10 = best_zero_chirp_mean(10.0)
    occ30, area30 = best_zero_chirp_mean(30.0)
    elapsed = time.perf_counter() - t0
    ok10 = abs(occ10 - 0.72) <= 0.05
    ok30 = abs(occ30 - 0.47) <= 0.05
    ok = ok10 and ok30 and elapsed < 300.0
    line = report(
        2, "zero-chirp ensemble maxima", ok,
        f"10 meV: {occ10:.4f} at {area10:.2f}pi vs 0.72+-0.05 "
        f"[{'ok' if ok10 else 'out'}]; "
        f"30 meV: {occ30:.4f} at {area30:.2f}pi vs 0.47+-0.05 "
        f"[{'ok' if ok30 else 'out'}]; {elapsed:.0f} s")
    assert ok, line


def test_acceptance_3_threshold_corners():
    t0 = time.perf_counter()
    grid = default_fig_grid()
    base = PulseSpec(tau0=0.12, area=1.0, center_energy=CENTER, phi2=0.0)
    results = {}
    for fwhm, want_area, want_phi2 in ((10.0, 2.45, 0.018), (30.0, 3.74, 0.026)):
        spec = EnsembleSpec(n_dots=468, energy_fwhm=fwhm)
        omap = occupation_map(grid, spec, base)
        try:
            area, phi2 = threshold_finder(omap, 0.99)
            ok_a = abs(area - want_area) <= 0.15 * want_area
            ok_p = abs(phi2 - want_phi2) <= 0.25 * want_phi2
            detail = (f"corner (area={area:.2f}pi, phi2={phi2:.4f}) vs "
                      f"({want_area}pi, {want_phi2}): "
                      f"area {'ok' if ok_a else 'out of +-15%'}, "
                      f"chirp {'ok' if ok_p else 'out of +-25%'}")
            results[fwhm] = (ok_a and ok_p, detail)
        except ThresholdNotFound:
            results[fwhm] = (False, f"level 0.99 never anchored "
                                    f"(map max {float(omap.values.max()):.4f})")
    elapsed = time.perf_counter() - t0
    ok = all(r[0] for r in results.values()) and elapsed < 1800.0
    line = report(
        3, "0.99 threshold corners", ok,
        f"10 meV: {results[10.0][1]}; 30 meV: {results[30.0][1]}; {elapsed:.0f} s")
    assert ok, line


def test_acceptance_4_arp_robustness():
    t0 = time.perf_counter()
    detunings = np.linspace(-5.0, 5.0, 11)
    scales = np.linspace(0.8, 1.25, 5)
    dots = [QuantumDot(transition_energy=CENTER + d, dipole_scale=float(s))
            for d in detunings for s in scales]
    pulse = PulseSpec(tau0=0.12, area=3.0, center_energy=CENTER, phi2=0.3)
    occ = batch_occupations(pulse, dots)
    elapsed = time.perf_counter() - t0
    ok = bool(np.all(occ > 0.95)) and elapsed < 60.0
    line = report(4, "chirped inversion robustness", ok,
                  f"min occupation {float(occ.min()):.6f} over 11x5 "
                  f"(detuning x dipole) grid at 3pi, phi2=0.3; {elapsed:.1f} s")
    assert ok, line


def test_acceptance_5_symmetries():
    rng = np.random.default_rng(20260816)
    worst_conj = 0.0
    worst_sign = 0.0
    for _ in range(20):
        phi2 = float(rng.uniform(-0.35, 0.35))
        area = float(rng.uniform(0.0, 5.0))
        det = float(rng.uniform(-10.0, 10.0))
        scale = float(rng.uniform(0.8, 1.25))

        def occ(p2, d):
            pulse = PulseSpec(area=area, phi2=p2, center_energy=CENTER)
            qd = QuantumDot(transition_energy=CENTER + d, dipole_scale=scale)
            return evolve(pulse, qd)[1]

        worst_conj = max(worst_conj, abs(occ(phi2, det) - occ(-phi2, -det)))
        worst_sign = max(worst_sign, abs(occ(phi2, 0.0) - occ(-phi2, 0.0)))
    ok = worst_conj <= 1e-8 and worst_sign <= 1e-8
    line = report(5, "detuning/chirp symmetries", ok,
                  f"20 draws: conjugation residual {worst_conj:.2g}, "
                  f"chirp-sign residual {worst_sign:.2g}, tolerance 1e-8")
    assert ok, line


def test_acceptance_6_convergence_and_norm():
    from arpsim.dynamics import _batch_setup
    cases = [(0.0, 1.0, 0.0), (0.3, 3.0, 4.0), (0.06, 5.0, -8.0)]
    worst_step = 0.0
    worst_norm = 0.0
    for phi2, area, det in cases:
        pulse = PulseSpec(area=area, phi2=phi2, center_energy=CENTER)
        qd = QuantumDot(transition_energy=CENTER + det)
        state, occ = evolve(pulse, qd)
        worst_norm = max(worst_norm, abs(state.norm - 1.0))
        _, _, _, _, _, dt, _ = _batch_setup(pulse, [qd], IntegratorParams())
        _, occ_half = evolve(pulse, qd, IntegratorParams(dt=dt / 2.0))
        worst_step = max(worst_step, abs(occ - occ_half))
    ok = worst_step < 1e-8 and worst_norm < 1e-9
    line = report(6, "step-size convergence", ok,
                  f"step-halving shift {worst_step:.2g} (< 1e-8), "
                  f"norm drift {worst_norm:.2g} (< 1e-9) over {len(cases)} cases")
    assert ok, line


def test_acceptance_7_determinism():
    grid = SweepGrid(phi2_axis=(0.0, 0.02, 0.04), area_axis=(0.5, 1.5, 3.0))
    spec = EnsembleSpec(n_dots=12)
    base = PulseSpec(tau0=0.12, area=1.0, center_energy=CENTER, phi2=0.0)
    blobs = [occupation_map(grid, spec, base, workers=w).values.tobytes()
             for w in (1, 4, 8)]
    maps_ok = blobs[0] == blobs[1] == blobs[2]
    regen_ok = True
    for mode in ("deterministic-quantile", "seeded-random"):
        s = EnsembleSpec(n_dots=30, sampling=mode, seed=5)
        a, b = sample_ensemble(s), sample_ensemble(s)
        regen_ok = regen_ok and all(
            x.transition_energy == y.transition_energy
            and x.dipole_scale == y.dipole_scale
            for x, y in zip(a.dots, b.dots))
    ok = maps_ok and regen_ok
    line = report(7, "determinism across workers", ok,
                  f"maps bit-identical for workers 1/4/8: {maps_ok}; "
                  f"ensemble regeneration bit-identical: {regen_ok}")
    assert ok, line


def test_acceptance_8_chirp_algebra():
    getcontext().prec = 50
    ln2 = Decimal("0.69314718055994530941723212145817656807550013436026")
    worst = 0.0
    for tau0, phi2 in ((0.12, 0.3), (0.12, 0.005), (0.1, -0.2), (0.2, 0.05)):
        t = Decimal(repr(tau0))
        p = Decimal(repr(phi2))
        alpha_ref = (2 * p) / (t**4 / (2 * ln2) ** 2 + (2 * p) ** 2)
        worst = max(worst, abs(chirp_rate(phi2, tau0) - float(alpha_ref)))
    phi_grid = np.linspace(0.002, 0.01, 20001)
    alphas = np.array([chirp_rate(float(p), 0.12) for p in phi_grid])
    numeric = float(phi_grid[np.argmax(alphas)])
    analytic = 0.12**2 / (4.0 * math.log(2.0))
    rel = abs(numeric - analytic) / analytic
    ok = worst < 1e-12 and rel < 1e-3
    line = report(8, "chirp-rate algebra", ok,
                  f"closed form residual {worst:.2g} (< 1e-12); "
                  f"maximizer {numeric:.6f} vs {analytic:.6f} ps^2, "
                  f"rel err {rel:.2g} (< 1e-3)")
    assert ok, line
