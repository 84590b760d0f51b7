"""Chirped Gaussian pulse model.

A transform-limited Gaussian pulse of intensity-FWHM duration tau0 acquires
a quadratic spectral phase phi2 (group delay dispersion) in a pulse shaper.
In the time domain this stretches the envelope, lowers the peak at constant
pulse energy, and sweeps the instantaneous frequency linearly at rate alpha.

Units are fixed throughout the package: energies in meV, times in ps,
angular frequencies in rad/ps. Dipole moments enter only as the
dimensionless ratio mu/mu_bar multiplying the Rabi envelope, so absolute
field amplitudes never appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HBAR = 0.6582119569  # meV ps
LN2 = math.log(2.0)
TWO_LN2 = 2.0 * LN2

# FWHM of a Gaussian = 2 sqrt(2 ln 2) sigma
FWHM_TO_SIGMA = 1.0 / (2.0 * math.sqrt(TWO_LN2))

__all__ = [
    "HBAR",
    "FWHM_TO_SIGMA",
    "PulseSpec",
    "ChirpedPulseParams",
    "chirp_rate",
    "stretched_duration",
    "chirped_params",
    "rabi_envelope",
    "instantaneous_detuning",
]


@dataclass(frozen=True)
class PulseSpec:
    """Transform-limited Gaussian pulse plus spectral chirp.

    tau0 is the FWHM of the transform-limited intensity profile in ps.
    area is the pulse area in units of pi, defined for the transform-limited
    envelope at the mean dipole moment. center_energy is the photon energy
    hbar*omega_l in meV. phi2 is the spectral chirp in ps^2; negative chirp
    is allowed.
    """

    tau0: float = 0.12
    area: float = 1.0
    center_energy: float = 1063.0
    phi2: float = 0.0

    def __post_init__(self):
        if not self.tau0 > 0:
            raise ValueError(f"tau0 must be positive, got {self.tau0}")
        if self.area < 0:
            raise ValueError(f"area must be non-negative, got {self.area}")


@dataclass(frozen=True)
class ChirpedPulseParams:
    """Derived time-domain drive parameters for one pulse and one dipole."""

    alpha: float  # temporal chirp rate, rad/ps^2
    tau_chirped: float  # stretched intensity-FWHM duration, ps
    peak_rabi: float  # peak Rabi frequency, rad/ps


def chirp_rate(phi2: float, tau0: float) -> float:
    """Temporal chirp rate alpha in rad/ps^2.

    alpha = 2 phi2 / [tau0^4/(2 ln 2)^2 + (2 phi2)^2]. Odd in phi2; vanishes
    at phi2 = 0 and in the large-chirp limit, with a maximum at
    phi2 = tau0^2/(4 ln 2).
    """
    if not tau0 > 0:
        raise ValueError(f"tau0 must be positive, got {tau0}")
    return 2.0 * phi2 / (tau0**4 / TWO_LN2**2 + (2.0 * phi2) ** 2)


def stretched_duration(phi2: float, tau0: float) -> float:
    """Intensity-FWHM duration of the chirped pulse in ps.

    tau = tau0 sqrt(1 + (4 ln 2 phi2 / tau0^2)^2); even in phi2.
    """
    if not tau0 > 0:
        raise ValueError(f"tau0 must be positive, got {tau0}")
    return tau0 * math.sqrt(1.0 + (4.0 * LN2 * phi2 / tau0**2) ** 2)


def chirped_params(pulse: PulseSpec, dipole_scale: float = 1.0) -> ChirpedPulseParams:
    """Resolve a PulseSpec into (alpha, tau_chirped, peak_rabi).

    The transform-limited peak is set by the area definition
    integral(Omega dt) = area*pi*dipole_scale; chirping conserves pulse
    energy, so the peak scales by sqrt(tau0/tau).
    """
    alpha = chirp_rate(pulse.phi2, pulse.tau0)
    tau = stretched_duration(pulse.phi2, pulse.tau0)
    # integral of exp(-2 ln2 t^2/tau0^2) is tau0 sqrt(pi/(2 ln2))
    peak_tl = pulse.area * math.pi * dipole_scale / (pulse.tau0 * math.sqrt(math.pi / TWO_LN2))
    peak = peak_tl * math.sqrt(pulse.tau0 / tau)
    return ChirpedPulseParams(alpha=alpha, tau_chirped=tau, peak_rabi=peak)


def rabi_envelope(pulse: PulseSpec, dipole_scale: float, t):
    """Rabi frequency Omega(t) in rad/ps at time(s) t (ps).

    Gaussian with the stretched duration; accepts scalar or array t.
    """
    p = chirped_params(pulse, dipole_scale)
    t = np.asarray(t, dtype=float)
    out = p.peak_rabi * np.exp(-TWO_LN2 * t * t / (p.tau_chirped**2))
    return float(out) if out.ndim == 0 else out


def instantaneous_detuning(pulse: PulseSpec, qd_energy: float, t):
    """Instantaneous detuning Delta(t) = Delta0 - 2 alpha t in rad/ps.

    Delta0 = (E_QD - hbar*omega_l)/hbar. Accepts scalar or array t.
    """
    alpha = chirp_rate(pulse.phi2, pulse.tau0)
    delta0 = (qd_energy - pulse.center_energy) / HBAR
    t = np.asarray(t, dtype=float)
    out = delta0 - 2.0 * alpha * t
    return float(out) if out.ndim == 0 else out
