"""Coherent control of quantum-dot excitons with chirped Gaussian pulses.

Two-level rotating-frame dynamics, Gaussian ensembles, parameter-map
sweeps, and the scan geometries used to study Rabi rotations versus
adiabatic rapid passage.
"""

from ._version import __version__
from .pulse_model import (
    HBAR,
    PulseSpec,
    ChirpedPulseParams,
    chirp_rate,
    stretched_duration,
    chirped_params,
    rabi_envelope,
    instantaneous_detuning,
)
from .dynamics import (
    TwoLevelState,
    QuantumDot,
    IntegratorParams,
    IntegrationAccuracyError,
    evolve,
    evolve_trajectory,
    batch_occupations,
    dressed_energies,
    dressed_state_track,
    adiabaticity_parameter,
)
from .ensemble import (
    EnsembleSpec,
    Ensemble,
    sample_ensemble,
    mean_occupation,
    ensemble_to_csv,
    ensemble_from_csv,
)
from .sweep import (
    SweepGrid,
    OccupationMap,
    ThresholdNotFound,
    occupation_map,
    level_set,
    threshold_finder,
    default_fig_grid,
    resolve_workers,
)
from .scans import (
    ScanResult,
    rabi_detuning_scan,
    two_dot_comparison,
    default_two_dot_setup,
)

__all__ = [
    "__version__",
    "HBAR",
    "PulseSpec",
    "ChirpedPulseParams",
    "chirp_rate",
    "stretched_duration",
    "chirped_params",
    "rabi_envelope",
    "instantaneous_detuning",
    "TwoLevelState",
    "QuantumDot",
    "IntegratorParams",
    "IntegrationAccuracyError",
    "evolve",
    "evolve_trajectory",
    "batch_occupations",
    "dressed_energies",
    "dressed_state_track",
    "adiabaticity_parameter",
    "EnsembleSpec",
    "Ensemble",
    "sample_ensemble",
    "mean_occupation",
    "ensemble_to_csv",
    "ensemble_from_csv",
    "SweepGrid",
    "OccupationMap",
    "ThresholdNotFound",
    "occupation_map",
    "level_set",
    "threshold_finder",
    "default_fig_grid",
    "resolve_workers",
    "ScanResult",
    "rabi_detuning_scan",
    "two_dot_comparison",
    "default_two_dot_setup",
]
