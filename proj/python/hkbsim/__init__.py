"""Embodied HKB phase-oscillator agents: simulation, metrics, and sweeps."""

from ._hkbsim import (
    default_config,
    hkb_derivatives,
    kop,
    pairwise_coupling_term,
    phase_difference,
    plv,
    run,
    run_sweep,
    sensor_positions,
    stimulus_at,
    trajectory_csv,
    wpli,
    wrap_phase,
)

__all__ = [
    "default_config",
    "hkb_derivatives",
    "kop",
    "pairwise_coupling_term",
    "phase_difference",
    "plv",
    "run",
    "run_sweep",
    "sensor_positions",
    "stimulus_at",
    "trajectory_csv",
    "wpli",
    "wrap_phase",
]
