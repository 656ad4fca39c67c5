"""Adaptive ankle-torque and LQR footstep control of a reduced-order walker on a moving deck."""

from ._core import (
    DeckwalkError,
    AdaptiveConfig,
    GaitSpec,
    Metrics,
    PdGains,
    PlannerGains,
    build_planner,
    compute_metrics,
    desired_initial_state,
    fourier_amplitudes,
    load_scenario,
    make_gait_spec,
    make_pd_gains,
    run_case,
    run_scenario_file,
    verify,
)

__all__ = [
    "DeckwalkError",
    "AdaptiveConfig",
    "GaitSpec",
    "Metrics",
    "PdGains",
    "PlannerGains",
    "build_planner",
    "compute_metrics",
    "desired_initial_state",
    "fourier_amplitudes",
    "load_scenario",
    "make_gait_spec",
    "make_pd_gains",
    "run_case",
    "run_scenario_file",
    "verify",
]
