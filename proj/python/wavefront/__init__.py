"""Exact wave-front tracking for scalar conservation laws u_t + f(u)_x = 0."""

from ._wavefront import *  # noqa: F401,F403
from ._wavefront import (
    Error,
    FluxModel,
    Simulation,
    StepFunction,
    Wave,
    bundled_scenario_dir,
    example_scenario,
    run_scenario,
    run_scenario_file,
    simulate,
    solve_riemann,
)

__all__ = [
    "Error",
    "FluxModel",
    "Simulation",
    "StepFunction",
    "Wave",
    "bundled_scenario_dir",
    "example_scenario",
    "run_scenario",
    "run_scenario_file",
    "simulate",
    "solve_riemann",
]
