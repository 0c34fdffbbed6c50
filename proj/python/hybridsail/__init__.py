"""Hybrid wind/electric autonomous sailboat simulator."""

from ._core import (
    Config,
    ConfigError,
    Pid,
    box_stats,
    compute_tau,
    fit_line,
    forward_force,
    heading_error,
    run_cruise,
    run_heading_step,
    run_sweep,
    savings_percent,
    trajectory_csv,
)

__all__ = [
    "Config",
    "ConfigError",
    "Pid",
    "box_stats",
    "compute_tau",
    "fit_line",
    "forward_force",
    "heading_error",
    "run_cruise",
    "run_heading_step",
    "run_sweep",
    "savings_percent",
    "trajectory_csv",
]
