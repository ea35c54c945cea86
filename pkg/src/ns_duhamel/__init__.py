"""Small-data mild solutions and their diagnostics."""

from src.ns_duhamel.datum import SimConfig, make_datum
from src.ns_duhamel.monitors import (
    EnergyRow,
    divergence_residual,
    energy_report,
    max_defect,
    monitor_criterion,
    pressure_consistency,
)
from src.ns_duhamel.picard import Trajectory, picard_solve, picard_step
from src.ns_duhamel.trajectory_io import read_trajectory, write_trajectory

__all__ = [
    "EnergyRow",
    "SimConfig",
    "Trajectory",
    "divergence_residual",
    "energy_report",
    "make_datum",
    "max_defect",
    "monitor_criterion",
    "picard_solve",
    "picard_step",
    "pressure_consistency",
    "read_trajectory",
    "write_trajectory",
]
