"""Cartesian/polar field storage, resampling and weighted mixed norms."""

from src.grids_norms.fields import CartesianField, NormResult, PolarField, dilate
from src.grids_norms.norms import angular_norm, angular_profile, cartesian_lp, mixed_norm, time_mixed_norm
from src.grids_norms.polar import PolarGrid, build_polar_grid, default_polar_grid, sphere_area
from src.grids_norms.resample import resample
from src.grids_norms.snapshot_io import NormRow, read_norm_table, read_snapshot, write_norm_table, write_snapshot

__all__ = [
    "CartesianField",
    "NormResult",
    "NormRow",
    "PolarField",
    "PolarGrid",
    "angular_norm",
    "angular_profile",
    "build_polar_grid",
    "cartesian_lp",
    "default_polar_grid",
    "dilate",
    "mixed_norm",
    "read_norm_table",
    "read_snapshot",
    "resample",
    "sphere_area",
    "time_mixed_norm",
    "write_norm_table",
    "write_snapshot",
]
