"""
Cartesian -> polar resampling.

The periodic field is spectrally refined, then interpolated with cubic
B-splines at every polar node.
Follows SRP: Interpolation onto polar grids only.
"""

import logging
from typing import Optional

import numpy as np
from scipy import ndimage, signal

from src.common.config import settings
from src.common.errors import GridError
from src.grids_norms.fields import CartesianField, PolarField
from src.grids_norms.polar import PolarGrid

logger = logging.getLogger(__name__)


def refine(f: CartesianField, factor: int) -> np.ndarray:
    """Band-limited upsampling by an integer factor along every axis"""
    values = f.values
    if factor == 1:
        return values
    for axis in range(1, f.n + 1):
        values = signal.resample(values, f.points * factor, axis=axis)
    return values


def _node_indices(f: CartesianField, grid: PolarGrid, spacing: float) -> np.ndarray:
    pts = grid.points().reshape(-1, grid.n)
    return ((pts + f.half_width) / spacing).T


def resample(
    f: CartesianField,
    grid: PolarGrid,
    upsample: Optional[int] = None,
    margin: Optional[float] = None,
) -> PolarField:
    """
    Interpolate every component of f at the nodes of grid (and of its coarse companion).

    Raises GridError when a node lies closer than margin*L to the box boundary.
    """
    factor = settings.upsample_factor if upsample is None else upsample
    margin = settings.resample_margin if margin is None else margin
    if grid.n != f.n:
        raise GridError(f"grid dimension {grid.n} does not match field dimension {f.n}")
    if factor < 1:
        raise GridError(f"upsample factor must be >= 1, got {factor}", field_name="upsample")
    limit = f.half_width * (1.0 - margin)
    if grid.r_max > limit * (1.0 + 1e-12):
        raise GridError(
            f"polar node outside box: r_max={grid.r_max} > L(1 - margin)={limit}", field_name="r_max"
        )

    fine = refine(f, factor)
    spacing = f.spacing / factor
    coeffs = [ndimage.spline_filter(c, order=3, mode="grid-wrap") for c in fine]

    def evaluate(g: PolarGrid) -> np.ndarray:
        idx = _node_indices(f, g, spacing)
        shape = (g.radii.size, g.directions.shape[0])
        return np.stack(
            [
                ndimage.map_coordinates(c, idx, order=3, mode="grid-wrap", prefilter=False).reshape(shape)
                for c in coeffs
            ]
        )

    coarse = PolarField(grid.coarse, evaluate(grid.coarse)) if grid.coarse is not None else None
    logger.debug("resampled %d components onto %d nodes", f.components, grid.radii.size * grid.directions.shape[0])
    return PolarField(grid, evaluate(grid), coarse)
