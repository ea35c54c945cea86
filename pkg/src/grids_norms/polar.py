"""
Polar quadrature grids.

Radial nodes are composite Gauss-Legendre on geometrically spaced shells;
angular nodes are a product Gauss-Legendre (cos theta) x uniform (azimuth)
rule on S^2, or uniform angles on S^1.
Follows SRP: Grid construction only.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from src.common.config import settings
from src.common.errors import GridError
from src.common.types import Normalization

logger = logging.getLogger(__name__)


def sphere_area(n: int) -> float:
    """|S^{n-1}|"""
    return 2.0 * math.pi ** (n / 2) / math.gamma(n / 2)


@dataclass(frozen=True, eq=False)
class PolarGrid:
    """
    Radial shells x angular nodes.

    Passing criteria:
    - radii strictly increasing inside [r_min, r_max]
    - every weight positive
    - angular weights sum to |S^{n-1}| or 1 per the normalization
    """

    n: int
    r_min: float
    r_max: float
    radii: np.ndarray
    radial_weights: np.ndarray
    directions: np.ndarray
    angular_weights: np.ndarray
    normalization: Normalization
    shells: int
    nodes_per_shell: int
    angular_order: int
    coarse: Optional["PolarGrid"] = None

    @property
    def surface_weights(self) -> np.ndarray:
        """Angular weights in surface measure regardless of the normalization"""
        if self.normalization is Normalization.SURFACE_MEASURE:
            return self.angular_weights
        return self.angular_weights * sphere_area(self.n)

    def weights_for(self, normalization: Normalization) -> np.ndarray:
        if normalization is Normalization.SURFACE_MEASURE:
            return self.surface_weights
        return self.surface_weights / sphere_area(self.n)

    def points(self) -> np.ndarray:
        """Cartesian node coordinates, shape (radii, directions, n)"""
        return self.radii[:, None, None] * self.directions[None, :, :]

    def shell_of(self, radial_index: int) -> int:
        return radial_index // self.nodes_per_shell

    def describe(self) -> dict:
        return {
            "n": self.n,
            "r_min": self.r_min,
            "r_max": self.r_max,
            "shells": self.shells,
            "nodes_per_shell": self.nodes_per_shell,
            "angular_order": self.angular_order,
            "normalization": self.normalization.value,
        }


def _radial_rule(r_min: float, r_max: float, shells: int, per_shell: int) -> Tuple[np.ndarray, np.ndarray]:
    edges = r_min * (r_max / r_min) ** (np.arange(shells + 1) / shells)
    x, w = leggauss(per_shell)
    lo, hi = edges[:-1, None], edges[1:, None]
    nodes = 0.5 * (hi - lo) * x[None, :] + 0.5 * (hi + lo)
    weights = 0.5 * (hi - lo) * w[None, :]
    return nodes.ravel(), weights.ravel()


def _angular_rule(n: int, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Surface-measure rule exact for spherical harmonics of degree <= order"""
    azimuths = order + 1
    phi = 2.0 * math.pi * np.arange(azimuths) / azimuths
    if n == 2:
        directions = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
        return directions, np.full(azimuths, 2.0 * math.pi / azimuths)

    polar = order // 2 + 1
    if polar % 2 == 0:
        polar += 1  # odd count puts a node on the equator
    cos_t, w_t = leggauss(polar)
    sin_t = np.sqrt(1.0 - cos_t**2)
    directions = np.stack(
        [
            np.outer(sin_t, np.cos(phi)),
            np.outer(sin_t, np.sin(phi)),
            np.outer(cos_t, np.ones_like(phi)),
        ],
        axis=-1,
    ).reshape(-1, 3)
    weights = np.outer(w_t, np.full(azimuths, 2.0 * math.pi / azimuths)).ravel()
    return directions, weights


def _assemble(
    n: int,
    r_min: float,
    r_max: float,
    shells: int,
    nodes_per_shell: int,
    angular_order: int,
    normalization: Normalization,
    coarse: Optional[PolarGrid],
) -> PolarGrid:
    radii, radial_weights = _radial_rule(r_min, r_max, shells, nodes_per_shell)
    directions, angular_weights = _angular_rule(n, angular_order)
    if normalization is Normalization.PROBABILITY:
        angular_weights = angular_weights / sphere_area(n)
    return PolarGrid(
        n=n,
        r_min=r_min,
        r_max=r_max,
        radii=radii,
        radial_weights=radial_weights,
        directions=directions,
        angular_weights=angular_weights,
        normalization=normalization,
        shells=shells,
        nodes_per_shell=nodes_per_shell,
        angular_order=angular_order,
        coarse=coarse,
    )


def build_polar_grid(
    n: int,
    r_min: float,
    r_max: float,
    shells: int,
    nodes_per_shell: int,
    angular_order: int,
    normalization: Normalization = Normalization.SURFACE_MEASURE,
    with_coarse: bool = True,
) -> PolarGrid:
    """Build a polar grid and (optionally) its half-resolution companion"""
    if n not in (2, 3):
        raise GridError(f"polar grids support n in {{2, 3}}, got {n}", field_name="n")
    if not 0 < r_min < r_max:
        raise GridError(f"need 0 < r_min < r_max, got {r_min}, {r_max}", field_name="r_min")
    if shells < 4:
        raise GridError(f"need at least 4 shells, got {shells}", field_name="shells")
    if nodes_per_shell < 1 or angular_order < 1:
        raise GridError("nodes_per_shell and angular_order must be positive")

    coarse = None
    if with_coarse:
        coarse = _assemble(
            n, r_min, r_max, shells // 2, nodes_per_shell, max(1, angular_order // 2), normalization, None
        )
    grid = _assemble(n, r_min, r_max, shells, nodes_per_shell, angular_order, normalization, coarse)
    logger.debug("polar grid %s: %d x %d nodes", grid.describe(), grid.radii.size, grid.directions.shape[0])
    return grid


def default_polar_grid(
    n: int,
    half_width: float,
    normalization: Normalization = Normalization.SURFACE_MEASURE,
) -> PolarGrid:
    """Grid scaled to a box: r_min = fraction*L, r_max = L*(1 - margin)"""
    return build_polar_grid(
        n,
        settings.r_min_fraction * half_width,
        half_width * (1.0 - settings.resample_margin),
        settings.shells,
        settings.nodes_per_shell,
        settings.angular_order,
        normalization,
    )
