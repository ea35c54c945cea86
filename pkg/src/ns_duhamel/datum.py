"""
Solver configuration and divergence-free initial data.

Follows SRP: Initial data only.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from src.common.config import settings
from src.common.errors import DomainError, GridError
from src.common.types import DatumKind, TimeGridKind
from src.common.utils import is_power_of_two
from src.grids_norms.fields import CartesianField
from src.grids_norms.snapshot_io import read_snapshot
from src.operators.multipliers import leray_project

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimConfig:
    """
    Grid, horizon and datum of one Picard run.

    Passing criteria:
    - n in {2, 3}, N a power of two, L > 0, T > 0
    - steps >= 1, picard_iters >= 1, contraction_tol > 0
    - FILE data name a snapshot path
    """

    n: int = field(default_factory=lambda: settings.dimension)
    points: int = field(default_factory=lambda: settings.grid_points)
    half_width: float = field(default_factory=lambda: settings.box_half_width)
    horizon: float = field(default_factory=lambda: settings.horizon)
    steps: int = field(default_factory=lambda: settings.steps)
    picard_iters: int = field(default_factory=lambda: settings.picard_iters)
    contraction_tol: float = field(default_factory=lambda: settings.contraction_tol)
    datum: DatumKind = DatumKind.GAUSSIAN_SOLENOIDAL
    amplitude: float = 0.05
    datum_path: Optional[str] = None
    time_grid: TimeGridKind = TimeGridKind.UNIFORM

    def __post_init__(self):
        if self.n not in (2, 3):
            raise GridError(f"solver supports n in {{2, 3}}, got {self.n}", field_name="n")
        if not is_power_of_two(self.points) or self.points < 4:
            raise GridError(f"N must be a power of two >= 4, got {self.points}", field_name="points")
        if self.half_width <= 0 or self.horizon <= 0:
            raise DomainError("box half-width and horizon must be positive")
        if self.steps < 1 or self.picard_iters < 1:
            raise DomainError("steps and picard_iters must be >= 1")
        if self.contraction_tol <= 0:
            raise DomainError("contraction_tol must be positive", field_name="contraction_tol")
        if self.amplitude < 0:
            raise DomainError("amplitude must be >= 0", field_name="amplitude")
        if self.datum is DatumKind.FILE and not self.datum_path:
            raise DomainError("FILE datum needs datum_path", field_name="datum_path")

    def times(self) -> np.ndarray:
        """steps + 1 snapshot times on [0, T], starting at 0"""
        grid = np.linspace(0.0, 1.0, self.steps + 1)
        if self.time_grid is TimeGridKind.CLUSTERED:
            grid = grid**2
        return self.horizon * grid

    def descriptor(self) -> Dict[str, Any]:
        d = asdict(self)
        d["datum"] = self.datum.value
        d["time_grid"] = self.time_grid.value
        return d


def _gaussian_envelope(xs, width: float = 1.0) -> np.ndarray:
    return np.exp(-sum(x**2 for x in xs) / width**2)


def _gaussian_field(n: int):
    """v_j = x_{j+1} e^{-|x|^2}, indices cyclic; not divergence-free before projection"""

    def fn(*xs):
        g = _gaussian_envelope(xs)
        return [xs[(j + 1) % n] * g for j in range(n)]

    return fn


def _taylor_green_field(n: int, half_width: float):
    """Taylor-Green cells under a Gaussian envelope of width L/4"""
    width = half_width / 4.0

    def fn(*xs):
        g = _gaussian_envelope(xs, width)
        if n == 2:
            x, y = xs
            return [np.sin(x) * np.cos(y) * g, -np.cos(x) * np.sin(y) * g]
        x, y, z = xs
        return [
            np.sin(x) * np.cos(y) * np.cos(z) * g,
            -np.cos(x) * np.sin(y) * np.cos(z) * g,
            0.0 * x,
        ]

    return fn


def _from_file(cfg: SimConfig) -> CartesianField:
    f, _ = read_snapshot(cfg.datum_path)
    if (f.n, f.points, f.components) != (cfg.n, cfg.points, cfg.n):
        raise GridError(
            f"datum file has n={f.n}, N={f.points}, m={f.components}; config wants n={cfg.n}, N={cfg.points}, m={cfg.n}",
            field_name="datum_path",
        )
    return leray_project(CartesianField(cfg.n, cfg.half_width, f.values))


def make_datum(cfg: SimConfig) -> CartesianField:
    """
    Divergence-free initial velocity.

    Analytic data are projected and normalized so that max |u0| = amplitude;
    FILE data are projected and multiplied by amplitude.
    """
    if cfg.datum is DatumKind.FILE:
        return _from_file(cfg).scaled(cfg.amplitude)

    fn = _gaussian_field(cfg.n) if cfg.datum is DatumKind.GAUSSIAN_SOLENOIDAL else _taylor_green_field(cfg.n, cfg.half_width)
    u = leray_project(CartesianField.from_function(fn, cfg.n, cfg.half_width, cfg.points))
    peak = float(u.magnitude().max())
    if peak == 0:
        raise DomainError(f"{cfg.datum.value} datum vanishes on this grid")
    logger.debug("datum %s: projected peak %.4e, amplitude %s", cfg.datum.value, peak, cfg.amplitude)
    return u.scaled(cfg.amplitude / peak)
