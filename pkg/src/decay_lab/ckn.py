"""
Comparison of the cylinder quantity with the weighted |x|^{-2} |u|^3 integral.

For each r:
    A(r) = r^{-2} int_{Q*_r} |u|^3,
    B(r) = int over the same cylinder of |x|^{-2} |u|^3,
Q*_r = {|y| < r} x (t_bar - 7r^2/8, t_bar + r^2/8). A(r) <= B(r) termwise on
the quadrature since |x|^{-2} >= r^{-2} on the ball.
Follows SRP: CKN comparison only.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid

from src.common.config import settings
from src.common.errors import InsufficientDataError
from src.grids_norms.fields import CartesianField
from src.grids_norms.norms import mixed_norm
from src.grids_norms.polar import build_polar_grid
from src.grids_norms.resample import resample
from src.index_calculus.exponent import Exponent

logger = logging.getLogger(__name__)

CUBE = Exponent.of(3)
WEIGHT = Fraction(-2, 3)  # |x|^{-2} |u|^3 = (|x|^{-2/3} |u|)^3


@dataclass(frozen=True)
class CknRow:
    r: float
    A: float
    B: float

    @property
    def dominated(self) -> bool:
        return self.A <= self.B

    def to_dict(self) -> dict:
        return {"r": self.r, "A": self.A, "B": self.B, "dominated": self.dominated}


@dataclass
class CknTable:
    t_bar: float
    rows: List[CknRow]

    @property
    def dominated(self) -> bool:
        return all(row.dominated for row in self.rows)

    @property
    def decreasing(self) -> bool:
        """A(r) strictly decreasing as r decreases"""
        ordered = sorted(self.rows, key=lambda row: -row.r)
        return all(b.A < a.A for a, b in zip(ordered, ordered[1:]))

    def to_dict(self) -> dict:
        return {
            "t_bar": self.t_bar,
            "dominated": self.dominated,
            "decreasing": self.decreasing,
            "rows": [row.to_dict() for row in self.rows],
        }


def window_integral(times: np.ndarray, values: np.ndarray, start: float, stop: float) -> float:
    """Trapezoid over [start, stop], linear interpolation at the window ends"""
    if start < times[0] - 1e-12 or stop > times[-1] + 1e-12:
        raise InsufficientDataError(
            f"window [{start}, {stop}] outside trajectory [{times[0]}, {times[-1]}]", field_name="t_bar"
        )
    inner = (times > start) & (times < stop)
    t = np.concatenate([[start], times[inner], [stop]])
    v = np.concatenate([[np.interp(start, times, values)], values[inner], [np.interp(stop, times, values)]])
    return float(trapezoid(v, t))


def _ball_integrals(u: CartesianField, r: float) -> Tuple[float, float]:
    grid = build_polar_grid(
        u.n,
        r * settings.r_min_fraction,
        r,
        settings.shells // 2,
        settings.nodes_per_shell,
        settings.angular_order,
        with_coarse=False,
    )
    pf = resample(u, grid)
    return mixed_norm(pf, 0, CUBE, CUBE).value ** 3, mixed_norm(pf, WEIGHT, CUBE, CUBE).value ** 3


def ckn_comparison(snapshots: Sequence[Tuple[float, CartesianField]], t_bar: float, r_list: Sequence[float]) -> CknTable:
    """A(r) and B(r) for every r, integrated over the cylinder window"""
    times = np.array([t for t, _ in snapshots], dtype=float)
    rows = []
    for r in r_list:
        start, stop = t_bar - 7 * r * r / 8, t_bar + r * r / 8
        if start < times[0] - 1e-12 or stop > times[-1] + 1e-12:
            raise InsufficientDataError(f"cylinder of radius {r} leaves the trajectory", field_name="r_list")
        integrals = np.array([_ball_integrals(u, r) for _, u in snapshots])
        a = window_integral(times, integrals[:, 0], start, stop) / (r * r)
        b = window_integral(times, integrals[:, 1], start, stop)
        rows.append(CknRow(float(r), a, b))
        logger.debug("ckn r=%s: A=%.4e B=%.4e", r, a, b)
    return CknTable(float(t_bar), rows)
