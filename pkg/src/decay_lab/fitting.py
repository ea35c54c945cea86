"""
Log-log slope fits over the asymptotic window.

Follows SRP: Regression only.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import stats

from src.common.config import settings
from src.common.errors import InsufficientDataError

ZERO_FLOOR = 1e-12


@dataclass(frozen=True)
class SlopeFit:
    """Least-squares slope of log y against log t"""

    slope: float
    stderr: float
    intercept: float
    t_start: float
    points: int


def asymptotic_window(t: np.ndarray, decades: Optional[float] = None) -> np.ndarray:
    """Mask of samples within the last `decades` decades of t"""
    decades = settings.asymptotic_decades if decades is None else decades
    return t >= t.max() / 10.0**decades


def fit_slope(t: np.ndarray, y: np.ndarray, decades: Optional[float] = None, scale: float = 1.0) -> SlopeFit:
    """
    Slope of log y vs log t on the asymptotic window.

    Values at or below ZERO_FLOOR*scale count as exact zeros; an all-zero
    window gives slope -inf.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    window = asymptotic_window(t, decades)
    tw, yw = t[window], y[window]
    if tw.size < 3:
        raise InsufficientDataError(f"slope fit needs >= 3 samples in the window, got {tw.size}")
    if np.all(yw <= ZERO_FLOOR * scale):
        return SlopeFit(-math.inf, 0.0, -math.inf, float(tw[0]), int(tw.size))
    if np.any(yw <= 0):
        raise InsufficientDataError("cannot fit log-log slope through zero values")
    fit = stats.linregress(np.log(tw), np.log(yw))
    return SlopeFit(float(fit.slope), float(fit.stderr), float(fit.intercept), float(tw[0]), int(tw.size))
