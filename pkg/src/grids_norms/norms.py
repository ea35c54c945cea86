"""
Weighted mixed radial-angular norms.

    || |x|^alpha f ||_{L^p_r L^ptilde_omega}
        = ( int_0^inf r^{alpha p} ||f(r .)||_{L^ptilde(S^{n-1})}^p r^{n-1} dr )^{1/p}

and their L^s time integrals over a sequence of snapshots.
Follows SRP: Norm evaluation only.
"""

import logging
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid

from src.common.errors import DomainError, GridError, InsufficientDataError, NonIntegrableWeightError
from src.common.types import AngularMagnitude, Normalization
from src.grids_norms.fields import CartesianField, NormResult, PolarField
from src.index_calculus.exponent import Exponent, RationalLike, parse_rational

logger = logging.getLogger(__name__)


def _lp_sum(values: np.ndarray, weights: np.ndarray, exponent: Exponent, axis: int = -1) -> np.ndarray:
    """(sum w |v|^e)^{1/e}, max |v| for INF"""
    if exponent.is_inf:
        return np.max(np.abs(values), axis=axis)
    e = float(exponent.value)
    return np.sum(weights * np.abs(values) ** e, axis=axis) ** (1.0 / e)


def _angular_values(
    values: np.ndarray, weights: np.ndarray, ptilde: Exponent, magnitude: AngularMagnitude
) -> np.ndarray:
    if magnitude is AngularMagnitude.COMPONENTWISE:
        per_component = _lp_sum(values, weights, ptilde)
        return np.sqrt(np.sum(per_component**2, axis=0))
    return _lp_sum(np.sqrt(np.sum(values**2, axis=0)), weights, ptilde)


def angular_profile(
    pf: PolarField,
    ptilde: Exponent,
    weights: Optional[np.ndarray] = None,
    magnitude: AngularMagnitude = AngularMagnitude.EUCLIDEAN,
) -> np.ndarray:
    """Angular norm on every radial node, shape (radii,)"""
    weights = pf.grid.angular_weights if weights is None else weights
    return _angular_values(pf.values, weights, Exponent.of(ptilde), magnitude)


def angular_norm(
    pf: PolarField,
    ptilde: Exponent,
    shell_index: int,
    magnitude: AngularMagnitude = AngularMagnitude.EUCLIDEAN,
) -> float:
    """
    (sum_j a_j |f(r_i w_j)|^ptilde)^{1/ptilde} with the grid's own normalization.

    shell_index addresses a radial node.
    """
    if not 0 <= shell_index < pf.grid.radii.size:
        raise GridError(f"shell index {shell_index} outside [0, {pf.grid.radii.size})", field_name="shell_index")
    values = pf.values[:, shell_index : shell_index + 1, :]
    return float(_angular_values(values, pf.grid.angular_weights, Exponent.of(ptilde), magnitude)[0])


def _check_integrable(alpha: Fraction, p: Exponent, n: int) -> None:
    if not p.is_inf and alpha * p.value + n <= 0:
        raise NonIntegrableWeightError(alpha, p, n)


def _mixed_value(
    pf: PolarField,
    alpha: float,
    p: Exponent,
    ptilde: Exponent,
    magnitude: AngularMagnitude,
    r_cut: Optional[float],
    normalization: Normalization,
) -> float:
    grid = pf.grid
    profile = angular_profile(pf, ptilde, grid.weights_for(normalization), magnitude)
    radii = grid.radii
    inside = radii <= r_cut if r_cut is not None else np.ones_like(radii, dtype=bool)
    if p.is_inf:
        if not inside.any():
            return 0.0
        return float(np.max(radii[inside] ** alpha * profile[inside]))

    e = float(p.value)
    power = alpha * e + grid.n
    integrand = grid.radial_weights * radii ** (power - 1.0) * profile**e
    total = float(np.sum(integrand[inside]))
    # core ball r < r_min, angular value frozen at the first node
    core_radius = grid.r_min if r_cut is None else min(grid.r_min, r_cut)
    if core_radius > 0:
        total += profile[0] ** e * core_radius**power / power
    return total ** (1.0 / e)


def mixed_norm(
    pf: PolarField,
    alpha: RationalLike,
    p: Exponent,
    ptilde: Exponent,
    magnitude: AngularMagnitude = AngularMagnitude.EUCLIDEAN,
    r_cut: Optional[float] = None,
    normalization: Normalization = Normalization.SURFACE_MEASURE,
) -> NormResult:
    """
    Weighted mixed norm, surface-measure angular weights unless told otherwise.

    PROBABILITY weights make the value of a radial field independent of ptilde.
    r_cut restricts the radial integral to r <= r_cut (parabola masks).
    The error estimate is the gap to the half-resolution companion when present.
    """
    alpha = parse_rational(alpha, "alpha")
    p, ptilde = Exponent.of(p), Exponent.of(ptilde)
    _check_integrable(alpha, p, pf.grid.n)
    value = _mixed_value(pf, float(alpha), p, ptilde, magnitude, r_cut, normalization)
    err = 0.0
    if pf.coarse is not None:
        err = abs(value - _mixed_value(pf.coarse, float(alpha), p, ptilde, magnitude, r_cut, normalization))
    return NormResult(value, err)


def time_mixed_norm(
    snapshots: Sequence[Tuple[float, PolarField]],
    alpha: RationalLike,
    s: Exponent,
    p: Exponent,
    ptilde: Exponent,
    parabola: Optional[float] = None,
    magnitude: AngularMagnitude = AngularMagnitude.EUCLIDEAN,
) -> NormResult:
    """
    || |x|^alpha u ||_{L^s_t L^p_r L^ptilde_omega} by the composite trapezoid rule.

    parabola=R restricts each snapshot to |x| <= R sqrt(t).
    """
    s = Exponent.of(s)
    s.require_at_least_one("s")
    times = np.array([t for t, _ in snapshots], dtype=float)
    if len(snapshots) == 0 or (not s.is_inf and len(snapshots) < 2):
        raise InsufficientDataError(
            f"time norm with s={s} needs at least 2 snapshots, got {len(snapshots)}", field_name="snapshots"
        )
    if np.any(np.diff(times) <= 0):
        raise DomainError("snapshot times must be strictly increasing", field_name="snapshots")
    if parabola is not None and times[0] < 0:
        raise DomainError("parabola masks need t >= 0", field_name="snapshots")

    results = [
        mixed_norm(
            pf,
            alpha,
            p,
            ptilde,
            magnitude,
            r_cut=None if parabola is None else parabola * float(np.sqrt(t)),
        )
        for t, pf in snapshots
    ]
    values = np.array([r.value for r in results])
    errors = np.array([r.quadrature_error_estimate for r in results])

    if s.is_inf:
        k = int(np.argmax(values))
        return NormResult(float(values[k]), float(errors[k]))

    e = float(s.value)
    value = float(trapezoid(values**e, times) ** (1.0 / e))
    perturbed = float(trapezoid((values + errors) ** e, times) ** (1.0 / e))
    return NormResult(value, abs(perturbed - value))


def cartesian_lp(f: CartesianField, p: Exponent) -> float:
    """Riemann sum h^n sum |f|^p, Euclidean magnitude across components"""
    p = Exponent.of(p)
    mag = f.magnitude()
    if p.is_inf:
        return float(np.max(mag))
    e = float(p.value)
    return float((f.spacing**f.n * np.sum(mag**e)) ** (1.0 / e))
