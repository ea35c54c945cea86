"""
Weighted decay experiments for the heat and Oseen operators.

Each report measures || |x|^beta d^eta T(t) u0 || on a t-grid, compares it
with || |x|^alpha u0 || t^{-rate}, fits the log-log slope on the asymptotic
window and judges the estimate. Localized variants restrict the target norm
to the parabola |x| <= R sqrt(t).
Follows SRP: Decay experiments only.
"""

import logging
import math
from functools import partial
from typing import Callable, Dict, Iterable, Optional, Sequence

import numpy as np

from src.common.config import settings
from src.common.errors import DomainError, InadmissibleIndicesError
from src.common.types import EstimateKind
from src.decay_lab.fitting import fit_slope
from src.decay_lab.reports import DecayReport, ParabolaMask, judge
from src.grids_norms.fields import CartesianField, dilate
from src.grids_norms.norms import mixed_norm
from src.grids_norms.polar import PolarGrid, default_polar_grid
from src.grids_norms.resample import resample
from src.index_calculus.estimates import admissible_estimate
from src.index_calculus.indices import Admissibility, EstimateIndices
from src.operators.multipliers import heat_evolve, oseen_apply, spectral_derivative
from src.orchestrator.job_orchestrator import run_jobs

logger = logging.getLogger(__name__)

Evolution = Callable[[CartesianField, float], CartesianField]


def require_admissible(kind: EstimateKind, e: EstimateIndices) -> Admissibility:
    adm = admissible_estimate(kind, e)
    if not adm.admissible:
        raise InadmissibleIndicesError(adm)
    return adm


def time_cap(half_width: float) -> float:
    """Largest t for which box truncation stays negligible"""
    return half_width**2 / settings.box_time_divisor


def default_t_grid(half_width: float, samples: int = 17) -> np.ndarray:
    """Log-spaced samples over the last asymptotic_decades decades below the cap"""
    t_max = time_cap(half_width)
    return np.geomspace(t_max / 10.0**settings.asymptotic_decades, t_max, samples)


def check_t_grid(t_grid: Iterable[float], half_width: float) -> np.ndarray:
    t = np.asarray(list(t_grid), dtype=float)
    if t.size == 0 or np.any(t <= 0):
        raise DomainError("t-grid must be non-empty and positive", field_name="t_grid")
    cap = time_cap(half_width)
    if t.max() > cap * (1 + 1e-12):
        raise DomainError(f"t = {t.max()} beyond box validity t <= L^2/{settings.box_time_divisor} = {cap}", field_name="t_grid")
    return t


def apply_eta(f: CartesianField, eta: int) -> CartesianField:
    """d^eta along x_1"""
    if eta == 0:
        return f
    return spectral_derivative(f, (eta,) + (0,) * (f.n - 1))


def source_norm(u0: CartesianField, e: EstimateIndices, grid: PolarGrid) -> float:
    return mixed_norm(resample(u0, grid), e.alpha, e.p, e.ptilde).value


def heat_flow(u0: CartesianField, t: float) -> CartesianField:
    return heat_evolve(u0, t)


def oseen_flow(F: CartesianField, t: float) -> CartesianField:
    return oseen_apply(F, t)


def _target_norms(
    data: CartesianField,
    e: EstimateIndices,
    grid: PolarGrid,
    evolve: Evolution,
    radii: Sequence[Optional[float]],
    t: float,
) -> list:
    pf = resample(apply_eta(evolve(data, t), e.eta), grid)
    return [
        mixed_norm(pf, e.beta, e.q, e.qtilde, r_cut=None if R is None else ParabolaMask(R).r_cut(t)).value
        for R in radii
    ]


def weighted_lhs(
    data: CartesianField,
    e: EstimateIndices,
    t_grid: Sequence[float],
    evolve: Evolution = heat_flow,
    radii: Sequence[Optional[float]] = (None,),
    grid: Optional[PolarGrid] = None,
) -> np.ndarray:
    """Target norms, shape (len(radii), len(t_grid)); None means unmasked"""
    grid = grid or default_polar_grid(data.n, data.half_width)
    jobs = [partial(_target_norms, data, e, grid, evolve, list(radii), float(t)) for t in t_grid]
    return np.array(run_jobs(jobs, settings.jobs)).T


def _score(report: DecayReport) -> None:
    fit = fit_slope(report.t_samples, report.lhs, scale=report.scale)
    report.fitted_slope, report.slope_stderr = fit.slope, fit.stderr
    ratios = report.ratios()
    report.ratio_sup = float(np.max(ratios))
    report.ratio_first = float(ratios[0])
    degenerate = fit.slope == -math.inf
    report.criteria["slope"] = fit.slope <= -float(report.predicted_rate) + settings.slope_tolerance
    report.criteria["ratio finite"] = math.isfinite(report.ratio_sup)
    report.criteria["ratio growth"] = degenerate or report.ratio_sup <= settings.ratio_growth_limit * report.ratio_first
    report.extra["fit_window_start"] = fit.t_start
    report.extra["fit_points"] = fit.points


def _decay_report(
    kind: EstimateKind,
    data: CartesianField,
    e: EstimateIndices,
    t_grid: Optional[Sequence[float]],
    evolve: Evolution,
) -> DecayReport:
    adm = require_admissible(kind, e)
    t = check_t_grid(default_t_grid(data.half_width) if t_grid is None else t_grid, data.half_width)
    grid = default_polar_grid(data.n, data.half_width)
    rhs = source_norm(data, e, grid)
    lhs = weighted_lhs(data, e, t, evolve, grid=grid)[0]
    report = DecayReport(e, kind, adm, t, lhs, rhs, adm.derived["rate"])
    _score(report)
    logger.info("%s: slope %.4f vs rate %s", kind.value, report.fitted_slope, report.predicted_rate)
    return judge(report)


def heat_decay_report(u0: CartesianField, e: EstimateIndices, t_grid: Optional[Sequence[float]] = None) -> DecayReport:
    """|| |x|^beta d^eta e^{t Laplacian} u0 || against || |x|^alpha u0 || t^{-rate}"""
    return _decay_report(EstimateKind.HEAT_DECAY, u0, e, t_grid, heat_flow)


def oseen_decay_report(F: CartesianField, e: EstimateIndices, t_grid: Optional[Sequence[float]] = None) -> DecayReport:
    """Same experiment for e^{t Laplacian} P div F with F a tensor field (m = n^2)"""
    return _decay_report(EstimateKind.OSEEN_DECAY, F, e, t_grid, oseen_flow)


def localized_decay_report(
    data: CartesianField,
    e: EstimateIndices,
    R: float,
    t_grid: Optional[Sequence[float]] = None,
    oseen: bool = False,
) -> DecayReport:
    """
    Parabola-localized decay with factor R^{-Lambda_gap}.

    The R-doubling criterion reruns the mask at 2R on the same evolved fields:
    sup ratio(2R) / sup ratio(R) <= 2^{-Lambda_gap} (1 + slack).
    """
    kind = EstimateKind.LOCALIZED_OSEEN if oseen else EstimateKind.LOCALIZED
    adm = require_admissible(kind, e)
    mask = ParabolaMask(R)
    t = check_t_grid(default_t_grid(data.half_width) if t_grid is None else t_grid, data.half_width)
    grid = default_polar_grid(data.n, data.half_width)
    rhs = source_norm(data, e, grid)
    lhs, doubled = weighted_lhs(data, e, t, oseen_flow if oseen else heat_flow, radii=(mask.R, 2 * mask.R), grid=grid)

    exponent = float(adm.derived["localization_exponent"])
    report = DecayReport(e, kind, adm, t, lhs, rhs, adm.derived["rate"], R=mask.R, localized_factor=mask.R**exponent)
    _score(report)

    rate = float(report.predicted_rate)
    sup_r = float(np.max(lhs * t**rate))
    sup_2r = float(np.max(doubled * t**rate))
    growth = sup_2r / sup_r if sup_r > 0 else 1.0
    allowed = 2.0**exponent * (1.0 + settings.localized_growth_slack)
    report.criteria["R doubling"] = growth <= allowed
    report.extra.update({"doubling_growth": growth, "doubling_allowed": allowed, "lhs_doubled_R": doubled.tolist()})
    return judge(report)


def dilation_ratio_sups(
    report_fn: Callable[..., DecayReport],
    data: CartesianField,
    e: EstimateIndices,
    t_grid: Optional[Sequence[float]] = None,
    lambdas: Sequence[float] = (1, 2),
    **kwargs,
) -> Dict[float, float]:
    """
    ratio_sup of the same experiment after dilating the data by each lambda.

    Time samples scale with lambda^2 so the discrete experiment is exactly
    covariant.
    """
    base = default_t_grid(data.half_width) if t_grid is None else np.asarray(t_grid, dtype=float)
    out = {}
    for lam in lambdas:
        out[lam] = report_fn(dilate(data, lam), e, base * lam**2, **kwargs).ratio_sup
    return out
