"""
Time-integral estimates: the heat flow in L^r_t and the Duhamel term.

Both estimates are scale invariant and non-asymptotic, so each report
measures the constant lhs / rhs for the data and for dilated copies of it,
and passes when the constants agree within settings.dilation_stability_factor.
Follows SRP: Integral experiments only.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.common.config import settings
from src.common.errors import InsufficientDataError
from src.common.types import EstimateKind
from src.decay_lab.decay import apply_eta, require_admissible, source_norm, time_cap
from src.decay_lab.reports import DecayReport, ParabolaMask, judge
from src.grids_norms.fields import CartesianField, PolarField, dilate
from src.grids_norms.norms import mixed_norm, time_mixed_norm
from src.grids_norms.polar import default_polar_grid
from src.grids_norms.resample import resample
from src.index_calculus.indices import EstimateIndices
from src.operators.multipliers import duhamel_integrals, heat_evolve
from src.orchestrator.job_orchestrator import run_jobs

logger = logging.getLogger(__name__)

Snapshots = Sequence[Tuple[float, CartesianField]]
DEFAULT_DILATIONS = (1, 2, 4)


@dataclass(frozen=True)
class ConstantProbe:
    """lhs, rhs and their ratio for one dilation"""

    lam: float
    lhs: float
    rhs: float
    profile: Tuple[float, ...] = ()

    @property
    def ratio(self) -> float:
        if self.rhs == 0:
            return 0.0
        return self.lhs / self.rhs

    def to_dict(self) -> dict:
        return {"lambda": self.lam, "lhs": self.lhs, "rhs": self.rhs, "ratio": self.ratio}


def quadratic_times(start: float, stop: float, samples: int) -> np.ndarray:
    """Samples clustered at the start, t_k = start + (stop - start)(k/K)^2"""
    return start + (stop - start) * (np.arange(samples) / (samples - 1)) ** 2


def _stability(probes: List[ConstantProbe]) -> Tuple[bool, float]:
    ratios = np.array([p.ratio for p in probes])
    if np.all(ratios == 0):
        return True, 1.0
    if np.any(ratios <= 0):
        return False, float("inf")
    spread = float(ratios.max() / ratios.min())
    return spread <= settings.dilation_stability_factor, spread


def _assemble(
    kind: EstimateKind,
    e: EstimateIndices,
    adm,
    times: np.ndarray,
    probes: List[ConstantProbe],
    R: Optional[float],
    factor: Optional[float],
) -> DecayReport:
    base = probes[0]
    report = DecayReport(
        e,
        kind,
        adm,
        times,
        np.array(base.profile),
        base.rhs,
        Fraction(0),
        R=R,
        localized_factor=factor,
    )
    ratios = [p.ratio for p in probes]
    report.ratio_sup = float(max(ratios))
    report.ratio_first = float(ratios[0])
    stable, spread = _stability(probes)
    report.criteria["constant finite"] = bool(np.isfinite(report.ratio_sup))
    report.criteria["dilation stability"] = stable
    report.extra.update({"dilations": [p.to_dict() for p in probes], "spread": spread, "time_norm": base.lhs})
    return judge(report)


def _heat_probe(
    u0: CartesianField,
    e: EstimateIndices,
    times: np.ndarray,
    R: Optional[float],
    lam: float,
) -> ConstantProbe:
    data = dilate(u0, lam)
    grid = default_polar_grid(data.n, data.half_width)
    scaled = times * lam**2
    snaps = [(float(t), resample(apply_eta(heat_evolve(data, float(t)), e.eta), grid)) for t in scaled]
    lhs = time_mixed_norm(snaps, e.beta, e.r, e.q, e.qtilde, parabola=R).value
    profile = tuple(
        mixed_norm(pf, e.beta, e.q, e.qtilde, r_cut=None if R is None else ParabolaMask(R).r_cut(t)).value
        for t, pf in snaps
    )
    return ConstantProbe(lam, lhs, source_norm(data, e, grid), profile)


def integral_estimate_report(
    u0: CartesianField,
    e: EstimateIndices,
    time_window: Optional[Tuple[float, float]] = None,
    R: Optional[float] = None,
    dilations: Sequence[float] = DEFAULT_DILATIONS,
    samples: int = 33,
) -> DecayReport:
    """
    || |x|^beta d^eta e^{t Laplacian} u0 ||_{L^r_t L^q L^qtilde} / || |x|^alpha u0 ||_{L^p L^ptilde}.

    With R the target norm is restricted to the parabola and the constant is
    divided by R^{-Lambda_gap}.
    """
    kind = EstimateKind.INTEGRAL if R is None else EstimateKind.INTEGRAL_LOCALIZED
    adm = require_admissible(kind, e)
    start, stop = time_window if time_window is not None else (0.0, time_cap(u0.half_width))
    times = quadratic_times(start, stop, samples)
    factor = None
    if R is not None:
        factor = ParabolaMask(R).R ** float(adm.derived["localization_exponent"])

    probes = run_jobs([partial(_heat_probe, u0, e, times, R, lam) for lam in dilations], settings.jobs)
    if factor:
        probes = [ConstantProbe(p.lam, p.lhs, p.rhs * factor, p.profile) for p in probes]
    return _assemble(kind, e, adm, times, probes, R, factor)


def dilate_trajectory(snapshots: Snapshots, lam: float) -> List[Tuple[float, CartesianField]]:
    """u_lam(t, x) = lam^{-1} u(t / lam^2, x / lam)"""
    return [(t * lam**2, dilate(u, lam).scaled(1.0 / lam)) for t, u in snapshots]


def _polar_snapshots(times: Sequence[float], fields: Sequence[CartesianField], eta: int) -> List[Tuple[float, PolarField]]:
    grid = default_polar_grid(fields[0].n, fields[0].half_width)
    return [(float(t), resample(apply_eta(f, eta), grid)) for t, f in zip(times, fields)]


def measure_duhamel(snapshots: Snapshots, e: EstimateIndices, lam: float = 1.0) -> ConstantProbe:
    """
    lhs = || |x|^beta d^eta int_0^t e^{(t-s) Laplacian} P div (u ⊗ u) ds ||_{L^r_t L^q L^qtilde},
    rhs = || |x|^alpha u ||_{L^s_t L^p L^ptilde}^2.
    """
    traj = dilate_trajectory(snapshots, lam) if lam != 1 else list(snapshots)
    times = [t for t, _ in traj]
    fields = [u for _, u in traj]
    duhamel = duhamel_integrals(times, [CartesianField.tensor_product(u) for u in fields])

    d_snaps = _polar_snapshots(times, duhamel, e.eta)
    u_snaps = _polar_snapshots(times, fields, 0)
    lhs = time_mixed_norm(d_snaps, e.beta, e.r, e.q, e.qtilde).value
    rhs = time_mixed_norm(u_snaps, e.alpha, e.s, e.p, e.ptilde).value ** 2
    profile = tuple(mixed_norm(pf, e.beta, e.q, e.qtilde).value for _, pf in d_snaps)
    return ConstantProbe(lam, lhs, rhs, profile)


def duhamel_estimate_report(
    snapshots: Snapshots,
    e: EstimateIndices,
    dilations: Sequence[float] = DEFAULT_DILATIONS,
    diagonal: bool = False,
) -> DecayReport:
    """Measured Duhamel constant d = lhs / rhs and its stability under NS scaling"""
    kind = EstimateKind.DUHAMEL_DIAGONAL if diagonal else EstimateKind.DUHAMEL
    adm = require_admissible(kind, e)
    if len(snapshots) < settings.min_duhamel_snapshots:
        raise InsufficientDataError(
            f"Duhamel estimate needs >= {settings.min_duhamel_snapshots} snapshots, got {len(snapshots)}",
            field_name="snapshots",
        )
    probes = run_jobs([partial(measure_duhamel, snapshots, e, lam) for lam in dilations], settings.jobs)
    times = np.array([t for t, _ in snapshots], dtype=float)
    logger.info("duhamel constants: %s", [round(p.ratio, 6) for p in probes])
    return _assemble(kind, e, adm, times, probes, None, None)


def dilation_constants(report: DecayReport) -> Dict[float, float]:
    return {d["lambda"]: d["ratio"] for d in report.extra.get("dilations", [])}
