"""
Diagnostics of a trajectory: criterion norms, pressure recovery and energy.

Follows SRP: Read-only trajectory diagnostics.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.common.errors import DomainError
from src.grids_norms.fields import CartesianField, NormResult
from src.grids_norms.norms import time_mixed_norm
from src.grids_norms.polar import PolarGrid, default_polar_grid
from src.grids_norms.resample import resample
from src.index_calculus.criteria import check_global_criterion, check_local_criterion
from src.index_calculus.indices import Admissibility, IndexTuple, check_scaling
from src.ns_duhamel.picard import Trajectory
from src.operators.multipliers import poisson_pressure, riesz_pressure
from src.operators.spectral import SpectralField

logger = logging.getLogger(__name__)


def monitor_criterion(
    traj: Trajectory, t: IndexTuple, grid: Optional[PolarGrid] = None
) -> Tuple[NormResult, Admissibility]:
    """
    || |x|^alpha u ||_{L^s_T L^p L^ptilde} over the trajectory with the global verdict.

    The local verdict is attached to derived as local_admissible/local_violations.
    """
    if not check_scaling(t):
        raise DomainError(f"tuple {t.to_dict()} is off the scaling relation 2/s + n/p = 1 - alpha", field_name="tuple")
    first = traj.snapshots[0][1]
    if first.n != t.n:
        raise DomainError(f"tuple dimension {t.n} does not match trajectory dimension {first.n}", field_name="n")
    grid = grid or default_polar_grid(first.n, first.half_width)
    polar = [(tk, resample(u, grid)) for tk, u in traj.snapshots]
    result = time_mixed_norm(polar, t.alpha, t.s, t.p, t.ptilde)

    adm = check_global_criterion(t)
    local = check_local_criterion(t)
    adm.derived["local_admissible"] = local.admissible
    adm.derived["local_violations"] = list(local.violations)
    logger.info("criterion %s: norm %.6e (global %s)", t.to_dict(), result.value, adm.admissible)
    return result, adm


def _relative_gap(a: CartesianField, b: CartesianField) -> float:
    scale = float(np.linalg.norm(a.values))
    diff = float(np.linalg.norm(a.values - b.values))
    return diff / scale if scale > 0 else diff


def pressure_consistency(traj: Trajectory) -> float:
    """Max relative L2 gap between Riesz and Poisson pressure recovery"""
    return max(_relative_gap(riesz_pressure(u), poisson_pressure(u)) for u in traj.fields)


def divergence_residual(u: CartesianField) -> float:
    """|| xi . u_hat || / || |xi| u_hat ||, zero for the zero field"""
    sf = SpectralField.from_field(u)
    w = sf.wavenumbers
    div = sum(w.odd[j] * sf.coefficients[j] for j in range(u.n))
    grad = np.sqrt(np.sum(w.k2_odd[None, ...] * np.abs(sf.coefficients) ** 2))
    if grad == 0:
        return 0.0
    return float(np.sqrt(np.sum(np.abs(div) ** 2)) / grad)


@dataclass(frozen=True)
class EnergyRow:
    t: float
    energy: float
    dissipation: float
    defect: float

    def to_dict(self) -> dict:
        return {"t": self.t, "energy": self.energy, "dissipation": self.dissipation, "defect": self.defect}


def _log_mean(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(b - a) / (log b - log a), with L(a, a) = a and L(a, 0) = 0"""
    out = np.zeros_like(a)
    both = (a > 0) & (b > 0)
    close = both & np.isclose(a, b, rtol=1e-9, atol=0.0)
    far = both & ~close
    out[close] = 0.5 * (a[close] + b[close])
    out[far] = (b[far] - a[far]) / (np.log(b[far]) - np.log(a[far]))
    return out


def energy_report(traj: Trajectory) -> List[EnergyRow]:
    """
    E(t) = 1/2 ||u||^2, D(t) = int_0^t ||grad u||^2, defect = E + D - E(0).

    Between snapshots each Fourier mode's |u_hat|^2 is interpolated
    exponentially, so D is exact for the heat flow.
    """
    first = traj.snapshots[0][1]
    spectra = [SpectralField.from_field(u) for u in traj.fields]
    w = spectra[0].wavenumbers
    h = 2.0 * first.half_width / first.points
    norm = h**first.n / first.points**first.n
    power = [np.sum(np.abs(sf.coefficients) ** 2, axis=0) for sf in spectra]

    rows = []
    e0 = 0.5 * norm * float(np.sum(power[0]))
    dissipation = 0.0
    for k, (tk, _) in enumerate(traj.snapshots):
        if k > 0:
            dt = tk - traj.snapshots[k - 1][0]
            dissipation += norm * dt * float(np.sum(w.k2 * _log_mean(power[k - 1], power[k])))
        energy = 0.5 * norm * float(np.sum(power[k]))
        rows.append(EnergyRow(float(tk), energy, dissipation, energy + dissipation - e0))
    return rows


def max_defect(rows: List[EnergyRow]) -> float:
    """Largest |defect| relative to E(0); zero when E(0) = 0"""
    e0 = rows[0].energy
    worst = max(abs(r.defect) for r in rows)
    return worst / e0 if e0 > 0 else worst
