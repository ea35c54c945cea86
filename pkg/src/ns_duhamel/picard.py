"""
Mild solutions by Picard iteration on the integral equation

    u(t) = e^{t Laplacian} u0 - int_0^t e^{(t-s) Laplacian} P div (u ⊗ u)(s) ds

over a fixed snapshot grid.
Follows SRP: Fixed-point iteration only.
"""

import logging
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.common.config import settings
from src.common.errors import DomainError, GridError
from src.common.types import SolveStatus
from src.grids_norms.fields import CartesianField
from src.ns_duhamel.datum import SimConfig, make_datum
from src.operators.multipliers import duhamel_integrals, heat_evolve
from src.operators.spectral import SpectralField
from src.orchestrator.job_orchestrator import run_jobs

logger = logging.getLogger(__name__)


@dataclass
class Trajectory:
    """
    Velocity snapshots (t_k, u(t_k)) with the run's bookkeeping.

    Passing criteria:
    - t_0 = 0 and times strictly increasing
    - every snapshot is a velocity (m = n) on one common grid
    """

    snapshots: List[Tuple[float, CartesianField]]
    datum: Dict[str, Any] = field(default_factory=dict)
    iterations: int = 0
    contraction: List[float] = field(default_factory=list)
    status: SolveStatus = SolveStatus.CONVERGED

    def __post_init__(self):
        if not self.snapshots:
            raise DomainError("trajectory needs at least one snapshot", field_name="snapshots")
        times = self.times
        if times[0] != 0:
            raise DomainError(f"trajectory must start at t = 0, got {times[0]}", field_name="snapshots")
        if np.any(np.diff(times) <= 0):
            raise DomainError("snapshot times must be strictly increasing", field_name="snapshots")
        first = self.snapshots[0][1]
        for _, u in self.snapshots:
            if u.components != u.n or (u.n, u.points, u.half_width) != (first.n, first.points, first.half_width):
                raise GridError("snapshots must be velocities on one common grid", field_name="snapshots")

    @property
    def times(self) -> np.ndarray:
        return np.array([t for t, _ in self.snapshots], dtype=float)

    @property
    def fields(self) -> List[CartesianField]:
        return [u for _, u in self.snapshots]

    @property
    def final(self) -> CartesianField:
        return self.snapshots[-1][1]

    def __len__(self) -> int:
        return len(self.snapshots)

    def scaled(self, factor: float) -> "Trajectory":
        return Trajectory([(t, u.scaled(factor)) for t, u in self.snapshots], dict(self.datum))

    def manifest(self) -> Dict[str, Any]:
        first = self.snapshots[0][1]
        return {
            "n": first.n,
            "N": first.points,
            "L": first.half_width,
            "times": self.times.tolist(),
            "datum": self.datum,
            "iterations": self.iterations,
            "contraction": list(self.contraction),
            "status": self.status.value,
        }


def _sup_l2(fields: Sequence[CartesianField]) -> float:
    return max(SpectralField.from_field(f).norm2() for f in fields)


def _sup_gap(a: Sequence[CartesianField], b: Sequence[CartesianField]) -> float:
    return max(SpectralField.from_field(x.with_values(x.values - y.values)).norm2() for x, y in zip(a, b))


def picard_step(times: Sequence[float], heat: Sequence[CartesianField], current: Sequence[CartesianField]) -> List[CartesianField]:
    """One sweep: heat flow minus the Duhamel term of the current iterate"""
    duhamel = duhamel_integrals(times, [CartesianField.tensor_product(u) for u in current])
    return [h.with_values(h.values - d.values) for h, d in zip(heat, duhamel)]


def _non_contractive(history: List[float], patience: int) -> bool:
    """True once the ratios have failed to decrease `patience` times in a row"""
    if len(history) <= patience:
        return False
    tail = history[-(patience + 1) :]
    return all(b >= a for a, b in zip(tail, tail[1:]))


def picard_solve(cfg: SimConfig, u0: Optional[CartesianField] = None) -> Trajectory:
    """
    Iterate from the heat flow u^0 until the relative sup-in-time L2 update
    drops below cfg.contraction_tol or cfg.picard_iters sweeps are spent.

    A run whose update ratios fail to decrease settings.non_contractive_patience
    times in a row stops with status NON_CONTRACTIVE.
    """
    u0 = make_datum(cfg) if u0 is None else u0
    if u0.components != u0.n:
        raise GridError(f"initial datum must be a velocity, got m = {u0.components}", field_name="u0")
    times = cfg.times()
    heat = run_jobs([partial(heat_evolve, u0, float(t)) for t in times], settings.jobs)

    current = list(heat)
    history: List[float] = []
    status = SolveStatus.MAX_ITERATIONS
    iterations = 0
    for k in range(cfg.picard_iters):
        iterations = k + 1
        try:
            with np.errstate(over="ignore", invalid="ignore"):
                updated = picard_step(times, heat, current)
                scale = _sup_l2(current)
                gap = _sup_gap(updated, current)
        except GridError:
            # iterate overflowed to non-finite values
            status = SolveStatus.NON_CONTRACTIVE
            logger.warning("picard iterate overflowed after %d sweeps", k)
            break
        ratio = gap / scale if scale > 0 else gap
        history.append(ratio)
        current = updated
        logger.debug("picard sweep %d: update ratio %.3e", iterations, ratio)
        if ratio < cfg.contraction_tol:
            status = SolveStatus.CONVERGED
            break
        if not np.isfinite(ratio) or _non_contractive(history, settings.non_contractive_patience):
            status = SolveStatus.NON_CONTRACTIVE
            logger.warning("picard iteration is not contracting after %d sweeps", iterations)
            break

    logger.info("picard %s after %d sweeps", status.value, iterations)
    return Trajectory(
        [(float(t), u) for t, u in zip(times, current)],
        cfg.descriptor(),
        iterations,
        history,
        status,
    )
