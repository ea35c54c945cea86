"""
Physical-space probe of the Oseen kernel.

K_{ijk}(t, .) is recovered by applying the Oseen multiplier to a discrete
delta placed in the (j, k) slot of a symmetric tensor, and compared with
the envelope C t^{-(n+1)/2} (1 + |x|/sqrt(t))^{-(n+1)}.
Follows SRP: Kernel sampling and envelope fitting only.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.common.errors import DomainError
from src.grids_norms.fields import CartesianField
from src.operators.multipliers import oseen_apply

logger = logging.getLogger(__name__)


def delta_tensor(n: int, half_width: float, points: int, j: int, k: int) -> CartesianField:
    """Symmetrized unit mass at the origin in slots (j, k) and (k, j)"""
    f = CartesianField.zeros(n, half_width, points, n * n)
    values = f.values.copy()
    h = f.spacing
    centre = (j * n + k,) + (points // 2,) * n
    mirror = (k * n + j,) + (points // 2,) * n
    values[centre] += 0.5 / h**n
    values[mirror] += 0.5 / h**n
    return f.with_values(values)


def kernel_slots(n: int, half_width: float, points: int, t: float) -> np.ndarray:
    """K[i, j, k, x...] for every slot pair"""
    out = np.zeros((n, n, n) + (points,) * n)
    for j in range(n):
        for k in range(j, n):
            values = oseen_apply(delta_tensor(n, half_width, points, j, k), t).values
            out[:, j, k] = values
            out[:, k, j] = values
    return out


def envelope(t: float, radius: np.ndarray, n: int) -> np.ndarray:
    return t ** (-(n + 1) / 2) * (1.0 + radius / np.sqrt(t)) ** (-(n + 1))


@dataclass(frozen=True, eq=False)
class KernelProbe:
    """
    Sampled kernel magnitudes against the fitted envelope.

    magnitude is the Frobenius norm over (i, j, k).
    """

    t: float
    n: int
    points: np.ndarray
    magnitude: np.ndarray
    bound: np.ndarray
    constant: float

    @property
    def radii(self) -> np.ndarray:
        return np.linalg.norm(self.points, axis=-1)

    def max_excess(self) -> float:
        """max |K| / bound over the samples"""
        mask = self.bound > 0
        return float(np.max(self.magnitude[mask] / self.bound[mask])) if mask.any() else 0.0

    def rows(self) -> List[Tuple[Tuple[float, ...], float, float]]:
        return [(tuple(p), float(m), float(b)) for p, m, b in zip(self.points, self.magnitude, self.bound)]

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "n": self.n,
            "constant": self.constant,
            "max_excess": self.max_excess(),
            "rows": [{"x": list(x), "kernel": m, "bound": b} for x, m, b in self.rows()],
        }


def oseen_kernel_probe(
    t: float,
    n: int = 3,
    half_width: float = 12.0,
    points: int = 64,
    sample_points: Optional[np.ndarray] = None,
    fit_radius: Optional[float] = None,
) -> KernelProbe:
    """
    Probe |K(t, x)| at grid nodes and fit C on |x| <= fit_radius (default L/4).

    K(t, 0) = 0 by oddness, so C is the largest ratio |K|/envelope over the
    inner window rather than a value at the origin. Sample points are snapped
    to the nearest grid node; by default the nodes on the positive x_1 axis
    with |x| <= L/2.
    """
    if t <= 0:
        raise DomainError(f"time must be > 0, got {t}", field_name="t")
    fit_radius = half_width / 4 if fit_radius is None else fit_radius

    slots = kernel_slots(n, half_width, points, t)
    magnitude = np.sqrt(np.sum(slots**2, axis=(0, 1, 2)))
    probe = CartesianField.zeros(n, half_width, points)
    radius = np.broadcast_to(probe.radius(), magnitude.shape)
    env = envelope(t, radius, n)

    inner = radius <= fit_radius
    constant = float(np.max(magnitude[inner] / env[inner]))

    h = probe.spacing
    if sample_points is None:
        steps = np.arange(0, int(half_width / 2 / h) + 1)
        sample_points = np.zeros((steps.size, n))
        sample_points[:, 0] = steps * h
    sample_points = np.atleast_2d(np.asarray(sample_points, dtype=float))
    idx = np.clip(np.rint((sample_points + half_width) / h).astype(int), 0, points - 1)
    snapped = -half_width + idx * h
    picked = magnitude[tuple(idx.T)]
    bound = constant * envelope(t, np.linalg.norm(snapped, axis=-1), n)
    logger.debug("kernel probe t=%s: C=%.4e", t, constant)
    return KernelProbe(t, n, snapped, picked, bound, constant)


def self_similarity_error(
    t: float = 1.0,
    n: int = 3,
    half_width: float = 12.0,
    points: int = 64,
    window: Optional[float] = None,
) -> float:
    """
    max |t^{(n+1)/2} K(t, y) - (4t)^{(n+1)/2} K(4t, 2y)| / max |t^{(n+1)/2} K(t, y)|
    over grid nodes with |y| <= window (default L/8).
    """
    if t <= 0:
        raise DomainError(f"time must be > 0, got {t}", field_name="t")
    window = half_width / 8 if window is None else window
    h = 2.0 * half_width / points
    reach = int(window / h)
    centre = points // 2
    offsets = np.arange(-reach, reach + 1)

    near = np.ix_(*([centre + offsets] * n))
    far = np.ix_(*([centre + 2 * offsets] * n))
    small = t ** ((n + 1) / 2) * kernel_slots(n, half_width, points, t)[(slice(None),) * 3 + near]
    large = (4 * t) ** ((n + 1) / 2) * kernel_slots(n, half_width, points, 4 * t)[(slice(None),) * 3 + far]

    grid = np.meshgrid(*([offsets * h] * n), indexing="ij")
    inside = np.sqrt(sum(x**2 for x in grid)) <= window
    scale = np.max(np.abs(small[..., inside]))
    return float(np.max(np.abs(small - large)[..., inside]) / scale)
