"""
Exact scaling identities of the heat and Oseen operators.

    e^{t Laplacian} phi            = S_sqrt(t) e^{Laplacian} S_{1/sqrt(t)} phi
    e^{t Laplacian} P div F        = t^{-1/2} S_sqrt(t) e^{Laplacian} P div S_{1/sqrt(t)} F

checked on the grid with S_lam f(x) = f(x / lam).
Follows SRP: Scaling checks only.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.common.errors import DomainError
from src.common.utils import is_power_of_two
from src.grids_norms.fields import CartesianField, dilate
from src.operators.multipliers import heat_evolve, oseen_apply


@dataclass(frozen=True)
class ScalingCheck:
    """Relative L2 errors of both identities"""

    t: float
    heat_error: float
    oseen_error: float

    def as_pair(self) -> Tuple[float, float]:
        return self.heat_error, self.oseen_error

    def to_dict(self) -> dict:
        return {"t": self.t, "heat_error": self.heat_error, "oseen_error": self.oseen_error}


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    scale = float(np.linalg.norm(a))
    diff = float(np.linalg.norm(a - b))
    return diff / scale if scale > 0 else diff


def probe_tensor(u0: CartesianField) -> CartesianField:
    """u0 ⊗ u0 for velocities; u0 in every slot for scalars"""
    if u0.components == u0.n:
        return CartesianField.tensor_product(u0)
    if u0.components == 1:
        return u0.with_values(np.repeat(u0.values, u0.n * u0.n, axis=0))
    if u0.components == u0.n * u0.n:
        return u0
    raise DomainError(f"cannot build a tensor from {u0.components} components", field_name="u0")


def scaling_identity_check(u0: CartesianField, t: float = 4.0) -> ScalingCheck:
    """Both identities at time t with lam = sqrt(t); lam must be a power of two"""
    lam = math.sqrt(t) if t > 0 else 0.0
    if not is_power_of_two(lam) or lam * lam != t:
        raise DomainError(f"sqrt(t) must be a power of two for a grid-compatible dilation, got t={t}", field_name="t")

    heat_direct = heat_evolve(u0, t)
    heat_scaled = dilate(heat_evolve(dilate(u0, 1 / lam), 1.0), lam)

    F = probe_tensor(u0)
    oseen_direct = oseen_apply(F, t)
    oseen_scaled = dilate(oseen_apply(dilate(F, 1 / lam), 1.0), lam).scaled(1 / lam)

    return ScalingCheck(
        t,
        _relative(heat_direct.values, heat_scaled.values),
        _relative(oseen_direct.values, oseen_scaled.values),
    )
