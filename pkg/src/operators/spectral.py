"""
Discrete Fourier representation of periodic box fields.

Wavenumbers are xi = (pi/L) k, k in [-N/2, N/2). Odd-order multipliers
(derivatives, projector, Riesz transforms) use the wavenumbers with the
Nyquist component zeroed so that real fields stay real.
Follows SRP: Transforms and wavenumber tables only.
"""

import logging
import threading
from dataclasses import dataclass, replace
from typing import Dict, Tuple

import numpy as np
from scipy import fft as sfft

from src.common.config import settings
from src.grids_norms.fields import CartesianField

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Wavenumbers:
    """Broadcastable wavenumber arrays for one (n, N, L) geometry"""

    n: int
    points: int
    half_width: float
    full: Tuple[np.ndarray, ...]
    odd: Tuple[np.ndarray, ...]
    k2: np.ndarray
    k2_odd: np.ndarray

    def odd_inverse_k2(self) -> np.ndarray:
        """1/|xi|^2 on the odd wavenumbers, 0 where they vanish"""
        inv = np.zeros_like(self.k2_odd)
        nonzero = self.k2_odd > 0
        inv[nonzero] = 1.0 / self.k2_odd[nonzero]
        return inv


_cache: Dict[Tuple[int, int, float], Wavenumbers] = {}
_cache_lock = threading.Lock()


def _build(n: int, points: int, half_width: float) -> Wavenumbers:
    k = sfft.fftfreq(points, 1.0 / points)
    xi = (np.pi / half_width) * k
    xi_odd = xi.copy()
    xi_odd[points // 2] = 0.0  # Nyquist

    def spread(vec: np.ndarray, axis: int) -> np.ndarray:
        shape = [1] * n
        shape[axis] = points
        return vec.reshape(shape)

    full = tuple(spread(xi, a) for a in range(n))
    odd = tuple(spread(xi_odd, a) for a in range(n))
    k2 = sum(x**2 for x in full)
    k2_odd = sum(x**2 for x in odd)
    return Wavenumbers(n, points, half_width, full, odd, k2, k2_odd)


def wavenumbers(n: int, points: int, half_width: float) -> Wavenumbers:
    """Cached wavenumber tables; safe to call from worker threads"""
    key = (n, points, float(half_width))
    with _cache_lock:
        table = _cache.get(key)
        if table is None:
            table = _build(n, points, half_width)
            _cache[key] = table
            logger.debug("wavenumber table built for n=%d N=%d L=%s", n, points, half_width)
    return table


def clear_wavenumber_cache() -> None:
    with _cache_lock:
        _cache.clear()


@dataclass(frozen=True, eq=False)
class SpectralField:
    """
    Fourier coefficients of every component of a CartesianField.

    coefficients has shape (m, N, ..., N) in FFT order.
    """

    n: int
    half_width: float
    coefficients: np.ndarray

    @property
    def points(self) -> int:
        return self.coefficients.shape[1]

    @property
    def components(self) -> int:
        return self.coefficients.shape[0]

    @property
    def axes(self) -> Tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def wavenumbers(self) -> Wavenumbers:
        return wavenumbers(self.n, self.points, self.half_width)

    @classmethod
    def from_field(cls, f: CartesianField) -> "SpectralField":
        axes = tuple(range(1, f.n + 1))
        return cls(f.n, f.half_width, sfft.fftn(f.values, axes=axes, workers=settings.fft_workers))

    def to_field(self) -> CartesianField:
        values = sfft.ifftn(self.coefficients, axes=self.axes, workers=settings.fft_workers)
        return CartesianField(self.n, self.half_width, np.ascontiguousarray(values.real))

    def with_coefficients(self, coefficients: np.ndarray) -> "SpectralField":
        return replace(self, coefficients=coefficients)

    def multiply(self, symbol: np.ndarray) -> "SpectralField":
        """Apply one scalar symbol to every component"""
        return self.with_coefficients(self.coefficients * symbol[None, ...])

    def norm2(self) -> float:
        """L2 norm of the underlying field via Parseval"""
        h = 2.0 * self.half_width / self.points
        total = self.points**self.n
        return float(np.sqrt(h**self.n * np.sum(np.abs(self.coefficients) ** 2) / total))

