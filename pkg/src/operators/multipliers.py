"""
Fourier-multiplier operators on the periodic box.

Heat semigroup, derivatives, divergence, Leray projector, Riesz pressure and
the fused Oseen operator e^{t Laplacian} P div, plus the trapezoid recurrence
for Duhamel integrals built from it.
Follows SRP: Multiplier operators only.
"""

import logging
from typing import List, Sequence

import numpy as np

from src.common.errors import DomainError, GridError
from src.grids_norms.fields import CartesianField
from src.operators.spectral import SpectralField, Wavenumbers

logger = logging.getLogger(__name__)

MAX_DERIVATIVE_ORDER = 4


def _require_time(t: float, strict: bool) -> None:
    if t < 0 or (strict and t == 0):
        bound = "> 0" if strict else ">= 0"
        raise DomainError(f"time must be {bound}, got {t}", field_name="t")


def _require_components(f: CartesianField, expected: int, what: str) -> None:
    if f.components != expected:
        raise GridError(f"{what} needs {expected} components, got {f.components}", field_name="components")


def heat_symbol(w: Wavenumbers, t: float) -> np.ndarray:
    return np.exp(-w.k2 * t)


def heat_evolve(f: CartesianField, t: float) -> CartesianField:
    """e^{t Laplacian} f, componentwise"""
    _require_time(t, strict=False)
    if t == 0:
        return f
    sf = SpectralField.from_field(f)
    return sf.multiply(heat_symbol(sf.wavenumbers, t)).to_field()


def derivative_symbol(w: Wavenumbers, eta: Sequence[int]) -> np.ndarray:
    if len(eta) != w.n or any(e < 0 for e in eta):
        raise GridError(f"multi-index {tuple(eta)} invalid for n={w.n}", field_name="eta")
    if sum(eta) > MAX_DERIVATIVE_ORDER:
        raise GridError(f"derivative order {sum(eta)} exceeds {MAX_DERIVATIVE_ORDER}", field_name="eta")
    symbol = np.ones(w.k2.shape, dtype=complex)
    for axis, order in enumerate(eta):
        if order:
            symbol = symbol * (1j * w.odd[axis]) ** order
    return symbol


def spectral_derivative(f: CartesianField, eta: Sequence[int]) -> CartesianField:
    """d^eta f, componentwise"""
    sf = SpectralField.from_field(f)
    return sf.multiply(derivative_symbol(sf.wavenumbers, eta)).to_field()


def gradient(f: CartesianField) -> CartesianField:
    """Gradient of a scalar field (m = n)"""
    _require_components(f, 1, "gradient")
    sf = SpectralField.from_field(f)
    w = sf.wavenumbers
    coeffs = np.stack([1j * w.odd[a] * sf.coefficients[0] for a in range(f.n)])
    return sf.with_coefficients(coeffs).to_field()


def _divergence_coefficients(sf: SpectralField) -> np.ndarray:
    w, n, c = sf.wavenumbers, sf.n, sf.coefficients
    if sf.components == n:
        return sum(1j * w.odd[k] * c[k] for k in range(n))[None, ...]
    if sf.components == n * n:
        return np.stack([sum(1j * w.odd[k] * c[j * n + k] for k in range(n)) for j in range(n)])
    raise GridError(f"divergence needs n or n^2 components, got {sf.components}", field_name="components")


def divergence(f: CartesianField) -> CartesianField:
    """div of a vector (scalar result) or row-wise div of a tensor (vector result)"""
    sf = SpectralField.from_field(f)
    return sf.with_coefficients(_divergence_coefficients(sf)).to_field()


def _project(w: Wavenumbers, c: np.ndarray) -> np.ndarray:
    """(delta_ij - xi_i xi_j / |xi|^2) c_j; modes with vanishing xi are left untouched"""
    inv = w.odd_inverse_k2()
    dot = sum(w.odd[j] * c[j] for j in range(w.n))
    return np.stack([c[i] - w.odd[i] * inv * dot for i in range(w.n)])


def leray_project(f: CartesianField) -> CartesianField:
    """Projection onto divergence-free fields"""
    _require_components(f, f.n, "leray_project")
    sf = SpectralField.from_field(f)
    return sf.with_coefficients(_project(sf.wavenumbers, sf.coefficients)).to_field()


def _pair_coefficients(u: CartesianField) -> SpectralField:
    return SpectralField.from_field(CartesianField.tensor_product(u))


def riesz_pressure(u: CartesianField) -> CartesianField:
    """P = sum_ij R_i R_j (u_i u_j), mean-free"""
    _require_components(u, u.n, "riesz_pressure")
    sf = _pair_coefficients(u)
    w, n, c = sf.wavenumbers, u.n, sf.coefficients
    inv = w.odd_inverse_k2()
    p_hat = sum(-w.odd[i] * w.odd[j] * inv * c[i * n + j] for i in range(n) for j in range(n))
    return sf.with_coefficients(p_hat[None, ...]).to_field()


def laplacian(f: CartesianField) -> CartesianField:
    """Laplacian assembled from second derivatives"""
    return CartesianField(
        f.n,
        f.half_width,
        sum(spectral_derivative(f, tuple(2 if a == b else 0 for b in range(f.n))).values for a in range(f.n)),
    )


def poisson_pressure(u: CartesianField) -> CartesianField:
    """
    Solve -Laplacian P = sum_ij d_i d_j (u_i u_j).

    The source is assembled in physical space from repeated derivatives, so this
    path shares no code with riesz_pressure beyond the transforms.
    """
    _require_components(u, u.n, "poisson_pressure")
    pairs = CartesianField.tensor_product(u)
    n = u.n
    source = np.zeros(pairs.values.shape[1:])
    for i in range(n):
        for j in range(n):
            eta = [0] * n
            eta[i] += 1
            eta[j] += 1
            source += spectral_derivative(pairs.component(i * n + j), eta).values[0]
    sf = SpectralField.from_field(CartesianField(n, u.half_width, source[None, ...]))
    return sf.multiply(sf.wavenumbers.odd_inverse_k2()).to_field()


def oseen_coefficients(sf: SpectralField, t: float) -> np.ndarray:
    """Fourier coefficients of e^{t Laplacian} P div F for a tensor F (m = n^2)"""
    w = sf.wavenumbers
    return heat_symbol(w, t)[None, ...] * _project(w, _divergence_coefficients(sf))


def oseen_apply(F: CartesianField, t: float) -> CartesianField:
    """
    e^{t Laplacian} P div F, component i = sum_jk e^{-|xi|^2 t} P_ij (i xi_k) F_jk.

    F is used as given; symmetrize beforehand when only u ⊗ u-type input is meaningful.
    """
    _require_time(t, strict=True)
    _require_components(F, F.n * F.n, "oseen_apply")
    sf = SpectralField.from_field(F)
    return sf.with_coefficients(oseen_coefficients(sf, t)).to_field()


def duhamel_integrals(times: Sequence[float], tensors: Sequence[CartesianField]) -> List[CartesianField]:
    """
    I(t_k) = int_0^{t_k} e^{(t_k - s) Laplacian} P div F(s) ds for every snapshot time.

    Trapezoid rule in s evaluated exactly through the recurrence
    I_k = E_k I_{k-1} + (dt_k / 2)(E_k G_{k-1} + G_k), E_k = e^{-|xi|^2 dt_k},
    G = P div F in Fourier space.
    """
    if len(times) != len(tensors) or not times:
        raise GridError("duhamel_integrals needs one tensor per time", field_name="tensors")
    if np.any(np.diff(times) <= 0):
        raise DomainError("times must be strictly increasing", field_name="times")

    first = SpectralField.from_field(tensors[0])
    w = first.wavenumbers
    g_prev = _project(w, _divergence_coefficients(first))
    acc = np.zeros_like(g_prev)
    out = [first.with_coefficients(acc).to_field()]
    for k in range(1, len(times)):
        dt = times[k] - times[k - 1]
        g = _project(w, _divergence_coefficients(SpectralField.from_field(tensors[k])))
        decay = heat_symbol(w, dt)[None, ...]
        acc = decay * acc + 0.5 * dt * (decay * g_prev + g)
        out.append(first.with_coefficients(acc).to_field())
        g_prev = g
    return out
