"""Spectral operators: heat semigroup, derivatives, Leray projector, pressure, Oseen."""

from src.operators.kernel import KernelProbe, oseen_kernel_probe, self_similarity_error
from src.operators.multipliers import (
    divergence,
    duhamel_integrals,
    gradient,
    heat_evolve,
    laplacian,
    leray_project,
    oseen_apply,
    poisson_pressure,
    riesz_pressure,
    spectral_derivative,
)
from src.operators.spectral import SpectralField, Wavenumbers, wavenumbers

__all__ = [
    "KernelProbe",
    "SpectralField",
    "Wavenumbers",
    "divergence",
    "duhamel_integrals",
    "gradient",
    "heat_evolve",
    "laplacian",
    "leray_project",
    "oseen_apply",
    "oseen_kernel_probe",
    "poisson_pressure",
    "riesz_pressure",
    "self_similarity_error",
    "spectral_derivative",
    "wavenumbers",
]
