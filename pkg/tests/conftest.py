"""
Shared numeric fixtures.
"""

import numpy as np
import pytest

from src.grids_norms.fields import CartesianField
from src.grids_norms.polar import default_polar_grid


def gaussian(*xs):
    return np.exp(-sum(x**2 for x in xs))


@pytest.fixture(scope="session")
def gaussian_field():
    """e^{-|x|^2} on 64^3, L = 12"""
    return CartesianField.from_function(gaussian, 3, 12.0, 64)


@pytest.fixture(scope="session")
def polar_grid():
    """Default polar grid for the L = 12 box"""
    return default_polar_grid(3, 12.0)


@pytest.fixture(scope="session")
def solenoidal_field():
    """Divergence-free Gaussian swirl (-x2, x1, 0) e^{-|x|^2} on 32^3, L = 8"""
    return CartesianField.from_function(
        lambda x, y, z: [-y * gaussian(x, y, z), x * gaussian(x, y, z), 0.0 * x], 3, 8.0, 32
    )


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
