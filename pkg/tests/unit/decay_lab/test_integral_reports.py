"""
Unit tests for the time-integral and Duhamel reports.
"""

import numpy as np
import pytest

from src.common.errors import InadmissibleIndicesError, InsufficientDataError
from src.common.types import EstimateKind
from src.decay_lab.integral import (
    dilate_trajectory,
    dilation_constants,
    duhamel_estimate_report,
    integral_estimate_report,
    measure_duhamel,
    quadratic_times,
)
from src.grids_norms.fields import CartesianField
from src.index_calculus.indices import EstimateIndices
from src.operators.multipliers import heat_evolve


def gaussian(x, y, z):
    return np.exp(-(x**2 + y**2 + z**2))


INTEGRAL = EstimateIndices.create(3, 0, 2, 2, 0, 4, 4, r="8/3")
DIAGONAL = EstimateIndices.create(3, 0, 5, 5, 0, 5, 5, r=5, s=5)


@pytest.fixture(scope="module")
def small_gaussian():
    return CartesianField.from_function(gaussian, 3, 8.0, 32)


@pytest.fixture(scope="module")
def swirl_trajectory(solenoidal_field):
    """33 heat-flow snapshots of the swirl on [0, 1]"""
    return [(float(t), heat_evolve(solenoidal_field, float(t))) for t in np.linspace(0.0, 1.0, 33)]


class TestQuadraticTimes:
    def test_endpoints_and_clustering(self):
        """✅ PASS: samples start and stop at the window and cluster at the start"""
        t = quadratic_times(0.0, 4.0, 5)
        np.testing.assert_allclose(t, [0.0, 0.25, 1.0, 2.25, 4.0])


class TestIntegralEstimate:
    """Heat flow in L^r_t"""

    @pytest.mark.slow
    def test_gaussian(self, small_gaussian):
        """✅ PASS: finite constant, stable across dilations 1, 2, 4"""
        report = integral_estimate_report(small_gaussian, INTEGRAL)
        assert report.kind is EstimateKind.INTEGRAL
        assert report.passed
        constants = dilation_constants(report)
        assert sorted(constants) == [1, 2, 4]
        assert all(c > 0 and np.isfinite(c) for c in constants.values())
        assert report.extra["spread"] <= 2.0

    def test_zero_datum(self):
        """✅ PASS: u0 = 0 gives lhs = 0"""
        report = integral_estimate_report(CartesianField.zeros(3, 8.0, 16), INTEGRAL, dilations=(1,), samples=5)
        assert report.extra["time_norm"] == 0
        assert np.all(report.lhs == 0)

    def test_omega_imbalance(self, small_gaussian):
        """❌ FAIL: r = 4 with q = 6 breaks the Omega balance"""
        e = EstimateIndices.create(3, 0, 2, 2, 0, 6, 6, r=4)
        with pytest.raises(InadmissibleIndicesError) as exc:
            integral_estimate_report(small_gaussian, e)
        assert "Omega balance" in exc.value.admissibility.violations


class TestDuhamelEstimate:
    """Duhamel term against the squared source norm"""

    @pytest.mark.slow
    def test_diagonal_swirl(self, swirl_trajectory):
        """✅ PASS: q = qtilde = r = 5, constant stable under NS scaling"""
        report = duhamel_estimate_report(swirl_trajectory, DIAGONAL, diagonal=True)
        assert report.kind is EstimateKind.DUHAMEL_DIAGONAL
        assert report.passed
        constants = dilation_constants(report)
        assert constants[1] > 0
        assert constants[4] == pytest.approx(constants[1], rel=1e-6)

    @pytest.mark.slow
    def test_general_duhamel(self, swirl_trajectory):
        """✅ PASS: the same tuple is admissible for the general estimate"""
        report = duhamel_estimate_report(swirl_trajectory, DIAGONAL, dilations=(1, 2))
        assert report.kind is EstimateKind.DUHAMEL
        assert report.passed

    @pytest.mark.slow
    def test_quadratic_homogeneity(self, swirl_trajectory):
        """✅ PASS: scaling u by c scales lhs by c^2"""
        base = measure_duhamel(swirl_trajectory, DIAGONAL)
        scaled = measure_duhamel([(t, u.scaled(3.0)) for t, u in swirl_trajectory], DIAGONAL)
        assert scaled.lhs == pytest.approx(9.0 * base.lhs, rel=1e-10)

    def test_zero_trajectory(self):
        """✅ PASS: u = 0 gives lhs = 0"""
        zero = CartesianField.zeros(3, 8.0, 16, components=3)
        traj = [(float(t), zero) for t in np.linspace(0.0, 1.0, 33)]
        probe = measure_duhamel(traj, DIAGONAL)
        assert probe.lhs == 0
        assert probe.ratio == 0

    def test_dilated_trajectory(self, solenoidal_field):
        """✅ PASS: u_lam(t, x) = lam^{-1} u(t / lam^2, x / lam)"""
        (t, u), = dilate_trajectory([(0.5, solenoidal_field)], 2.0)
        assert t == pytest.approx(2.0)
        assert u.half_width == pytest.approx(16.0)
        np.testing.assert_allclose(u.values, solenoidal_field.values / 2)

    def test_insufficient_snapshots(self, swirl_trajectory):
        """❌ FAIL: fewer than 32 snapshots"""
        with pytest.raises(InsufficientDataError):
            duhamel_estimate_report(swirl_trajectory[:10], DIAGONAL)

    def test_inadmissible(self, swirl_trajectory):
        """❌ FAIL: Omega balance broken"""
        e = EstimateIndices.create(3, 0, 4, 4, 0, 5, 5, r=5, s=5)
        with pytest.raises(InadmissibleIndicesError):
            duhamel_estimate_report(swirl_trajectory, e)
