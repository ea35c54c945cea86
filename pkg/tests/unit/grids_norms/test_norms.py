"""
Unit tests for angular, mixed and time-mixed norms.
"""

import math
from fractions import Fraction as F

import numpy as np
import pytest
from scipy.integrate import quad

from src.common.errors import InsufficientDataError, NonIntegrableWeightError
from src.common.types import AngularMagnitude, Normalization
from src.grids_norms.fields import CartesianField, PolarField, dilate
from src.grids_norms.norms import angular_norm, cartesian_lp, mixed_norm, time_mixed_norm
from src.grids_norms.polar import build_polar_grid, default_polar_grid
from src.grids_norms.resample import resample
from src.index_calculus.exponent import INF, Exponent

GAUSSIAN_L2 = (math.pi / 2) ** 0.75


def heat_gaussian(t):
    """e^{t Laplacian} e^{-|x|^2} in three dimensions"""
    return lambda x, y, z: (1 + 4 * t) ** -1.5 * np.exp(-(x**2 + y**2 + z**2) / (1 + 4 * t))


class TestAngularNorm:
    """Per-shell angular norms"""

    def setup_method(self):
        self.grid = build_polar_grid(3, 0.01, 12.0, 8, 4, 15, Normalization.PROBABILITY)

    def test_radial_shell_constant(self):
        """✅ PASS: a radial field returns its shell value for every ptilde"""
        pf = PolarField.from_function(self.grid, lambda x, y, z: np.exp(-(x**2 + y**2 + z**2)))
        shell_value = math.exp(-self.grid.radii[5] ** 2)
        for pt in (1, 2, 4, INF):
            assert angular_norm(pf, Exponent.of(pt), 5) == pytest.approx(shell_value, rel=1e-12)

    def test_first_coordinate_l2(self):
        """✅ PASS: x1/|x| has probability L2 norm 1/sqrt(3)"""
        pf = PolarField.from_function(self.grid, lambda x, y, z: x / np.sqrt(x**2 + y**2 + z**2))
        assert angular_norm(pf, Exponent.of(2), 0) == pytest.approx(1 / math.sqrt(3), abs=1e-12)

    def test_first_coordinate_sup(self):
        """✅ PASS: sup of |x1|/|x| over the nodes is at least 0.99"""
        pf = PolarField.from_function(self.grid, lambda x, y, z: x / np.sqrt(x**2 + y**2 + z**2))
        assert angular_norm(pf, INF, 3) >= 0.99

    def test_monotone_in_ptilde(self, rng):
        """✅ PASS: probability angular norms are non-decreasing in ptilde"""
        grid = build_polar_grid(3, 0.1, 2.0, 4, 2, 7, Normalization.PROBABILITY, with_coarse=False)
        exponents = [Exponent.of(v) for v in (1, 2, 4, 8, "inf")]
        for _ in range(100):
            pf = PolarField(grid, rng.normal(size=(1, grid.radii.size, grid.directions.shape[0])))
            for i in range(grid.radii.size):
                values = [angular_norm(pf, e, i) for e in exponents]
                assert all(b >= a * (1 - 1e-12) for a, b in zip(values, values[1:]))

    def test_componentwise_dominates_euclidean_at_infinity(self):
        """✅ PASS: COMPONENTWISE ptilde=INF combines per-component sups"""
        pf = PolarField.from_function(self.grid, lambda x, y, z: [x / np.sqrt(x**2 + y**2 + z**2), 0 * x + 1.0])
        euclid = angular_norm(pf, INF, 2)
        comp = angular_norm(pf, INF, 2, AngularMagnitude.COMPONENTWISE)
        assert euclid == pytest.approx(math.sqrt(2), rel=1e-12)
        assert comp == pytest.approx(math.sqrt(2), rel=1e-12)
        l2 = angular_norm(pf, Exponent.of(2), 2, AngularMagnitude.COMPONENTWISE)
        assert l2 == pytest.approx(math.sqrt(1 / 3 + 1), rel=1e-12)


class TestMixedNorm:
    """Radial-angular mixed norms"""

    def test_gaussian_l2_analytic(self, polar_grid):
        """✅ PASS: ||e^{-|x|^2}||_2 = (pi/2)^{3/4} from analytic nodes"""
        pf = PolarField.from_function(polar_grid, lambda x, y, z: np.exp(-(x**2 + y**2 + z**2)))
        result = mixed_norm(pf, 0, Exponent.of(2), Exponent.of(2))
        assert result.value == pytest.approx(GAUSSIAN_L2, rel=1e-5)
        assert result.quadrature_error_estimate < 1e-3

    def test_gaussian_l2_resampled(self, gaussian_field, polar_grid):
        """✅ PASS: resampled Gaussian L2 norm within 1%"""
        result = mixed_norm(resample(gaussian_field, polar_grid), 0, Exponent.of(2), Exponent.of(2))
        assert result.value == pytest.approx(GAUSSIAN_L2, rel=1e-2)

    def test_equal_exponents_reduce_to_cartesian(self, gaussian_field, polar_grid):
        """✅ PASS: mixed_norm(f, 0, p, p) agrees with the Cartesian L^p norm"""
        pf = resample(gaussian_field, polar_grid)
        for p in (1, 2, 4, 6):
            e = Exponent.of(p)
            assert mixed_norm(pf, 0, e, e).value == pytest.approx(cartesian_lp(gaussian_field, e), rel=1e-2)

    def test_radial_invariance(self, polar_grid):
        """✅ PASS: radial Gaussian norm independent of ptilde under PROBABILITY weights"""
        pf = PolarField.from_function(polar_grid, lambda x, y, z: np.exp(-(x**2 + y**2 + z**2)))
        values = [
            mixed_norm(pf, "1/2", Exponent.of(4), Exponent.of(pt), normalization=Normalization.PROBABILITY).value
            for pt in (1, 2, 4, 8, "inf")
        ]
        assert (max(values) - min(values)) <= 5e-3 * max(values)

    def test_weighted_radial_integral(self, polar_grid):
        """✅ PASS: || |x|^{-1} e^{-|x|^2} ||_2^2 = 4 pi int_0^inf e^{-2 r^2} dr"""
        pf = PolarField.from_function(polar_grid, lambda x, y, z: np.exp(-(x**2 + y**2 + z**2)))
        expected = math.sqrt(4 * math.pi * math.sqrt(math.pi / 2) / 2)
        assert mixed_norm(pf, -1, Exponent.of(2), Exponent.of(2)).value == pytest.approx(expected, rel=1e-4)

    def test_sup_norm(self, polar_grid):
        """✅ PASS: p = INF returns sup r^alpha A(r)"""
        pf = PolarField.from_function(polar_grid, lambda x, y, z: np.exp(-(x**2 + y**2 + z**2)))
        value = mixed_norm(pf, 1, INF, INF).value
        assert value == pytest.approx(math.exp(-0.5) / math.sqrt(2), rel=1e-2)

    def test_non_integrable_weight(self, polar_grid):
        """✅ PASS: alpha p + n <= 0 raises NonIntegrableWeightError"""
        pf = PolarField.from_function(polar_grid, lambda x, y, z: 1.0)
        with pytest.raises(NonIntegrableWeightError, match="non-integrable weight"):
            mixed_norm(pf, F(-3, 2), Exponent.of(2), Exponent.of(2))

    def test_r_cut_restricts(self, polar_grid):
        """✅ PASS: r_cut = 1 integrates the unit ball only"""
        pf = PolarField.from_function(polar_grid, lambda x, y, z: 1.0 + 0 * x)
        result = mixed_norm(pf, 0, Exponent.of(1), Exponent.of(1), r_cut=1.0)
        inside = polar_grid.radii <= 1.0
        expected = np.sum(polar_grid.radial_weights[inside] * polar_grid.radii[inside] ** 2) * 4 * math.pi
        expected += 4 * math.pi * polar_grid.r_min**3 / 3
        assert result.value == pytest.approx(expected, rel=1e-12)

    def test_dilation_covariance(self, gaussian_field):
        """✅ PASS: || |x|^beta S_2 f || = 2^{n/q + beta} || |x|^beta f ||"""
        small, large = default_polar_grid(3, 12.0), default_polar_grid(3, 24.0)
        pf = resample(gaussian_field, small)
        pf2 = resample(dilate(gaussian_field, 2), large)
        for beta in (F(-1, 2), F(0), F(1, 2)):
            for q in (2, 4):
                for qt in (2, INF):
                    a = mixed_norm(pf, beta, Exponent.of(q), Exponent.of(qt)).value
                    b = mixed_norm(pf2, beta, Exponent.of(q), Exponent.of(qt)).value
                    assert b == pytest.approx(2 ** (3 / q + float(beta)) * a, rel=1e-9)


class TestTimeMixedNorm:
    """L^s in time of mixed norms"""

    def setup_method(self):
        self.grid = build_polar_grid(3, 0.005, 11.25, 32, 4, 15)

    def test_constant_in_time(self):
        """✅ PASS: constant integrand gives T^{1/s} times the mixed norm"""
        pf = PolarField.from_function(self.grid, lambda x, y, z: np.exp(-(x**2 + y**2 + z**2)))
        base = mixed_norm(pf, 0, Exponent.of(2), Exponent.of(2)).value
        result = time_mixed_norm([(0.0, pf), (0.5, pf), (2.0, pf)], 0, Exponent.of(4), Exponent.of(2), Exponent.of(2))
        assert result.value == pytest.approx(2.0 ** 0.25 * base, rel=1e-12)

    def test_sup_in_time_of_decaying_flow(self):
        """✅ PASS: s = INF of heat flow picks the initial time"""
        snaps = [(t, PolarField.from_function(self.grid, heat_gaussian(t))) for t in (0.0, 0.5, 1.0)]
        first = mixed_norm(snaps[0][1], 0, Exponent.of(4), Exponent.of(4)).value
        assert time_mixed_norm(snaps, 0, INF, Exponent.of(4), Exponent.of(4)).value == pytest.approx(first)

    def test_too_few_snapshots(self):
        """✅ PASS: one snapshot with finite s raises InsufficientDataError"""
        pf = PolarField.from_function(self.grid, lambda x, y, z: 1.0)
        with pytest.raises(InsufficientDataError):
            time_mixed_norm([(0.0, pf)], 0, Exponent.of(2), Exponent.of(2), Exponent.of(2))

    def test_heat_flow_against_oracle(self):
        """✅ PASS: (alpha, s, p, ptilde) = (0, 8, 4, 4) heat flow within 2% of the 1-D oracle"""
        times = [(k / 32) ** 2 for k in range(33)]
        snaps = [(t, PolarField.from_function(self.grid, heat_gaussian(t))) for t in times]
        result = time_mixed_norm(snaps, 0, Exponent.of(8), Exponent.of(4), Exponent.of(4))

        def l4(t):
            return (1 + 4 * t) ** (-9 / 8) * (math.pi / 4) ** (3 / 8)

        oracle = quad(lambda t: l4(t) ** 8, 0.0, 1.0)[0] ** (1 / 8)
        assert result.value == pytest.approx(oracle, rel=2e-2)

    def test_parabola_mask_zero_at_origin(self):
        """✅ PASS: parabola mask empties the t = 0 slice"""
        pf = PolarField.from_function(self.grid, lambda x, y, z: 1.0)
        masked = time_mixed_norm([(0.0, pf), (1.0, pf)], 0, INF, Exponent.of(2), Exponent.of(2), parabola=1.0)
        full = mixed_norm(pf, 0, Exponent.of(2), Exponent.of(2), r_cut=1.0).value
        assert masked.value == pytest.approx(full, rel=1e-12)


class TestCartesianLp:
    """Riemann-sum oracle"""

    def test_zero_field(self):
        """✅ PASS: zero field has zero norm"""
        f = CartesianField.zeros(3, 4.0, 8, 3)
        assert cartesian_lp(f, Exponent.of(2)) == 0.0
        assert cartesian_lp(f, INF) == 0.0

    def test_gaussian_l2(self, gaussian_field):
        """✅ PASS: Gaussian L2 within 1e-4 relative"""
        assert cartesian_lp(gaussian_field, Exponent.of(2)) == pytest.approx(GAUSSIAN_L2, rel=1e-4)
