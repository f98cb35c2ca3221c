"""
Unit tests for the numerics layer
Tests Newton-Cotes quadrature, improper integrals and the nearest-NLOS series kernels
"""
import math

import numpy as np
import pytest


# ============================================================================
# QUADRATURE TESTS
# ============================================================================

@pytest.mark.unit
class TestQuadrature:
    """Test suite for composite Newton-Cotes integration"""

    def test_simpson_exact_on_cubics(self):
        """Test Simpson panels integrate cubics exactly"""
        from src.numerics.quadrature import QuadratureSpec, Rule, integrate

        spec = QuadratureSpec(rule=Rule.NEWTON_COTES, order=2, panels=2)
        assert integrate(lambda x: x ** 3 - x, 0.0, 2.0, spec) == pytest.approx(2.0)

    def test_adaptive_sine(self):
        """Test panel doubling reaches tolerance"""
        from src.numerics.quadrature import integrate

        assert integrate(np.sin, 0.0, math.pi) == pytest.approx(2.0, rel=1e-8)

    def test_batched_integrand(self):
        """Test leading axes integrate independently"""
        from src.numerics.quadrature import integrate

        powers = np.array([0.0, 1.0, 2.0])[:, None]
        result = integrate(lambda x: x ** powers, 0.0, 1.0)
        np.testing.assert_allclose(result, [1.0, 0.5, 1.0 / 3.0], rtol=1e-10)

    def test_reversed_bounds_rejected(self):
        """Test a > b is a domain error"""
        from src.core.errors import DomainError
        from src.numerics.quadrature import integrate

        with pytest.raises(DomainError):
            integrate(np.sin, 1.0, 0.0)

    def test_non_finite_integrand(self):
        """Test a NaN integrand reports its abscissa"""
        from src.core.errors import IntegrationError
        from src.numerics.quadrature import QuadratureSpec, Rule, integrate

        spec = QuadratureSpec(rule=Rule.NEWTON_COTES, order=1, panels=2)
        with pytest.raises(IntegrationError) as info:
            integrate(lambda x: 1.0 / (x - 0.5), 0.0, 1.0, spec)
        assert info.value.abscissa == pytest.approx(0.5)

    def test_spec_validation(self):
        """Test bad specs collect every problem"""
        from src.core.errors import ValidationError
        from src.numerics.quadrature import QuadratureSpec

        with pytest.raises(ValidationError) as info:
            QuadratureSpec(order=3, tail_tol=2.0)
        assert len(info.value.errors) == 2

    def test_nodes_and_weights_sum_to_length(self):
        """Test weights integrate the constant one"""
        from src.numerics.quadrature import nodes_and_weights

        x, w = nodes_and_weights(2.0, 5.0, order=4, panels=3)
        assert x[0] == 2.0 and x[-1] == 5.0
        assert w.sum() == pytest.approx(3.0)


@pytest.mark.unit
class TestImproperIntegral:
    """Test suite for radius-doubling improper integrals"""

    def test_exponential_tail(self):
        """Test integral of exp(-x) from 1"""
        from src.numerics.quadrature import integrate_improper

        result = integrate_improper(lambda x: np.exp(-x), 1.0)
        assert result.value == pytest.approx(math.exp(-1.0), rel=1e-5)
        assert result.radius > 1.0

    def test_power_tail_with_scale(self):
        """Test a slow algebraic tail converges when given a scale"""
        from src.numerics.quadrature import QuadratureSpec, integrate_improper

        spec = QuadratureSpec(tail_tol=1e-7)
        result = integrate_improper(lambda x: x ** -3.0, 1.0, spec, scale=1.0)
        assert result.value == pytest.approx(0.5, rel=1e-4)

    def test_fixed_cutoff(self):
        """Test a tail cutoff replaces doubling"""
        from src.numerics.quadrature import QuadratureSpec, integrate_improper

        result = integrate_improper(lambda x: np.ones_like(x), 0.0, QuadratureSpec(tail_cutoff=10.0))
        assert result.value == pytest.approx(10.0)
        assert result.radius == 10.0

    def test_divergent_integral_raises(self):
        """Test a divergent integrand hits the radius cap"""
        from src.core.errors import NonConvergenceError
        from src.numerics.quadrature import QuadratureSpec, integrate_improper

        spec = QuadratureSpec(radius_cap=1e4)
        with pytest.raises(NonConvergenceError):
            integrate_improper(lambda x: 1.0 / x, 1.0, spec)


# ============================================================================
# SERIES KERNEL TESTS
# ============================================================================

@pytest.mark.unit
class TestSeriesKernels:
    """Test suite for the series and oracle evaluations of the NLOS kernels"""

    @pytest.mark.parametrize('cx', [0.1, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0])
    @pytest.mark.parametrize('singular', [True, False])
    def test_series_matches_oracle(self, cx, singular):
        """Test the power series agrees with direct quadrature"""
        from src.numerics.series import direct_kernel_integral, exp_series_integral

        x = 40.0
        c = cx / x
        series = exp_series_integral(c, x, n_terms=60, singular=singular)
        oracle = direct_kernel_integral(c, x, singular=singular)
        assert series.converged
        assert series.value == pytest.approx(float(oracle), rel=1e-8)

    def test_zero_rate_closed_forms(self):
        """Test c = 0 gives pi/2 and x"""
        from src.numerics.series import direct_kernel_integral, exp_series_integral

        assert exp_series_integral(0.0, 3.0).value == pytest.approx(math.pi / 2)
        assert exp_series_integral(0.0, 3.0, singular=False).value == pytest.approx(3.0)
        assert float(direct_kernel_integral(0.0, 3.0)) == pytest.approx(math.pi / 2)

    def test_truncation_reported(self):
        """Test too few terms are flagged as not converged"""
        from src.numerics.series import exp_series_integral

        result = exp_series_integral(1.0, 4.0, n_terms=3)
        assert not result.converged
        assert result.truncation_bound > 0

    def test_kernel_dispatches_large_arguments_to_oracle(self):
        """Test c*x beyond the series range still matches the oracle"""
        from src.numerics.series import direct_kernel_integral, kernel_integral

        c = 0.5
        x = np.array([1.0, 20.0])
        values = kernel_integral(c, x)
        np.testing.assert_allclose(values, direct_kernel_integral(c, x), rtol=1e-7)

    @pytest.mark.parametrize('singular', [True, False])
    def test_kernel_continuous_across_series_limit(self, singular):
        """Test the series and quadrature branches agree on both sides of the switch"""
        from src.numerics.series import SERIES_ARGUMENT_LIMIT, direct_kernel_integral, kernel_integral

        c = 0.1
        x = SERIES_ARGUMENT_LIMIT / c * np.array([0.999, 1.0, 1.001])
        values = kernel_integral(c, x, singular=singular)
        np.testing.assert_allclose(values, direct_kernel_integral(c, x, singular=singular), rtol=1e-7)
        assert abs(values[2] - values[0]) < 1e-2 * abs(values[1])

    def test_domain_errors(self):
        """Test invalid arguments are refused"""
        from src.core.errors import DomainError
        from src.numerics.series import direct_kernel_integral, exp_series_integral

        with pytest.raises(DomainError):
            exp_series_integral(-1.0, 1.0)
        with pytest.raises(DomainError):
            direct_kernel_integral(1.0, np.array([0.0]))
