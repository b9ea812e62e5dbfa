"""Scalar special functions and quadrature helpers."""

import numpy as np
import pytest
from scipy.special import erfc

from onebit_mimo.numerics import (LOG2E, QuadratureError, binary_entropy,
                                  db_from_linear, gaussian_expectation,
                                  linear_from_db, log_q_function, q_function,
                                  quad2d_positive_quadrant)


def test_q_function_values():
    assert q_function(0.0) == pytest.approx(0.5)
    assert q_function(np.inf) == 0.0
    x = np.linspace(-4, 4, 17)
    np.testing.assert_allclose(q_function(x) + q_function(-x), 1.0, atol=1e-15)
    np.testing.assert_allclose(q_function(x), 0.5 * erfc(x / np.sqrt(2)))


def test_log_q_function_matches_log_of_q():
    x = np.linspace(-5, 5, 21)
    np.testing.assert_allclose(log_q_function(x), np.log(q_function(x)),
                               rtol=1e-9, atol=1e-15)


def test_log_q_function_deep_tail_is_finite():
    lq = log_q_function(40.0)
    assert np.isfinite(lq)
    assert lq < -700  # q_function itself underflows here


def test_db_round_trip():
    z = np.array([0.01, 1.0, 42.0])
    np.testing.assert_allclose(linear_from_db(db_from_linear(z)), z, rtol=1e-14)
    assert db_from_linear(10.0) == pytest.approx(10.0)


def test_binary_entropy_endpoints_and_peak():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == pytest.approx(1.0)
    p = np.linspace(0.01, 0.99, 25)
    np.testing.assert_allclose(binary_entropy(p), binary_entropy(1 - p),
                               atol=1e-14)


def test_gaussian_expectation_moments():
    assert gaussian_expectation(lambda x: x ** 2) == pytest.approx(1.0)
    assert gaussian_expectation(lambda x: x ** 4) == pytest.approx(3.0)
    assert gaussian_expectation(np.cos) == pytest.approx(np.exp(-0.5))


def test_gaussian_expectation_rejects_tiny_node_count():
    with pytest.raises(ValueError):
        gaussian_expectation(lambda x: x, nodes=1)


def test_quad2d_positive_quadrant_gaussian_mass():
    # int_0^inf int_0^inf e^{-2(g^2 + x^2)} dg dx = pi/8
    val = quad2d_positive_quadrant(
        lambda g, x: np.exp(-2.0 * (g ** 2 + x ** 2)), tol=1e-10)
    assert val == pytest.approx(np.pi / 8.0, abs=1e-9)


def test_quad2d_raises_when_tolerance_unreachable():
    rng = np.random.default_rng(0)
    with pytest.raises(QuadratureError):
        # white-noise integrand never converges under panel refinement
        quad2d_positive_quadrant(
            lambda g, x: rng.standard_normal(np.broadcast(g, x).shape),
            tol=1e-12)


def test_log2e_constant():
    assert LOG2E == pytest.approx(1.4426950408889634)
