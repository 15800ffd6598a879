import math

import numpy as np
import pytest
from scipy import special

from src.core import specfun
from src.utils.errors import DomainError, ParameterError


def test_gamma_reflection_identity():
    worst = 0.0
    for delta in np.round(np.arange(0.05, 0.951, 0.05), 10):
        product = specfun.gamma(1.0 - delta) * specfun.gamma(1.0 + delta)
        worst = max(worst, abs(product * math.sin(math.pi * delta) / (math.pi * delta) - 1.0))
    assert worst <= 1e-10


def test_reflection_product_matches_gamma():
    for delta in (0.1, 0.5, 0.9):
        expected = specfun.gamma(1.0 - delta) * specfun.gamma(1.0 + delta)
        assert specfun.reflection_product(delta) == pytest.approx(expected, rel=1e-12)


def test_gamma_pole():
    with pytest.raises(DomainError):
        specfun.gamma(0)
    with pytest.raises(DomainError):
        specfun.gamma(-2.0)


def test_ball_volume():
    assert specfun.ball_volume(1, 3.0) == pytest.approx(6.0)
    assert specfun.ball_volume(2, 2.0) == pytest.approx(4.0 * math.pi)
    assert specfun.ball_volume(3, 2.0) == pytest.approx(32.0 * math.pi / 3.0)
    assert specfun.annulus_volume(2, 1.0, 2.0) == pytest.approx(3.0 * math.pi)


def test_unsupported_dimension():
    with pytest.raises(ParameterError):
        specfun.ball_coefficient(4)
    with pytest.raises(ParameterError):
        specfun.annulus_volume(2, 2.0, 1.0)


def test_incomplete_gamma_positive_order():
    assert specfun.incomplete_gamma(0.5, 0.0) == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert specfun.incomplete_gamma(1.0, 2.0) == pytest.approx(math.exp(-2.0), rel=1e-12)
    split = specfun.incomplete_gamma(2.0, 1.0, 3.0) + specfun.incomplete_gamma(2.0, 3.0)
    assert split == pytest.approx(specfun.incomplete_gamma(2.0, 1.0), rel=1e-12)


def test_incomplete_gamma_negative_order():
    # Γ(-1/2, x) = 2(x^{-1/2}e^{-x} - √π erfc(√x))
    x = 1.0
    expected = 2.0 * (math.exp(-x) / math.sqrt(x) - math.sqrt(math.pi) * special.erfc(math.sqrt(x)))
    assert specfun.incomplete_gamma(-0.5, x) == pytest.approx(expected, rel=1e-9)
    with pytest.raises(DomainError):
        specfun.incomplete_gamma(-0.5, 0.0)


def test_normal_quantile():
    assert specfun.normal_quantile(0.975) == pytest.approx(1.959963984540054, rel=1e-12)
    for t in (-3.0, -0.5, 0.0, 1.2, 4.0):
        assert specfun.normal_quantile(specfun.normal_cdf(t)) == pytest.approx(t, abs=1e-10)
    with pytest.raises(DomainError):
        specfun.normal_quantile(0.0)


def test_normal_ccdf_tail():
    assert specfun.normal_ccdf(10.0) == pytest.approx(7.619853024160527e-24, rel=1e-9)
    assert specfun.normal_cdf(0.0) == 0.5
