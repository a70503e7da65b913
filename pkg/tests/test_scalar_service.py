"""
Tests for constants, Pochhammer symbols and endpoint-weighted quadrature
"""
import math

import mpmath as mp
import numpy as np
import pytest

from app.enums.quadrature_scheme import QuadratureScheme
from app.models.quadrature import QuadratureSpec
from app.services.scalar_service import ScalarDomainError, e, gauss_jacobi_rule

def test_gamma34_matches_mpmath(scalar_service):
    assert scalar_service.gamma34() == pytest.approx(float(mp.gamma(0.75)), rel=1e-15)

def test_theta00_at_i(scalar_service):
    assert scalar_service.theta00_at_i() == pytest.approx(float(mp.jtheta(3, 0, mp.exp(-mp.pi))), rel=1e-14)

def test_agm_limit_constant(scalar_service):
    assert scalar_service.agm_limit_constant() == pytest.approx(1.3932039296856768, rel=1e-14)
    assert scalar_service.agm_limit_constant() == pytest.approx(scalar_service.theta00_at_i() ** 4, rel=1e-14)

def test_pochhammer(scalar_service):
    assert scalar_service.pochhammer(0.5, 3) == pytest.approx(1.875)
    assert scalar_service.pochhammer(7.0, 0) == 1.0
    assert scalar_service.pochhammer(1j, 2) == pytest.approx(1j * (1 + 1j))
    with pytest.raises(ScalarDomainError):
        scalar_service.pochhammer(1.0, -1)

def test_e_helper():
    assert e(0.25) == pytest.approx(1j, abs=1e-15)
    assert e(1) == pytest.approx(1.0, abs=1e-15)

@pytest.mark.parametrize("left,right", [(-0.25, -0.25), (-0.75, -0.25), (-0.5, 0.0), (0.0, 0.0)])
def test_rule_weights_integrate_the_weight(left, right, scalar_service):
    _, _, w = gauss_jacobi_rule(16, left, right)
    assert w.sum() == pytest.approx(scalar_service.beta(left + 1, right + 1), rel=1e-13)

def test_rule_complements():
    t, omt, _ = gauss_jacobi_rule(32, -0.25, -0.75)
    np.testing.assert_allclose(t + omt, 1.0, atol=1e-15)
    assert np.all((t > 0) & (t < 1))

def test_quad_segment_smooth_part(scalar_service):
    spec = QuadratureSpec().with_exponents(-0.25, -0.75)
    result = scalar_service.quad_segment(lambda t, omt: np.exp(t), spec)
    expected = mp.quad(lambda t: t ** -0.25 * (1 - t) ** -0.75 * mp.exp(t), [0, 1])
    assert result.value == pytest.approx(complex(expected), rel=1e-12)
    assert result.scheme == QuadratureScheme.GAUSS_JACOBI

def test_tanh_sinh_agrees_with_beta(scalar_service):
    result = scalar_service.tanh_sinh(lambda t, omt: np.ones_like(t), -0.25, -0.25, 1e-12)
    assert result.value.real == pytest.approx(scalar_service.beta(0.75, 0.75), rel=1e-11)
    assert result.scheme == QuadratureScheme.TANH_SINH

def test_spec_rejects_non_integrable_exponent():
    with pytest.raises(ValueError):
        QuadratureSpec(left_exponent=-1.0)
