"""
Tests for Riemann theta functions and theta constants
"""
import cmath
import math

import mpmath as mp
import numpy as np
import pytest

from app.core.config import settings
from app.models.theta import Characteristic, SiegelPoint, ThetaAccuracy
from app.services.theta_service import ThetaDomainError, ThetaTruncationError
from app.services.transform_service import sample_ball_points

JTHETA_INDEX = {(0, 0): 3, (1, 0): 2, (0, 1): 4}

@pytest.mark.parametrize("tau1", [1j, 0.3 + 0.8j, -0.45 + 1.7j, 0.1 + 0.4j])
@pytest.mark.parametrize("jk", [(0, 0), (1, 0), (0, 1)])
def test_jacobi_theta_matches_mpmath(tau1, jk, theta_service):
    q = mp.exp(1j * mp.pi * tau1)
    expected = complex(mp.jtheta(JTHETA_INDEX[jk], 0, q))
    assert theta_service.jacobi_theta(*jk, tau1) == pytest.approx(expected, rel=1e-13, abs=1e-15)

def test_jacobi_quartic_identity(theta_service):
    tau1 = 0.2 + 0.9j
    t00, t01, t10 = (theta_service.jacobi_theta(j, k, tau1) for j, k in [(0, 0), (0, 1), (1, 0)])
    assert t00 ** 4 == pytest.approx(t01 ** 4 + t10 ** 4, rel=1e-13)

def test_odd_characteristic_vanishes(theta_service):
    assert abs(theta_service.jacobi_theta(1, 1, 0.1 + 1.1j)) < 1e-14
    tp = SiegelPoint(tau=[[1j, 0.2], [0.2, 1.3j]])
    assert abs(theta_service.theta_constant(Characteristic.parse("10", "10"), tp)) < 1e-13

def test_diagonal_factorization(theta_service):
    tau1, tau2 = 0.3 + 1.1j, -0.2 + 0.8j
    tp = SiegelPoint.diagonal([tau1, tau2])
    ch = Characteristic.parse("10", "01")
    expected = theta_service.jacobi_theta(1, 0, tau1) * theta_service.jacobi_theta(0, 1, tau2)
    assert theta_service.theta_constant(ch, tp) == pytest.approx(expected, rel=1e-13)

def test_theta_constants_batch(theta_service):
    tp = SiegelPoint(tau=[[1.1j, 0.3], [0.3, 0.9j + 0.1]])
    chars = [Characteristic.parse("00", "00"), Characteristic.parse("01", "10"), Characteristic.parse("11", "00")]
    batch = theta_service.theta_constants(chars, tp)
    assert batch == [theta_service.theta_constant(ch, tp) for ch in chars]

def test_periodicity_in_zeta(theta_service):
    tp = SiegelPoint(tau=[[1.2j, 0.25 + 0.1j], [0.25 + 0.1j, 0.9j]])
    ch = Characteristic.zero(2)
    zeta = np.array([0.1 + 0.05j, -0.2 + 0.1j])
    shifted = zeta + np.array([1.0, 0.0])
    assert theta_service.riemann_theta(ch, shifted, tp) == pytest.approx(theta_service.riemann_theta(ch, zeta, tp), rel=1e-13)

QUASI_CASES = range(20)

@pytest.mark.parametrize("case", QUASI_CASES)
def test_quasi_periodicity(case, theta_service, ball_service):
    """theta(zeta + n1 tau + n2) = e(a.n2/2 - n1.b/2 - n1 tau n1/2 - n1.zeta) theta(zeta) on ball-image tau"""
    rng = np.random.default_rng(settings.SEED + case)
    tp = ball_service.tau_of_v(sample_ball_points(rng, 1)[0])
    a, b = rng.integers(0, 2, 4), rng.integers(0, 2, 4)
    ch = Characteristic.parse(a.tolist(), b.tolist())
    n1, n2 = rng.integers(-2, 3, 4), rng.integers(-2, 3, 4)
    zeta = 0.2 * (rng.standard_normal(4) + 1j * rng.standard_normal(4))
    tau = tp.tau
    lhs = theta_service.riemann_theta(ch, zeta + tau @ n1 + n2, tp)
    phase = a @ n2 / 2 - n1 @ b / 2 - n1 @ tau @ n1 / 2 - n1 @ zeta
    rhs = cmath.exp(2j * math.pi * phase) * theta_service.riemann_theta(ch, zeta, tp)
    assert lhs == pytest.approx(rhs, rel=1e-9)

def test_value_at_identity(theta_service, scalar_service):
    tp = SiegelPoint(tau=1j * np.eye(4))
    value = theta_service.theta_constant(Characteristic.zero(4), tp)
    assert value == pytest.approx(scalar_service.theta00_at_i() ** 4, rel=1e-13)

def test_domain_errors(theta_service):
    with pytest.raises(ThetaDomainError):
        theta_service.jacobi_theta(2, 0, 1j)
    with pytest.raises(ThetaDomainError):
        theta_service.jacobi_theta(0, 0, -1j)
    with pytest.raises(ThetaDomainError):
        theta_service.theta_constant(Characteristic.zero(3), SiegelPoint(tau=1j * np.eye(2)))

def test_truncation_error_when_radius_too_small(theta_service):
    tp = SiegelPoint(tau=[[0.05j]])
    with pytest.raises(ThetaTruncationError):
        theta_service.theta_constant(Characteristic.zero(1), tp, ThetaAccuracy(target_eps=1e-14, max_radius=6))

@pytest.mark.parametrize("tau", [[[1j, 0.5], [0.4, 1j]], [[1j, 0], [0, -1j]], [[1, 0], [0, 1]]])
def test_siegel_point_validation(tau):
    with pytest.raises(ValueError):
        SiegelPoint(tau=tau)

def test_characteristic_parse():
    ch = Characteristic.parse("1100", "0101")
    assert ch.a == (1, 1, 0, 0) and ch.b == (0, 1, 0, 1)
    assert ch.is_even
    assert not Characteristic.parse("1", "1").is_even
    with pytest.raises(ValueError):
        Characteristic.parse("11", "0")
