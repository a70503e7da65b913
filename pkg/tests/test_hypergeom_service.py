"""
Tests for the Gauss 2F1 and Lauricella F_D series
"""
import mpmath as mp
import pytest

from app.models.hypergeom import FDParams
from app.services.hypergeom_service import HypergeomDomainError

@pytest.mark.parametrize("alpha,beta,gamma,z", [
    (0.25, 0.75, 1.0, 0.3),
    (0.5, 0.5, 1.0, 0.9),
    (1 / 3, 2 / 3, 1.0, 0.7),
    (0.25, 0.75, 1.0, 0.2 + 0.5j),
    (1.5, -2.0, 2.5, -0.8),
])
def test_gauss_2f1_matches_mpmath(alpha, beta, gamma, z, hypergeom_service):
    expected = complex(mp.hyp2f1(alpha, beta, gamma, z))
    assert hypergeom_service.gauss_2f1(alpha, beta, gamma, z) == pytest.approx(expected, rel=1e-12)

def test_complete_elliptic_integral(hypergeom_service):
    m = 0.6
    value = hypergeom_service.gauss_2f1(0.5, 0.5, 1.0, m)
    assert value.real == pytest.approx(2 / float(mp.pi) * float(mp.ellipk(m)), rel=1e-13)

def test_gauss_2f1_outside_disk(hypergeom_service):
    with pytest.raises(HypergeomDomainError):
        hypergeom_service.gauss_2f1(0.5, 0.5, 1.0, 1.0)

def test_pole_gamma_rejected(hypergeom_service):
    with pytest.raises(ValueError):
        hypergeom_service.gauss_2f1(0.5, 0.5, -2.0, 0.3)

def test_fd_one_variable_is_2f1(hypergeom_service):
    p = FDParams(alpha=0.25, betas=[0.75], gamma=1.0)
    assert hypergeom_service.lauricella_fd(p, [0.4]) == pytest.approx(hypergeom_service.gauss_2f1(0.25, 0.75, 1.0, 0.4), rel=1e-14)

def test_fd_at_origin(hypergeom_service):
    assert hypergeom_service.lauricella_fd(FDParams.quarter(), [0, 0, 0]) == pytest.approx(1.0)

def test_fd_equal_variables_collapse(hypergeom_service):
    x = 0.45
    value = hypergeom_service.lauricella_fd(FDParams.quarter(), [x, x, x])
    assert value == pytest.approx(hypergeom_service.gauss_2f1(0.25, 0.75, 1.0, x), rel=1e-13)

def test_fd_two_variables_is_appell(hypergeom_service):
    p = FDParams(alpha=0.5, betas=[0.25, 0.75], gamma=1.5)
    expected = complex(mp.appellf1(0.5, 0.25, 0.75, 1.5, 0.3, -0.4))
    assert hypergeom_service.lauricella_fd(p, [0.3, -0.4]) == pytest.approx(expected, rel=1e-12)

@pytest.mark.parametrize("x", [(0.2, 0.5, 0.8), (0.36, 0.64, 0.84), (0.05, 0.1, 0.15)])
def test_fd_series_matches_euler_integral(x, hypergeom_service):
    series = hypergeom_service.lauricella_fd(FDParams.quarter(), x)
    integral = hypergeom_service.lauricella_fd_euler(FDParams.quarter(), x)
    assert series == pytest.approx(integral, rel=1e-11)

def test_fd_argument_checks(hypergeom_service):
    with pytest.raises(HypergeomDomainError):
        hypergeom_service.lauricella_fd(FDParams.quarter(), [0.2, 0.5])
    with pytest.raises(HypergeomDomainError):
        hypergeom_service.lauricella_fd(FDParams.quarter(), [0.2, 0.5, 1.0])
    with pytest.raises(HypergeomDomainError):
        hypergeom_service.lauricella_fd_euler(FDParams(alpha=1.5, betas=[0.25], gamma=1.0), [0.2])

def test_fd_params_bounds():
    with pytest.raises(ValueError):
        FDParams(alpha=0.25, betas=[0.25] * 4, gamma=1.0)
    with pytest.raises(ValueError):
        FDParams(alpha=0.25, betas=[0.25], gamma=0.0)
