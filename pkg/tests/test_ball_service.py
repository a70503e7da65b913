"""
Tests for the ball model, the Siegel embedding and the named group elements
"""
import numpy as np
import pytest

from app.enums.named_elem import NamedElem
from app.models.ball import BallPoint, SymplecticElem, UnitaryElem, exact_j, is_symplectic, is_unitary
from app.models.dyadic import DyadicGaussian, dequal, deye, dmatmul, dmatrix
from app.models.theta import Characteristic, SiegelPoint
from app.services.ball_service import V0, BallDomainError, DegeneratePointError
from app.services.transform_service import sample_ball_points

UNITARY = [name for name in NamedElem if name.is_unitary]

def test_tau_at_anchor_is_identity(ball_service):
    tp = ball_service.tau_of_v(V0)
    np.testing.assert_allclose(tp.tau, 1j * np.eye(4), atol=1e-15)

def test_tau_is_projective(ball_service, ball_points):
    v = ball_points[0]
    np.testing.assert_allclose(ball_service.tau_of_v(v).tau, ball_service.tau_of_v((0.3 - 2j) * v).tau, atol=1e-12)

def test_tau_normalisation(ball_service, ball_points):
    u = np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    for v in ball_points:
        tau = ball_service.tau_of_v(v).tau
        np.testing.assert_allclose(u @ tau @ u @ tau, -np.eye(4), atol=1e-10)
        assert np.linalg.det(tau) == pytest.approx(1.0, abs=1e-10)

def test_degenerate_point(ball_service):
    with pytest.raises(DegeneratePointError):
        ball_service.tau_of_v([1, 0, 1, 1j])

def test_ball_point_validation():
    BallPoint(v=V0)
    with pytest.raises(ValueError):
        BallPoint(v=[1, 1, 0, 0])
    with pytest.raises(ValueError):
        BallPoint(v=[0, 0, 0, 0])

@pytest.mark.parametrize("name", UNITARY)
def test_named_unitary_elements(name, ball_service):
    g = ball_service.builtin(name)
    assert is_unitary(g)
    inv = ball_service.unitary_inverse(g).g
    assert dequal(dmatmul(g, inv), deye(4))

@pytest.mark.parametrize("name", [NamedElem.N, NamedElem.MRHO, NamedElem.JSWAP])
def test_named_symplectic_elements(name, ball_service):
    m = ball_service.symplectic(name)
    assert is_symplectic(m.M)
    inv = ball_service.symplectic_inverse(m).M
    assert dequal(dmatmul(m.M, inv), deye(8))

def test_unknown_name(ball_service):
    with pytest.raises(BallDomainError):
        ball_service.builtin("g99")

@pytest.mark.parametrize("name", UNITARY)
def test_jmath_is_symplectic(name, ball_service):
    m = ball_service.jmath(ball_service.builtin(name))
    assert is_symplectic(m.M)

@pytest.mark.parametrize("name", UNITARY)
def test_embedding_is_equivariant(name, ball_service, rng):
    g = ball_service.builtin(name)
    m = ball_service.jmath(g)
    for v in sample_ball_points(rng, 20):
        moved = ball_service.tau_of_v(ball_service.apply(g, v))
        acted = ball_service.sp_act(m, ball_service.tau_of_v(v))
        np.testing.assert_allclose(moved.tau, acted.tau, atol=1e-10)

@pytest.mark.parametrize("first", UNITARY)
@pytest.mark.parametrize("second", UNITARY)
def test_jmath_is_multiplicative(first, second, ball_service):
    g, h = ball_service.builtin(first), ball_service.builtin(second)
    product = ball_service.jmath(dmatmul(g, h)).M
    assert dequal(product, dmatmul(ball_service.jmath(g).M, ball_service.jmath(h).M))

@pytest.mark.parametrize("j,k,name", [(0, 1, NamedElem.G01), (1, 2, NamedElem.G12), (1, 3, NamedElem.G13), (2, 3, NamedElem.G23)])
def test_half_turns_reproduce_named_elements(j, k, name, ball_service):
    assert dequal(ball_service.half_turn(j, k).g, ball_service.builtin(name))

def test_half_turn_range(ball_service):
    with pytest.raises(BallDomainError):
        ball_service.half_turn(2, 2)
    with pytest.raises(BallDomainError):
        ball_service.half_turn(0, 5)

def test_every_half_turn_is_unitary(ball_service):
    for j in range(5):
        for k in range(j + 1, 5):
            assert is_unitary(ball_service.half_turn(j, k).g)

def test_intersection_form(ball_service):
    det, sign = ball_service.intersection_check()
    assert det == DyadicGaussian(-4)
    assert sign in (1, -1)

def test_symplectic_validation():
    with pytest.raises(ValueError):
        SymplecticElem(M=dmatrix([[1, 1], [0, 2]]))
    with pytest.raises(ValueError):
        SymplecticElem(M=dmatrix([[1j, 0], [0, -1j]]))
    with pytest.raises(ValueError):
        UnitaryElem(g=dmatrix([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    assert is_symplectic(exact_j(3))

def test_sp_act_identity_and_inversion(ball_service):
    tp = SiegelPoint(tau=[[1.1j, 0.2], [0.2, 0.8j + 0.3]])
    same = ball_service.sp_act(SymplecticElem.identity(2), tp)
    np.testing.assert_allclose(same.tau, tp.tau, atol=1e-15)
    inverted = ball_service.sp_act(SymplecticElem(M=exact_j(2)), tp)
    np.testing.assert_allclose(inverted.tau, -np.linalg.inv(tp.tau), atol=1e-12)
    assert ball_service.chi(SymplecticElem(M=exact_j(2)), tp) == pytest.approx(np.linalg.det(-tp.tau))

def test_char_act_translation(ball_service):
    """[[I, S], [O, I]] fixes a and sends b to b - a S + diag(S)"""
    m = dmatrix([[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    image = ball_service.char_act(m, Characteristic.parse("01", "00"))
    assert image.a == (0, 1)
    assert image.b == (1, 0)
    shifted = ball_service.char_act(m, Characteristic.parse("10", "00"))
    assert shifted.b == (0, 0)

def test_char_act_rejects_non_integral(ball_service):
    with pytest.raises(BallDomainError):
        ball_service.char_act(ball_service.symplectic(NamedElem.M1).M, Characteristic.zero(2))

def test_nu_characteristics_are_even(ball_service):
    for j in range(12):
        assert ball_service.nu_char(j).is_even
    with pytest.raises(BallDomainError):
        ball_service.nu_char(12)

def test_continued_sqrt_at_anchor(ball_service):
    g = ball_service.builtin(NamedElem.G23)
    root = ball_service.sqrt_chi_ball(g, V0)
    assert root ** 2 == pytest.approx(ball_service.chi_ball(g, V0), rel=1e-12)

def test_continued_sqrt_squares_back(ball_service, ball_points):
    g = ball_service.builtin(NamedElem.G13)
    for v in ball_points:
        root = ball_service.sqrt_chi_ball(g, v)
        assert root ** 2 == pytest.approx(ball_service.chi_ball(g, v), rel=1e-10)
