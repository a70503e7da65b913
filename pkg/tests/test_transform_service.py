"""
Tests for the theta transformation formulas of the named elements
"""
import numpy as np
import pytest

from app.models.theta import SiegelPoint
from app.services.ball_service import V0
from app.services.transform_service import (
    TransformDomainError,
    det_sqrt,
    sample_ball_points,
    sample_siegel_points,
)

def _assert_passed(report):
    assert report.passed, [(c.id, c.residual) for c in report.failures]

def test_samplers_are_seeded():
    first = sample_ball_points(np.random.default_rng(7), 3)
    second = sample_ball_points(np.random.default_rng(7), 3)
    for v, w in zip(first, second):
        np.testing.assert_array_equal(v, w)
    for tp in sample_siegel_points(np.random.default_rng(7), 3):
        assert tp.n == 2 and tp.lambda_min > 0

def test_det_sqrt():
    assert det_sqrt(SiegelPoint(tau=1j * np.eye(4))) == pytest.approx(1.0)
    tp = SiegelPoint(tau=[[0.3 + 1j, 0.1], [0.1, -0.2 + 0.9j]])
    root = det_sqrt(tp)
    assert root ** 2 == pytest.approx(np.linalg.det(-1j * tp.tau), rel=1e-13)
    assert root.real > 0

def test_e_r_at_anchor(transform_service):
    assert transform_service.e_r(V0) == pytest.approx(0.5, abs=1e-12)

def test_monodromy_items(transform_service, ball_points):
    _assert_passed(transform_service.monodromy_items(V0))
    _assert_passed(transform_service.monodromy_items(ball_points[0]))

def test_inversion_and_vanishing(transform_service, ball_points, ball_service):
    pairs = [ball_service.nu_char(j) for j in range(12)]
    report = transform_service.inversion_on_ball(ball_points[1], pairs)
    _assert_passed(report)
    assert any(c.id.startswith("vanishing.") for c in report.checks)

def test_n_action(transform_service, ball_points):
    _assert_passed(transform_service.n_action(ball_points[0]))

def test_kappa_inference(transform_service, ball_service, ball_points):
    tp = ball_service.tau_of_v(ball_points[2])
    _assert_passed(transform_service.kappa_inference(tp, transform_service.default_kappa_matrices()))

@pytest.mark.parametrize("method", ["g13_action", "g12_action", "g_actions", "r1_action", "r_relations"])
def test_ball_actions(method, transform_service, ball_points):
    for v in (V0, ball_points[0]):
        _assert_passed(getattr(transform_service, method)(v))

def test_genus2_blocks(transform_service):
    for tp in sample_siegel_points(np.random.default_rng(11), 2):
        report = transform_service.genus2_actions(tp)
        _assert_passed(report)
        assert report["s1.factorization"].passed
        assert report["s1.lift"].passed

def test_s1_parity_requirement(transform_service):
    with pytest.raises(TransformDomainError):
        transform_service._s1_factors((0, 1), (0, 0))

@pytest.mark.slow
def test_full_transform_suite(transform_service):
    report = transform_service.verify_transform(seed=20240501)
    _assert_passed(report)
    assert report.suite == "transform"
    prefixes = {c.id.split(".")[0] for c in report.checks}
    assert prefixes == {f"p{k}" for k in range(5)} | {f"s{k}" for k in range(5)}
    for k in range(5):
        for job in ("monodromy", "n", "g13", "g12", "gact"):
            assert any(c.id.startswith(f"p{k}.{job}.") for c in report.checks)
