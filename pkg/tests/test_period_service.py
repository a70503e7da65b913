"""
Tests for segment integrals, period vectors and the homology relations
"""
import math

import mpmath as mp
import numpy as np
import pytest

from app.enums.segment import SegmentId
from app.models.periods import BranchPoints
from app.services.period_service import PeriodDomainError, interior_point, upper_branch
from tests.conftest import CHAMBER

def _modulus_oracle(seg, x):
    """Direct mpmath integral of |z(z-x1)(z-x2)(z-x3)(z-1)|^(-1/4); the infinite tails are folded by z = 1/s"""
    f = lambda z: abs(z * (z - x[0]) * (z - x[1]) * (z - x[2]) * (z - 1)) ** mp.mpf(-0.25)
    if seg == SegmentId.L1:
        return float(mp.quad(f, [-1, 0]) + mp.quad(lambda s: f(-1 / s) / s ** 2, [0, 1]))
    if seg == SegmentId.L6:
        return float(mp.quad(f, [1, 2]) + mp.quad(lambda s: f(1 / s) / s ** 2, [0, 0.5]))
    pts = [None, 0, x[0], x[1], x[2], 1]
    lo, hi = seg.bounds
    return float(mp.quad(f, [pts[lo], pts[hi]]))

@pytest.mark.parametrize("seg", list(SegmentId))
def test_segment_modulus_matches_mpmath(seg, period_service):
    x = CHAMBER[0]
    assert period_service.segment_modulus(seg, x) == pytest.approx(_modulus_oracle(seg, x), rel=1e-9)

def _integral_oracle(seg, x):
    """mpmath integral of dz/w with w continued from the upper half-plane as a product of principal fourth roots"""
    pts = (0, x[0], x[1], x[2], 1)
    f = lambda z: 1 / mp.fprod(mp.power(mp.mpc(z) - e, mp.mpf(0.25)) for e in pts)
    if seg == SegmentId.L1:
        value = mp.quad(f, [-1, 0]) + mp.quad(lambda s: f(-1 / s) / s ** 2, [0, 1])
    elif seg == SegmentId.L6:
        value = mp.quad(f, [1, 2]) + mp.quad(lambda s: f(1 / s) / s ** 2, [0, 0.5])
    else:
        lo, hi = seg.bounds
        value = mp.quad(f, [pts[lo - 1], pts[hi - 1]])
    return complex(value)

@pytest.mark.parametrize("seg", list(SegmentId))
def test_segment_phase_matches_continued_branch(seg, period_service):
    x = CHAMBER[1]
    val = period_service.segment_integral(seg, x)
    assert val == pytest.approx(_integral_oracle(seg, x), rel=1e-9)

@pytest.mark.parametrize("seg", list(SegmentId))
def test_upper_branch_phase(seg, x_default):
    z = interior_point(seg, x_default)
    w = upper_branch(z, x_default)
    assert w == pytest.approx(abs(w) * np.exp(1j * seg.arg), rel=1e-14)

def test_verify_periods_checks_phases(period_service, x_default):
    report = period_service.verify_periods(x_default)
    for seg in SegmentId:
        assert report[f"periods.phase.{seg.name}"].passed
        assert report[f"periods.branch.{seg.name}"].passed

def test_calibration_is_two(period_service):
    assert period_service.calibration() == pytest.approx(2.0, rel=1e-10)

@pytest.mark.parametrize("x", CHAMBER)
def test_period_vector_in_ball(x, period_service):
    pv = period_service.period_vector(x)
    assert pv.form < 0
    np.testing.assert_allclose(pv.raw, pv.calibration * pv.v, rtol=1e-14)

@pytest.mark.parametrize("x", CHAMBER)
def test_homology_identities(x, period_service):
    report = period_service.homology_identities(x)
    assert report.passed, [(c.id, c.residual) for c in report.failures]
    assert period_service.homology_residual(x) < 1e-9

def test_verify_periods(period_service, x_default):
    report = period_service.verify_periods(x_default)
    assert report.passed, [(c.id, c.residual) for c in report.failures]

def test_tu_assembly_agrees(period_service, pv_default, x_default):
    np.testing.assert_allclose(period_service.period_vector_via_tu(x_default), pv_default.v, rtol=1e-9)

@pytest.mark.parametrize("x", [0.1, 0.5, 0.77])
def test_diagonal_form(x, period_service, hypergeom_service):
    pv = period_service.period_vector(BranchPoints.diagonal(x))
    f = hypergeom_service.gauss_2f1(0.25, 0.75, 1.0, x)
    fc = hypergeom_service.gauss_2f1(0.25, 0.75, 1.0, 1.0 - x)
    np.testing.assert_allclose(
        pv.v, [math.sqrt(2.0) * math.pi * f, -2 * math.pi * fc, 0, 0], atol=1e-9
    )

def test_near_diagonal_decay(period_service):
    """|v3|, |v4| shrink monotonically as the branch points merge"""
    sizes = []
    for delta in (1e-1, 1e-2, 1e-3):
        v = period_service.period_vector((0.5 - delta, 0.5, 0.5 + delta)).v
        sizes.append(max(abs(v[2]), abs(v[3])))
    assert sizes[0] > sizes[1] > sizes[2]

def test_tau_sharp_fixes_diagonal(period_service):
    pv = period_service.period_vector(BranchPoints.diagonal(0.3))
    tau1 = -1j * pv.v[1] / pv.v[0]
    np.testing.assert_allclose(np.diag(period_service.tau_sharp(pv).tau), [tau1, tau1, 1j, 1j], atol=1e-10)

@pytest.mark.parametrize("x", [(0.5, 0.2, 0.8), (0.0, 0.5, 0.8), (0.2, 0.5, 1.0)])
def test_invalid_branch_points(x, period_service):
    with pytest.raises(PeriodDomainError):
        period_service.period_vector(x)

def test_branch_point_helpers():
    x = BranchPoints.of((0.2, 0.5, 0.8))
    assert x.is_generic
    assert not BranchPoints.diagonal(0.4).is_generic
    assert x.extended() == (0.0, 0.2, 0.5, 0.8, 1.0)
    assert x.perturbed(1, 0.1).x2 == pytest.approx(0.6)
    with pytest.raises(ValueError):
        x.perturbed(0, 0.5)
