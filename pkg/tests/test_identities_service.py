"""
Tests for the inverse period map, Thomae and Jacobi type formulas and the AGM theorems
"""
import math

import numpy as np
import pytest

from app.core.config import settings
from app.services.identities_service import MEAN_CHAMBER, SUITES, TABLE2, IdentitiesDomainError
from app.services.transform_service import sample_ball_points
from tests.conftest import CHAMBER

def _assert_passed(report):
    assert report.passed, [(c.id, c.residual) for c in report.failures]

def test_kappa(identities_service, scalar_service):
    kappa = identities_service.kappa()
    assert kappa == pytest.approx(1.0 / ((4 * math.pi) ** 2 * scalar_service.gamma34() ** 8), rel=1e-15)
    assert kappa == pytest.approx(scalar_service.theta00_at_i() ** 8 / (16 * math.pi ** 4), rel=1e-13)
    assert kappa == pytest.approx(1.2454e-3, rel=1e-3)
    assert identities_service.kappa_root() ** 2 == pytest.approx(kappa, rel=1e-14)

def test_table_has_fifteen_rows():
    assert len(TABLE2) == 15
    assert len({idx for _, _, idx in TABLE2}) == 15

@pytest.mark.parametrize("x", CHAMBER)
def test_inverse_period_map(x, identities_service, period_service):
    pv = period_service.period_vector(x)
    xs = identities_service.x_of_v(pv)
    np.testing.assert_allclose(np.real(xs), x, atol=1e-8)
    np.testing.assert_allclose(np.imag(xs), 0.0, atol=1e-8)

def _chamber_corpus(count, seed):
    rng = np.random.default_rng(seed)
    points = []
    while len(points) < count:
        x = np.sort(rng.uniform(0.05, 0.95, 3))
        if np.min(np.diff(x)) > 0.02:
            points.append(tuple(float(t) for t in x))
    return points

@pytest.mark.slow
def test_inverse_period_map_corpus(identities_service, period_service):
    for x in _chamber_corpus(20, settings.SEED):
        xs = identities_service.x_of_v(period_service.period_vector(x))
        np.testing.assert_allclose(np.real(xs), x, atol=1e-8)
        np.testing.assert_allclose(np.imag(xs), 0.0, atol=1e-8)

def test_secondary_relations(identities_service, x_default, pv_default):
    _assert_passed(identities_service.secondary_relations(pv_default, x_default))

@pytest.mark.parametrize("method", ["verify_thomae", "verify_table2", "verify_jacobi", "verify_abcd"])
def test_period_identities(method, identities_service, x_default, pv_default):
    _assert_passed(getattr(identities_service, method)(x_default, pv_default))

@pytest.mark.parametrize("method", ["verify_thomae", "verify_table2", "verify_jacobi"])
def test_perturbed_inputs_fail(method, identities_service, x_default, pv_default):
    report = getattr(identities_service, method)(x_default, pv_default, perturb=(0, 0.05))
    assert not report.passed

def test_perturbation_must_stay_in_chamber(identities_service, x_default, pv_default):
    with pytest.raises(IdentitiesDomainError):
        identities_service.verify_thomae(x_default, pv_default, perturb=(2, 0.5))

def test_thomae3_linear_on_chamber(identities_service, pv_default):
    _assert_passed(identities_service.verify_thomae3(pv_default, linear=True))

def test_thomae3_squared_off_chamber(identities_service, ball_points):
    _assert_passed(identities_service.verify_thomae3(ball_points[0]))

def test_abcd_positive_on_chamber(identities_service, pv_default, x_default):
    vals = identities_service.abcd(pv_default)
    assert vals.is_positive()
    np.testing.assert_allclose(np.abs(vals.ratios()) ** 2, 1 - np.array(x_default.as_tuple()), rtol=1e-8)

@pytest.mark.parametrize("x", MEAN_CHAMBER)
def test_mean_transform(x, identities_service, period_service):
    _assert_passed(identities_service.mean_transform_check(period_service.period_vector(x)))

@pytest.mark.parametrize("index", range(5))
def test_mean_transform_off_chamber(index, identities_service, rng):
    v = sample_ball_points(rng, 5)[index]
    _assert_passed(identities_service.mean_transform_check(v, on_chamber=False))

@pytest.mark.slow
def test_mean_suite_covers_ten_points(identities_service, x_default, pv_default):
    report = identities_service.mean_suite(x_default, pv_default)
    _assert_passed(report)
    prefixes = {c.id.split(".")[0] for c in report.checks}
    assert prefixes == {f"c{k}" for k in range(5)} | {f"b{k}" for k in range(5)}
    assert all(any(c.id == f"c{k}.mean.a.root" for c in report.checks) for k in range(5))
    assert not any(c.id.startswith("b") and c.id.endswith(".root") for c in report.checks)

def test_orbit(identities_service, pv_default, scalar_service):
    report = identities_service.orbit_check(pv_default, n=8)
    _assert_passed(report)
    assert report["orbit.limit"].rhs.real == pytest.approx(scalar_service.agm_limit_constant())

def test_orbit_length(identities_service, pv_default):
    with pytest.raises(IdentitiesDomainError):
        identities_service.orbit_check(pv_default, n=0)

def test_km_main_acceptance(identities_service):
    _assert_passed(identities_service.km_main(1.0, 0.8, 0.6, 0.4))

@pytest.mark.slow
def test_km_main_random_quadruples(identities_service, rng):
    for _ in range(10):
        a, b, c, d = sorted(rng.uniform(0.1, 1.0, 4), reverse=True)
        _assert_passed(identities_service.km_main(a, b, c, d))

def test_km_main_degenerate_skips_theta(identities_service):
    report = identities_service.km_main(1.0, 1.0, 0.7, 0.5)
    _assert_passed(report)
    assert [c.id for c in report.checks] == ["km.fd"]

@pytest.mark.parametrize("quad", [(1.0, 0.6, 0.8, 0.4), (1.0, 0.8, 0.6, 0.0), (0.5, 0.8, 0.6, 0.4)])
def test_km_main_domain(quad, identities_service):
    with pytest.raises(IdentitiesDomainError):
        identities_service.km_main(*quad)

@pytest.mark.parametrize("a,b", [(1.0, 0.8), (1.0, 0.3), (2.0, 0.1), (1.0, 0.99), (3.0, 2.5)])
def test_two_term_means(a, b, identities_service):
    _assert_passed(identities_service.borwein_main(a, b))
    _assert_passed(identities_service.verify_borwein_cubic(a, b))
    _assert_passed(identities_service.verify_gauss(a, b))

def test_borwein_domain(identities_service):
    with pytest.raises(IdentitiesDomainError):
        identities_service.borwein_main(1.0, 1.0)
    with pytest.raises(IdentitiesDomainError):
        identities_service.verify_gauss(0.5, 1.0)

@pytest.mark.parametrize("x", [0.2, 0.5, 0.8])
def test_diagonal(x, identities_service):
    _assert_passed(identities_service.verify_diagonal(x))

def test_cusps(identities_service):
    report = identities_service.verify_cusps()
    _assert_passed(report)
    assert len(identities_service.cusp_points()) == 5

def test_unknown_suite(identities_service):
    with pytest.raises(IdentitiesDomainError):
        identities_service.run_suite("nope")

@pytest.mark.slow
def test_verify_all(identities_service):
    reports = identities_service.verify_all((0.2, 0.5, 0.8), (1.0, 0.8, 0.6, 0.4))
    assert [r.suite for r in reports] == sorted(r.suite for r in reports)
    assert len(reports) == len(SUITES)
    for report in reports:
        _assert_passed(report)
