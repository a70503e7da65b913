"""
Tests for the coupled mean iterations
"""
import mpmath as mp
import pytest

from app.enums.mean_kind import MeanKind
from app.models.agm import AgmState
from app.models.hypergeom import FDParams
from app.services.agm_service import AgmDomainError, trace_frame

@pytest.mark.parametrize("a,b", [(1.0, 0.5), (2.0, 1.9), (1.0, 1e-3)])
def test_gauss_agm_matches_mpmath(a, b, agm_service):
    trace = agm_service.mean_limit(MeanKind.GAUSS2, AgmState(terms=(a, b)))
    assert trace.limit == pytest.approx(float(mp.agm(a, b)), rel=1e-14)

def test_equal_terms_stop_immediately(agm_service):
    trace = agm_service.mean_limit(MeanKind.KATO_MATSUMOTO4, AgmState(terms=(1.0, 1.0, 1.0, 1.0)))
    assert trace.iterations == 0
    assert trace.limit == 1.0

def test_km_step(agm_service):
    a, b, c, d = 1.0, 0.8, 0.6, 0.4
    nxt = agm_service.iterate_mean(MeanKind.KATO_MATSUMOTO4, AgmState(terms=(a, b, c, d)))
    assert nxt.terms == pytest.approx((
        0.7,
        ((a + d) * (b + c)) ** 0.5 / 2,
        ((a + c) * (b + d)) ** 0.5 / 2,
        ((a + b) * (c + d)) ** 0.5 / 2,
    ))

def test_km_limit_is_lauricella(agm_service, hypergeom_service):
    trace = agm_service.mean_limit(MeanKind.KATO_MATSUMOTO4, AgmState(terms=(1.0, 0.8, 0.6, 0.4)))
    fd = hypergeom_service.lauricella_fd(FDParams.quarter(), [0.36, 0.64, 0.84])
    assert 1.0 / trace.limit == pytest.approx((fd ** 2).real, rel=1e-12)

def test_km_sorts_input(agm_service):
    ordered = agm_service.mean_limit(MeanKind.KATO_MATSUMOTO4, AgmState(terms=(1.0, 0.8, 0.6, 0.4)))
    shuffled = agm_service.mean_limit(MeanKind.KATO_MATSUMOTO4, AgmState(terms=(0.6, 1.0, 0.4, 0.8)))
    assert shuffled.limit == ordered.limit

def test_homogeneity(agm_service):
    base = agm_service.mean_limit(MeanKind.BORCHARDT4, AgmState(terms=(1.0, 0.7, 0.5, 0.2)))
    scaled = agm_service.mean_limit(MeanKind.BORCHARDT4, AgmState(terms=(1.0, 0.7, 0.5, 0.2)).scaled(3.0))
    assert scaled.limit == pytest.approx(3.0 * base.limit, rel=1e-14)

def test_quadratic_convergence(agm_service):
    trace = agm_service.mean_limit(MeanKind.BORWEIN_QUARTIC2, AgmState(terms=(1.0, 0.1)))
    assert trace.iterations <= 12

def test_arity_mismatch(agm_service):
    with pytest.raises(AgmDomainError):
        agm_service.iterate_mean(MeanKind.GAUSS2, AgmState(terms=(1.0, 0.5, 0.2, 0.1)))

@pytest.mark.parametrize("terms", [(1.0, -0.5), (1.0, 0.0), (1.0,), (1.0, float("nan"))])
def test_invalid_state(terms):
    with pytest.raises(ValueError):
        AgmState(terms=terms)

def test_trace_frame_columns(agm_service):
    trace = agm_service.mean_limit(MeanKind.KATO_MATSUMOTO4, AgmState(terms=(1.0, 0.8, 0.6, 0.4)))
    frame = trace_frame(trace)
    assert frame.columns == ["n", "a", "b", "c", "d"]
    assert frame.height == trace.iterations + 1
    assert frame["a"][0] == 1.0
