"""
Shared fixtures: services, chamber points and seeded ball points
"""
import numpy as np
import pytest

from app.core.config import settings
from app.models.periods import BranchPoints
from app.services.agm_service import create_agm_service
from app.services.ball_service import create_ball_service
from app.services.hypergeom_service import create_hypergeom_service
from app.services.identities_service import create_identities_service
from app.services.period_service import create_period_service
from app.services.scalar_service import create_scalar_service
from app.services.theta_service import create_theta_service
from app.services.transform_service import create_transform_service, sample_ball_points

CHAMBER = [(0.2, 0.5, 0.8), (0.1, 0.3, 0.6), (0.35, 0.4, 0.9)]

def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running corpus sweeps")

@pytest.fixture(scope="session")
def scalar_service():
    return create_scalar_service()

@pytest.fixture(scope="session")
def agm_service():
    return create_agm_service()

@pytest.fixture(scope="session")
def hypergeom_service():
    return create_hypergeom_service()

@pytest.fixture(scope="session")
def theta_service():
    return create_theta_service()

@pytest.fixture(scope="session")
def ball_service():
    return create_ball_service()

@pytest.fixture(scope="session")
def transform_service():
    return create_transform_service()

@pytest.fixture(scope="session")
def period_service():
    return create_period_service()

@pytest.fixture(scope="session")
def identities_service():
    return create_identities_service()

@pytest.fixture(scope="session")
def x_default():
    return BranchPoints.of(CHAMBER[0])

@pytest.fixture(scope="session")
def pv_default(period_service, x_default):
    return period_service.period_vector(x_default)

@pytest.fixture
def rng():
    return np.random.default_rng(settings.SEED)

@pytest.fixture
def ball_points(rng):
    return sample_ball_points(rng, 3)
