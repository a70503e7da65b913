"""
Service wiring for the command handlers
"""
from app.models.cli import CliConfig
from app.services.agm_service import AgmService, create_agm_service
from app.services.ball_service import BallService
from app.services.hypergeom_service import HypergeomService
from app.services.identities_service import IdentitiesService
from app.services.period_service import PeriodService
from app.services.scalar_service import ScalarService
from app.services.theta_service import ThetaService

def get_agm_service(config: CliConfig) -> AgmService:
    return create_agm_service()

def get_hypergeom_service(config: CliConfig) -> HypergeomService:
    return HypergeomService(scalar_service=ScalarService(default_spec=config.quad_spec()))

def get_theta_service(config: CliConfig) -> ThetaService:
    return ThetaService(accuracy=config.accuracy())

def get_period_service(config: CliConfig) -> PeriodService:
    """Period service honouring --nodes and --eps"""
    scalar = ScalarService(default_spec=config.quad_spec())
    return PeriodService(
        scalar_service=scalar,
        hypergeom_service=HypergeomService(scalar_service=scalar),
        ball_service=BallService(theta_service=get_theta_service(config)),
    )

def get_identities_service(config: CliConfig) -> IdentitiesService:
    """Identities service honouring --nodes, --eps and --tol"""
    return IdentitiesService(
        period_service=get_period_service(config),
        agm_service=get_agm_service(config),
        accuracy=config.accuracy(),
        tol=config.tol,
    )
