"""
Application configuration settings
"""
from pydantic_settings import BaseSettings

class Settings(BaseSettings):
    """Application settings"""
    
    PROJECT_NAME: str = "Theta AGM"
    PROJECT_DESCRIPTION: str = "Quaternary AGM, Lauricella F_D and Riemann theta constant toolkit"
    VERSION: str = "0.1.0"
    LOG_LEVEL: str = "INFO"
    
    # Mean iterations
    AGM_TOL: float = 1e-15
    AGM_MAX_ITER: int = 64
    
    # Hypergeometric series
    SERIES_REL_TOL: float = 1e-17
    SERIES_MAX_TERMS: int = 1_000_000
    SERIES_MAX_DEGREE: int = 16384
    
    # Theta lattice sums
    THETA_EPS: float = 1e-14
    THETA_MAX_RADIUS: int = 12
    
    # Quadrature
    QUAD_NODES: int = 64
    QUAD_MAX_NODES: int = 2048
    QUAD_TOL: float = 1e-13
    
    # Verification tolerances
    TOL_SIMPLE: float = 1e-10
    TOL_COMPOSITE: float = 1e-8
    TOL_TABLE2: float = 1e-7
    TOL_TRANSFORM: float = 1e-9
    
    # Corpus generation and suite execution
    SEED: int = 20240501
    MAX_WORKERS: int = 4
    TRANSFORM_POINTS: int = 5
    
    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"  # Ignore extra environment variables

settings = Settings()
