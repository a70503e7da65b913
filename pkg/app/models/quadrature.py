"""
Quadrature request and result models
"""
from pydantic import BaseModel, ConfigDict, Field

from app.core.config import settings
from app.enums.quadrature_scheme import QuadratureScheme

class QuadratureSpec(BaseModel):
    """Integral over (0,1) with endpoint behaviour t^left (1-t)^right"""
    node_count: int = Field(default_factory=lambda: settings.QUAD_NODES, ge=4, description="Starting node count")
    left_exponent: float = Field(-0.25, gt=-1, description="Algebraic exponent at t = 0")
    right_exponent: float = Field(-0.25, gt=-1, description="Algebraic exponent at t = 1")
    scheme: QuadratureScheme = Field(QuadratureScheme.GAUSS_JACOBI, description="Preferred rule")
    tol: float = Field(default_factory=lambda: settings.QUAD_TOL, gt=0, description="Relative error-indicator tolerance")
    max_nodes: int = Field(default_factory=lambda: settings.QUAD_MAX_NODES, ge=4, description="Node-doubling cap")

    model_config = ConfigDict(frozen=True)

    def with_exponents(self, left: float, right: float) -> "QuadratureSpec":
        return self.model_copy(update={"left_exponent": left, "right_exponent": right})

class QuadratureResult(BaseModel):
    """Integral estimate with its error indicator"""
    value: complex
    error: float = Field(..., ge=0)
    scheme: QuadratureScheme
    nodes: int = Field(..., ge=1)
