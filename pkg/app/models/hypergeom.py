"""
Hypergeometric parameter models
"""
from pydantic import BaseModel, Field, field_validator

class FDParams(BaseModel):
    """Parameters (alpha, beta_1..beta_m, gamma) of the Lauricella F_D series in m <= 3 variables"""
    alpha: complex = Field(..., description="Numerator parameter shared by all variables")
    betas: list[complex] = Field(..., min_length=1, max_length=3, description="One numerator parameter per variable")
    gamma: complex = Field(..., description="Denominator parameter")

    @field_validator("gamma")
    @classmethod
    def validate_gamma(cls, v: complex) -> complex:
        """gamma must avoid the poles 0, -1, -2, ..."""
        if v.imag == 0 and v.real <= 0 and float(v.real).is_integer():
            raise ValueError(f"gamma must not be a nonpositive integer, got {v}")
        return v

    @property
    def m(self) -> int:
        return len(self.betas)

    @classmethod
    def quarter(cls) -> "FDParams":
        """F_D(1/4; 1/4, 1/4, 1/4; 1), the parameters of the period integrals"""
        return cls(alpha=0.25, betas=[0.25, 0.25, 0.25], gamma=1.0)
