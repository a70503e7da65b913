"""
Branch point and period vector models for w^4 = z(z-x1)(z-x2)(z-x3)(z-1)
"""
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.enums.segment import SegmentId
from app.models.ball import hermitian_form, U_HERMITIAN

class BranchPoints(BaseModel):
    """Real chamber 0 < x1 <= x2 <= x3 < 1; coincident points are allowed"""
    x1: float = Field(..., gt=0, lt=1)
    x2: float = Field(..., gt=0, lt=1)
    x3: float = Field(..., gt=0, lt=1)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_order(self) -> "BranchPoints":
        if not self.x1 <= self.x2 <= self.x3:
            raise ValueError(f"branch points must satisfy x1 <= x2 <= x3, got ({self.x1}, {self.x2}, {self.x3})")
        return self

    @classmethod
    def of(cls, x: "BranchPoints | tuple[float, float, float] | list[float]") -> "BranchPoints":
        if isinstance(x, BranchPoints):
            return x
        x1, x2, x3 = (float(t) for t in x)
        return cls(x1=x1, x2=x2, x3=x3)

    @classmethod
    def diagonal(cls, x: float) -> "BranchPoints":
        return cls(x1=x, x2=x, x3=x)

    @property
    def is_generic(self) -> bool:
        """Strictly inside the chamber"""
        return self.x1 < self.x2 < self.x3

    def as_tuple(self) -> tuple[float, float, float]:
        return self.x1, self.x2, self.x3

    def extended(self) -> tuple[float, float, float, float, float]:
        """(0, x1, x2, x3, 1)"""
        return 0.0, self.x1, self.x2, self.x3, 1.0

    def perturbed(self, index: int, delta: float) -> "BranchPoints":
        """Shift one coordinate (0-based); used for negative controls"""
        xs = list(self.as_tuple())
        xs[index] += delta
        return BranchPoints.of(xs)

class PeriodVector(BaseModel):
    """Period vector v = (int_{B_j} dz/w)_j with its raw assembly and calibration"""
    v: np.ndarray
    raw: np.ndarray
    calibration: float = Field(..., gt=0, description="raw = calibration * v")
    segments: dict[SegmentId, complex] = Field(default_factory=dict)

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @field_validator("v", "raw", mode="before")
    @classmethod
    def validate_vector(cls, value) -> np.ndarray:
        vec = np.asarray(value, dtype=complex).reshape(-1)
        if vec.shape != (4,):
            raise ValueError(f"period vectors have 4 entries, got {vec.shape[0]}")
        if not np.all(np.isfinite(vec)):
            raise ValueError("period vector has non-finite entries")
        return vec

    @property
    def form(self) -> float:
        """v* U v"""
        return hermitian_form(self.v)

    @property
    def quadratic_form(self) -> complex:
        """v^T U v"""
        return complex(self.v @ U_HERMITIAN @ self.v)
