"""
Theta function models: characteristics, Siegel points and truncation accuracy
"""
from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.core.config import settings

class Characteristic(BaseModel):
    """Integer characteristic (a, b); the series uses a/2 and b/2"""
    a: tuple[int, ...] = Field(..., min_length=1, description="Shift of the summation lattice, in halves")
    b: tuple[int, ...] = Field(..., min_length=1, description="Phase shift, in halves")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_dimensions(self) -> "Characteristic":
        if len(self.a) != len(self.b):
            raise ValueError(f"characteristic halves differ in length: {len(self.a)} != {len(self.b)}")
        return self

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def is_even(self) -> bool:
        return sum(x * y for x, y in zip(self.a, self.b)) % 2 == 0

    @classmethod
    def parse(cls, a: str | Sequence[int], b: str | Sequence[int]) -> "Characteristic":
        """Build from digit strings such as ("1100", "0000") or integer sequences"""
        def _coerce(x: str | Sequence[int]) -> tuple[int, ...]:
            if isinstance(x, str):
                return tuple(int(ch) for ch in x)
            return tuple(int(v) for v in x)
        return cls(a=_coerce(a), b=_coerce(b))

    @classmethod
    def zero(cls, n: int) -> "Characteristic":
        return cls(a=(0,) * n, b=(0,) * n)

    def shifted(self, da: Sequence[int] = (), db: Sequence[int] = ()) -> "Characteristic":
        da = tuple(da) or (0,) * self.n
        db = tuple(db) or (0,) * self.n
        return Characteristic(a=tuple(x + y for x, y in zip(self.a, da)), b=tuple(x + y for x, y in zip(self.b, db)))

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.array(self.a, dtype=float), np.array(self.b, dtype=float)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.a)) + ";" + ",".join(map(str, self.b)) + ")"

class SiegelPoint(BaseModel):
    """Symmetric complex matrix with positive definite imaginary part"""
    tau: np.ndarray
    lambda_min: float = 0.0

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @field_validator("tau", mode="before")
    @classmethod
    def validate_tau(cls, v) -> np.ndarray:
        """Symmetric to 1e-12 (relative to the largest entry); stored symmetrized"""
        tau = np.atleast_2d(np.asarray(v, dtype=complex))
        if tau.ndim != 2 or tau.shape[0] != tau.shape[1]:
            raise ValueError(f"tau must be square, got shape {tau.shape}")
        if not np.all(np.isfinite(tau)):
            raise ValueError("tau has non-finite entries")
        scale = max(1.0, float(np.max(np.abs(tau))))
        if np.max(np.abs(tau - tau.T)) > 1e-12 * scale:
            raise ValueError("tau is not symmetric")
        return (tau + tau.T) / 2

    @model_validator(mode="after")
    def check_positive_imaginary(self) -> "SiegelPoint":
        lam = float(np.linalg.eigvalsh(self.tau.imag).min())
        if lam <= 0:
            raise ValueError(f"Im tau is not positive definite (smallest eigenvalue {lam:.3e})")
        self.lambda_min = lam
        return self

    @property
    def n(self) -> int:
        return self.tau.shape[0]

    @classmethod
    def diagonal(cls, entries: Sequence[complex]) -> "SiegelPoint":
        return cls(tau=np.diag(np.asarray(entries, dtype=complex)))

class ThetaAccuracy(BaseModel):
    """Truncation target for lattice sums"""
    target_eps: float = Field(default_factory=lambda: settings.THETA_EPS, gt=0)
    max_radius: int = Field(default_factory=lambda: settings.THETA_MAX_RADIUS, ge=4)

    model_config = ConfigDict(frozen=True)
