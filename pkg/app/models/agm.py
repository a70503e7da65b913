"""
Mean iteration states and convergence traces
"""
import math

import polars as pl
from pydantic import BaseModel, Field, field_validator, model_validator

from app.enums.mean_kind import MeanKind

class AgmState(BaseModel):
    """One step (a_n, b_n[, c_n, d_n]) of a coupled mean iteration"""
    terms: tuple[float, ...] = Field(..., min_length=2, max_length=4, description="Current terms")

    @field_validator("terms")
    @classmethod
    def validate_terms(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        """Terms must be finite and strictly positive"""
        if len(v) not in (2, 4):
            raise ValueError(f"a mean state has 2 or 4 terms, got {len(v)}")
        for x in v:
            if not math.isfinite(x) or x <= 0:
                raise ValueError(f"mean terms must be finite and positive, got {x}")
        return v

    @property
    def gap(self) -> float:
        """Relative spread (max - min) / max"""
        return (max(self.terms) - min(self.terms)) / max(self.terms)

    def scaled(self, lam: float) -> "AgmState":
        return AgmState(terms=tuple(lam * x for x in self.terms))

class AgmTrace(BaseModel):
    """All states of a mean iteration up to convergence"""
    kind: MeanKind
    states: list[AgmState] = Field(..., min_length=1)
    limit: float = Field(..., gt=0)
    iterations: int = Field(..., ge=0)

    @model_validator(mode="after")
    def check_iterations(self) -> "AgmTrace":
        if self.iterations != len(self.states) - 1:
            raise ValueError("iterations must equal len(states) - 1")
        return self

    def to_frame(self) -> pl.DataFrame:
        """Trace as a table with columns n, a, b[, c, d]"""
        names = ["a", "b", "c", "d"][: self.kind.arity]
        data: dict[str, list] = {"n": list(range(len(self.states)))}
        for k, name in enumerate(names):
            data[name] = [s.terms[k] for s in self.states]
        return pl.DataFrame(data)
