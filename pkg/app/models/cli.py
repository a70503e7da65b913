"""
Command-line configuration and result models
"""
from argparse import Namespace
from pathlib import Path
from typing import Iterable, Optional

import polars as pl
from pydantic import BaseModel, ConfigDict, Field

from app.core.config import settings
from app.enums.output_format import OutputFormat
from app.models.quadrature import QuadratureSpec
from app.models.report import ResidualReport
from app.models.theta import ThetaAccuracy

class CliConfig(BaseModel):
    """Options shared by every sub-command"""
    format: OutputFormat = Field(OutputFormat.TEXT, description="Output format")
    output: Optional[Path] = Field(None, description="Write output here instead of stdout")
    seed: int = Field(default_factory=lambda: settings.SEED, ge=0, description="RNG seed for random test points")
    eps: Optional[float] = Field(None, gt=0, description="Theta truncation target")
    nodes: Optional[int] = Field(None, ge=4, description="Starting quadrature node count")
    tol: Optional[float] = Field(None, gt=0, description="Override for every verification tolerance")

    model_config = ConfigDict(frozen=True)

    @classmethod
    def from_namespace(cls, args: Namespace) -> "CliConfig":
        """Collect the shared options from parsed arguments; unset options keep their defaults"""
        values = {
            name: getattr(args, name)
            for name in ("format", "output", "seed", "eps", "nodes", "tol")
            if getattr(args, name, None) is not None
        }
        return cls(**values)

    def accuracy(self) -> Optional[ThetaAccuracy]:
        if self.eps is None:
            return None
        return ThetaAccuracy(target_eps=self.eps)

    def quad_spec(self) -> Optional[QuadratureSpec]:
        if self.nodes is None:
            return None
        return QuadratureSpec(node_count=self.nodes)

class NamedValue(BaseModel):
    """One labelled complex value of a command result"""
    name: str
    re: float
    im: float = 0.0

    @classmethod
    def of(cls, name: str, value: complex) -> "NamedValue":
        value = complex(value)
        return cls(name=name, re=value.real, im=value.imag)

class ValueTable(BaseModel):
    """Result of a value-producing command"""
    command: str
    values: list[NamedValue] = Field(default_factory=list)

    @classmethod
    def build(cls, command: str, pairs: Iterable[tuple[str, complex]]) -> "ValueTable":
        return cls(command=command, values=[NamedValue.of(name, value) for name, value in pairs])

    def to_frame(self) -> pl.DataFrame:
        rows = [v.model_dump() for v in self.values]
        return pl.DataFrame(rows, schema={"name": pl.Utf8, "re": pl.Float64, "im": pl.Float64})

class VerifyResult(BaseModel):
    """All suite reports of one verify invocation"""
    seed: int
    suites: list[ResidualReport] = Field(default_factory=list)
    passed: bool = Field(True, alias="pass")

    model_config = ConfigDict(populate_by_name=True)

    @classmethod
    def build(cls, seed: int, reports: Iterable[ResidualReport]) -> "VerifyResult":
        ordered = sorted(reports, key=lambda r: r.suite)
        return cls(seed=seed, suites=ordered, passed=all(r.passed for r in ordered))

    def to_frame(self) -> pl.DataFrame:
        frames = [r.to_frame() for r in self.suites]
        if not frames:
            return pl.DataFrame()
        return pl.concat(frames).select(["suite", "id", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "tol", "pass"])
