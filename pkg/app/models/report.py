"""
Verification report models: single residual checks, suite reports and the
four quadratic theta expressions a, b1, b2, b3
"""
import math
from typing import Iterable

import polars as pl
from pydantic import BaseModel, ConfigDict, Field

class ResidualCheck(BaseModel):
    """One identity LHS = RHS with its residual against a tolerance"""
    id: str = Field(..., description="Stable identifier of the identity")
    lhs_re: float
    lhs_im: float
    rhs_re: float
    rhs_im: float
    residual: float = Field(..., description="|lhs - rhs|, relative when |rhs| > 1")
    tol: float = Field(..., gt=0)
    passed: bool = Field(..., alias="pass")

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    @classmethod
    def compare(cls, check_id: str, lhs: complex, rhs: complex, tol: float) -> "ResidualCheck":
        """
        Build a check from both sides

        The residual is |lhs - rhs| / max(1, |rhs|); a non-finite side fails the check.
        """
        lhs, rhs = complex(lhs), complex(rhs)
        diff = abs(lhs - rhs)
        residual = diff / max(1.0, abs(rhs)) if math.isfinite(diff) else math.inf
        return cls(
            id=check_id,
            lhs_re=lhs.real,
            lhs_im=lhs.imag,
            rhs_re=rhs.real,
            rhs_im=rhs.imag,
            residual=residual,
            tol=tol,
            passed=residual <= tol,
        )

    @classmethod
    def holds(cls, check_id: str, condition: bool, value: complex, tol: float) -> "ResidualCheck":
        """A boolean property recorded as a check; value is reported on the LHS"""
        value = complex(value)
        return cls(
            id=check_id,
            lhs_re=value.real,
            lhs_im=value.imag,
            rhs_re=0.0,
            rhs_im=0.0,
            residual=0.0 if condition else math.inf,
            tol=tol,
            passed=bool(condition),
        )

    @property
    def lhs(self) -> complex:
        return complex(self.lhs_re, self.lhs_im)

    @property
    def rhs(self) -> complex:
        return complex(self.rhs_re, self.rhs_im)

class ResidualReport(BaseModel):
    """Named collection of checks; passes iff every check passes"""
    suite: str
    checks: list[ResidualCheck] = Field(default_factory=list)
    passed: bool = Field(True, alias="pass")

    model_config = ConfigDict(populate_by_name=True)

    @classmethod
    def build(cls, suite: str, checks: Iterable[ResidualCheck]) -> "ResidualReport":
        """Assemble a report with checks sorted by id"""
        ordered = sorted(checks, key=lambda c: c.id)
        return cls(suite=suite, checks=ordered, passed=all(c.passed for c in ordered))

    def __getitem__(self, check_id: str) -> ResidualCheck:
        for check in self.checks:
            if check.id == check_id:
                return check
        raise KeyError(check_id)

    @property
    def failures(self) -> list[ResidualCheck]:
        return [c for c in self.checks if not c.passed]

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def to_frame(self) -> pl.DataFrame:
        """Checks as a table with the JSON column names"""
        rows = [c.model_dump(by_alias=True) for c in self.checks]
        schema = {
            "id": pl.Utf8,
            "lhs_re": pl.Float64,
            "lhs_im": pl.Float64,
            "rhs_re": pl.Float64,
            "rhs_im": pl.Float64,
            "residual": pl.Float64,
            "tol": pl.Float64,
            "pass": pl.Boolean,
        }
        return pl.DataFrame(rows, schema=schema).with_columns(pl.lit(self.suite).alias("suite"))

class AbcdValues(BaseModel):
    """a, b1, b2, b3 evaluated at N . tau(v)"""
    a: complex
    b1: complex
    b2: complex
    b3: complex

    model_config = ConfigDict(frozen=True)

    def as_tuple(self) -> tuple[complex, complex, complex, complex]:
        return self.a, self.b1, self.b2, self.b3

    def ratios(self) -> tuple[complex, complex, complex]:
        """(b1/a, b2/a, b3/a)"""
        return self.b1 / self.a, self.b2 / self.a, self.b3 / self.a

    def is_positive(self, tol: float = 1e-10) -> bool:
        """All four values real and positive up to tol relative imaginary parts"""
        return all(z.real > 0 and abs(z.imag) <= tol * abs(z) for z in self.as_tuple())
