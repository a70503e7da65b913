"""
Argument helpers shared by the sub-commands
"""
import argparse
from pathlib import Path
from typing import Sequence

import numpy as np

from app.enums.output_format import OutputFormat

class UsageError(Exception):
    """Arguments parse but do not form a valid invocation"""
    pass

def common_options() -> argparse.ArgumentParser:
    """Parent parser carrying the options every sub-command accepts"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=None, help="Output format (default text)")
    common.add_argument("--output", type=Path, default=None, help="Write output to this file")
    common.add_argument("--seed", type=int, default=None, help="RNG seed for random test points")
    common.add_argument("--eps", type=float, default=None, help="Theta truncation target")
    common.add_argument("--nodes", type=int, default=None, help="Starting quadrature node count")
    common.add_argument("--tol", type=float, default=None, help="Override every verification tolerance")
    return common

def strip_separators(values: Sequence[str]) -> list[str]:
    return [v for v in values if v != "--"]

def floats(values: Sequence[str]) -> list[float]:
    """
    Parse real numbers

    Raises:
        UsageError: If a token is not a number
    """
    try:
        return [float(v) for v in strip_separators(values)]
    except ValueError as e:
        raise UsageError(f"expected numbers: {str(e)}") from e

def ball_vector(values: Sequence[float]) -> np.ndarray:
    """
    Flat reals to a complex 4-vector: four reals, or eight as (re, im) pairs

    Raises:
        UsageError: On any other count
    """
    vals = np.asarray(values, dtype=float)
    if vals.size == 4:
        return vals.astype(complex)
    if vals.size == 8:
        return vals[0::2] + 1j * vals[1::2]
    raise UsageError(f"a ball vector takes 4 reals or 8 (re, im) values, got {vals.size}")
