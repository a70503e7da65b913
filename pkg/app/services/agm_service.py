"""
AGM Service - Gauss, Borchardt, Borwein cubic/quartic and Kato-Matsumoto
mean iterations and their common limits
"""
import logging
import math
from typing import Optional

import numpy as np
import polars as pl

from app.core.config import settings
from app.core.exceptions import ConvergenceError, DomainError
from app.enums.mean_kind import MeanKind
from app.models.agm import AgmState, AgmTrace

logger = logging.getLogger(__name__)

class AgmServiceError(Exception):
    """Custom exception for AGM service errors"""
    pass

class AgmDomainError(AgmServiceError, DomainError):
    pass

class AgmConvergenceError(AgmServiceError, ConvergenceError):
    pass

def _sqrt(x: float) -> float:
    if x < 0:
        raise AgmDomainError(f"Negative radicand {x} in mean step")
    return math.sqrt(x)

class AgmService:
    """Service for coupled mean iterations"""

    def __init__(self, tol: Optional[float] = None, max_iter: Optional[int] = None):
        self.tol = tol if tol is not None else settings.AGM_TOL
        self.max_iter = max_iter if max_iter is not None else settings.AGM_MAX_ITER

    def iterate_mean(self, kind: MeanKind, s: AgmState) -> AgmState:
        """
        One step of the displayed recurrence for kind

        Args:
            kind: Which mean
            s: Current state, arity matching kind

        Returns:
            AgmState: Next state; all roots are positive real

        Raises:
            AgmDomainError: On arity mismatch or a negative radicand
        """
        if len(s.terms) != kind.arity:
            raise AgmDomainError(f"{kind.value} needs {kind.arity} terms, got {len(s.terms)}")

        match kind:
            case MeanKind.GAUSS2:
                a, b = s.terms
                nxt = ((a + b) / 2, _sqrt(a * b))
            case MeanKind.BORCHARDT4:
                a, b, c, d = s.terms
                nxt = (
                    (a + b + c + d) / 4,
                    (_sqrt(a * b) + _sqrt(c * d)) / 2,
                    (_sqrt(a * c) + _sqrt(b * d)) / 2,
                    (_sqrt(a * d) + _sqrt(b * c)) / 2,
                )
            case MeanKind.BORWEIN_CUBIC2:
                a, b = s.terms
                nxt = ((a + 2 * b) / 3, float(np.cbrt(b * (a * a + a * b + b * b) / 3)))
            case MeanKind.BORWEIN_QUARTIC2:
                a, b = s.terms
                nxt = ((a + 3 * b) / 4, _sqrt((a + b) / 2 * b))
            case MeanKind.KATO_MATSUMOTO4:
                a, b, c, d = s.terms
                nxt = (
                    (a + b + c + d) / 4,
                    _sqrt((a + d) * (b + c)) / 2,
                    _sqrt((a + c) * (b + d)) / 2,
                    _sqrt((a + b) * (c + d)) / 2,
                )
            case _:
                raise AgmDomainError(f"Unknown mean kind: {kind}")

        return AgmState(terms=nxt)

    def mean_limit(self, kind: MeanKind, init: AgmState, tol: Optional[float] = None) -> AgmTrace:
        """
        Iterate until the relative gap drops below tol

        Raises:
            AgmConvergenceError: If the iteration cap is reached first
        """
        tol = tol if tol is not None else self.tol
        if tol <= 0:
            raise AgmDomainError(f"Tolerance must be positive, got {tol}")
        if len(init.terms) != kind.arity:
            raise AgmDomainError(f"{kind.value} needs {kind.arity} terms, got {len(init.terms)}")
        if kind == MeanKind.KATO_MATSUMOTO4:
            init = AgmState(terms=tuple(sorted(init.terms, reverse=True)))

        states = [init]
        state = init
        while state.gap >= tol:
            if len(states) > self.max_iter:
                logger.error("%s mean did not converge: gap %.3e after %d steps", kind.value, state.gap, self.max_iter)
                raise AgmConvergenceError(
                    f"{kind.value} mean did not converge in {self.max_iter} iterations (gap {state.gap:.3e})"
                )
            nxt = self.iterate_mean(kind, state)
            states.append(nxt)
            if nxt.terms == state.terms:
                # floating-point fixed point
                break
            state = nxt

        state = states[-1]
        logger.debug("%s mean converged in %d iterations", kind.value, len(states) - 1)
        return AgmTrace(kind=kind, states=states, limit=state.terms[0], iterations=len(states) - 1)

def trace_frame(trace: AgmTrace) -> pl.DataFrame:
    """Trace as a polars frame with columns n, a, b[, c, d]"""
    return trace.to_frame()

def create_agm_service() -> AgmService:
    """
    Factory function to create an AGM service instance

    Returns:
        AgmService: Configured AGM service instance
    """
    return AgmService()
