"""
Scalar Service - special constants, Pochhammer symbols and quadrature
for integrands with algebraic endpoint singularities
"""
import cmath
import logging
import math
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy import special

from app.core.exceptions import ConsistencyError, ConvergenceError, DomainError
from app.enums.quadrature_scheme import QuadratureScheme
from app.models.quadrature import QuadratureResult, QuadratureSpec

logger = logging.getLogger(__name__)

# f(t, 1 - t) -> values; both arguments are passed so callers can form
# distances to the far endpoint without cancellation
Integrand = Callable[[np.ndarray, np.ndarray], np.ndarray]

SQRT2 = math.sqrt(2.0)

class ScalarServiceError(Exception):
    """Custom exception for scalar service errors"""
    pass

class QuadratureConvergenceError(ScalarServiceError, ConvergenceError):
    """Neither Gauss-Jacobi nor tanh-sinh reached the requested tolerance"""
    pass

class ScalarDomainError(ScalarServiceError, DomainError):
    pass

def e(x: complex) -> complex:
    """exp(2 pi i x)"""
    return cmath.exp(2j * math.pi * x)

@lru_cache(maxsize=128)
def gauss_jacobi_rule(n: int, left: float, right: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Gauss-Jacobi rule for the weight t^left (1-t)^right on (0,1)

    Returns:
        tuple: nodes t, complements 1 - t, weights
    """
    # scipy's weight is (1-x)^alpha (1+x)^beta on [-1, 1]
    x, w = special.roots_jacobi(n, right, left)
    t = 0.5 * (1.0 + x)
    omt = 0.5 * (1.0 - x)
    w = w * 2.0 ** (-(left + right + 1.0))
    for arr in (t, omt, w):
        arr.setflags(write=False)
    return t, omt, w

def _tanh_sinh_sum(f: Integrand, left: float, right: float, h: float) -> tuple[complex, int]:
    u_max = math.asinh(40.0 / (math.pi * min(left + 1.0, right + 1.0))) + 0.5
    k = np.arange(-math.ceil(u_max / h), math.ceil(u_max / h) + 1)
    u = k * h
    s = math.pi * np.sinh(u)
    log_t = -np.logaddexp(0.0, -s)
    log_omt = -np.logaddexp(0.0, s)
    # weight t^left (1-t)^right times dt/du = t (1-t) pi cosh u
    log_w = (left + 1.0) * log_t + (right + 1.0) * log_omt + np.log(math.pi * np.cosh(u))
    keep = log_w > -745.0
    t = np.exp(log_t[keep])
    omt = np.exp(log_omt[keep])
    values = np.asarray(f(t, omt), dtype=complex)
    return complex(h * np.sum(np.exp(log_w[keep]) * values)), int(keep.sum())

class ScalarService:
    """Service for special constants and endpoint-weighted quadrature"""

    def __init__(self, default_spec: Optional[QuadratureSpec] = None):
        self._default_spec = default_spec
        self._gamma34: Optional[float] = None

    @property
    def default_spec(self) -> QuadratureSpec:
        """Get or create the default quadrature spec"""
        if self._default_spec is None:
            self._default_spec = QuadratureSpec()
        return self._default_spec

    def pochhammer(self, alpha: complex, n: int) -> complex:
        """(alpha)_n = alpha (alpha+1) ... (alpha+n-1)"""
        if n < 0:
            raise ScalarDomainError(f"Pochhammer index must be nonnegative, got {n}")
        result = 1.0 + 0j if isinstance(alpha, complex) else 1.0
        for k in range(n):
            result *= alpha + k
        return result

    def gamma34(self) -> float:
        """
        Gamma(3/4), self-checked by Gamma(1/4) Gamma(3/4) = sqrt(2) pi

        Raises:
            ConsistencyError: If the reflection check fails
        """
        if self._gamma34 is None:
            g = float(special.gamma(0.75))
            check = float(special.gamma(0.25)) * g / (SQRT2 * math.pi) - 1.0
            if abs(check) > 1e-14:
                raise ConsistencyError(f"Gamma(3/4) reflection check failed: relative error {check:.3e}")
            self._gamma34 = g
        return self._gamma34

    def theta00_at_i(self) -> float:
        """pi^(1/4) / Gamma(3/4)"""
        return math.pi ** 0.25 / self.gamma34()

    def agm_limit_constant(self) -> float:
        """pi / Gamma(3/4)^4, the common limit of a(R^n v)"""
        return math.pi / self.gamma34() ** 4

    def beta(self, p: float, q: float) -> float:
        return float(special.beta(p, q))

    def quad_segment(self, f: Integrand, spec: Optional[QuadratureSpec] = None) -> QuadratureResult:
        """
        Integrate t^left (1-t)^right f(t) over (0,1)

        Args:
            f: Smooth part of the integrand, called as f(t, 1 - t)
            spec: Exponents, starting node count, tolerance and preferred scheme

        Returns:
            QuadratureResult: Estimate and |Q_n - Q_2n| error indicator

        Raises:
            QuadratureConvergenceError: If no rule reaches the tolerance
        """
        spec = spec or self.default_spec
        left, right = spec.left_exponent, spec.right_exponent

        if spec.scheme == QuadratureScheme.GAUSS_JACOBI:
            n = spec.node_count
            previous = self._gauss_jacobi(f, n, left, right)
            while 2 * n <= spec.max_nodes:
                current = self._gauss_jacobi(f, 2 * n, left, right)
                error = abs(current - previous)
                if not math.isfinite(error):
                    raise ScalarDomainError("Quadrature produced a non-finite value")
                if error <= spec.tol * max(1.0, abs(current)):
                    return QuadratureResult(value=current, error=error, scheme=QuadratureScheme.GAUSS_JACOBI, nodes=2 * n)
                previous = current
                n *= 2
            logger.debug("Gauss-Jacobi did not settle at %d nodes, falling back to tanh-sinh", n)

        return self.tanh_sinh(f, left, right, spec.tol)

    def _gauss_jacobi(self, f: Integrand, n: int, left: float, right: float) -> complex:
        t, omt, w = gauss_jacobi_rule(n, left, right)
        return complex(np.dot(w, np.asarray(f(t, omt), dtype=complex)))

    def tanh_sinh(self, f: Integrand, left: float, right: float, tol: float, max_levels: int = 9) -> QuadratureResult:
        h = 0.5
        previous, _ = _tanh_sinh_sum(f, left, right, h)
        for _ in range(max_levels):
            h /= 2.0
            current, nodes = _tanh_sinh_sum(f, left, right, h)
            error = abs(current - previous)
            if not math.isfinite(error):
                raise ScalarDomainError("Quadrature produced a non-finite value")
            if error <= tol * max(1.0, abs(current)):
                return QuadratureResult(value=current, error=error, scheme=QuadratureScheme.TANH_SINH, nodes=nodes)
            previous = current
        logger.warning("tanh-sinh quadrature stalled at h=%g with error %.3e", h, error)
        raise QuadratureConvergenceError(
            f"Quadrature did not converge: error indicator {error:.3e} above tolerance {tol:.1e}"
        )

def create_scalar_service() -> ScalarService:
    """
    Factory function to create a scalar service instance

    Returns:
        ScalarService: Configured scalar service instance
    """
    return ScalarService()
