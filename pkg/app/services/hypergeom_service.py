"""
Hypergeometric Service - Gauss 2F1 and Lauricella F_D by series, plus the
Euler-integral quadrature oracle for F_D
"""
import logging
import math
from typing import Optional, Sequence

import numpy as np

from app.core.config import settings
from app.core.exceptions import ConvergenceError, DomainError
from app.models.hypergeom import FDParams
from app.models.quadrature import QuadratureSpec
from app.services.scalar_service import ScalarService, create_scalar_service

logger = logging.getLogger(__name__)

_CHUNK = 1024
_SMALL_RUN = 3

class HypergeomServiceError(Exception):
    """Custom exception for hypergeometric service errors"""
    pass

class HypergeomDomainError(HypergeomServiceError, DomainError):
    pass

class HypergeomConvergenceError(HypergeomServiceError, ConvergenceError):
    pass

def _first_small_run(terms: np.ndarray, partial: np.ndarray, rel_tol: float) -> Optional[int]:
    """Index ending the first run of three terms below rel_tol * |partial sum|"""
    small = np.abs(terms) < rel_tol * np.abs(partial)
    run = 0
    for k, flag in enumerate(small):
        run = run + 1 if flag else 0
        if run == _SMALL_RUN:
            return k
    return None

def _rising_ratio_products(start: complex, ratios: np.ndarray) -> np.ndarray:
    return start * np.cumprod(ratios)

class HypergeomService:
    """Service for 2F1 and F_D evaluation"""

    def __init__(self, scalar_service: Optional[ScalarService] = None):
        self._scalar_service = scalar_service
        self.rel_tol = settings.SERIES_REL_TOL
        self.max_terms = settings.SERIES_MAX_TERMS
        self.max_degree = settings.SERIES_MAX_DEGREE

    @property
    def scalar_service(self) -> ScalarService:
        """Get or create scalar service instance"""
        if self._scalar_service is None:
            self._scalar_service = create_scalar_service()
        return self._scalar_service

    def gauss_2f1(self, alpha: complex, beta: complex, gamma: complex, z: complex) -> complex:
        """
        F(alpha, beta, gamma; z) by its power series on the open unit disk

        Raises:
            HypergeomDomainError: If |z| >= 1 or gamma is a pole
            HypergeomConvergenceError: If more than SERIES_MAX_TERMS terms are needed
        """
        FDParams(alpha=alpha, betas=[beta], gamma=gamma)  # validates gamma
        if abs(z) >= 1:
            raise HypergeomDomainError(f"2F1 series needs |z| < 1, got |z| = {abs(z)}")

        total = 0j
        last = 1.0 + 0j
        first = 0
        while first < self.max_terms:
            n = np.arange(first, first + _CHUNK, dtype=float)
            if first == 0:
                ratios = np.ones(_CHUNK, dtype=complex)
                ratios[1:] = (alpha + n[:-1]) * (beta + n[:-1]) / ((gamma + n[:-1]) * (n[:-1] + 1)) * z
                terms = np.cumprod(ratios)
            else:
                ratios = (alpha + n - 1) * (beta + n - 1) / ((gamma + n - 1) * n) * z
                terms = _rising_ratio_products(last, ratios)
            partial = total + np.cumsum(terms)
            stop = _first_small_run(terms, partial, self.rel_tol)
            if stop is not None:
                return complex(partial[stop])
            total = complex(partial[-1])
            last = complex(terms[-1])
            first += _CHUNK
            if not math.isfinite(abs(total)):
                raise HypergeomDomainError("2F1 partial sum overflowed")

        raise HypergeomConvergenceError(f"2F1 series not converged after {self.max_terms} terms (z = {z})")

    def lauricella_fd(self, p: FDParams, z: Sequence[complex]) -> complex:
        """
        F_D(alpha; betas; gamma; z) summed by total degree N = n_1 + ... + n_m

        The degree-N block is (alpha)_N/(gamma)_N times the coefficient of t^N in
        prod_j (1 - z_j t)^(-beta_j), obtained by convolving the per-variable series.

        Raises:
            HypergeomDomainError: If some |z_j| >= 1 or len(z) != m
            HypergeomConvergenceError: If SERIES_MAX_DEGREE blocks do not suffice
        """
        z = [complex(x) for x in z]
        if len(z) != p.m:
            raise HypergeomDomainError(f"F_D with {p.m} betas needs {p.m} variables, got {len(z)}")
        for x in z:
            if abs(x) >= 1:
                raise HypergeomDomainError(f"F_D series needs |z_j| < 1, got |z_j| = {abs(x)}")

        degree = 256
        while True:
            n = np.arange(1, degree, dtype=float)
            coeffs = np.ones(1, dtype=complex)
            for beta, zj in zip(p.betas, z):
                seq = np.ones(degree, dtype=complex)
                seq[1:] = np.cumprod((beta + n - 1) / n * zj)
                coeffs = np.convolve(coeffs, seq)[:degree]
            ratio = np.ones(degree, dtype=complex)
            ratio[1:] = np.cumprod((p.alpha + n - 1) / (p.gamma + n - 1))
            blocks = ratio * coeffs
            partial = np.cumsum(blocks)
            stop = _first_small_run(blocks, partial, self.rel_tol)
            if stop is not None:
                logger.debug("F_D converged at total degree %d", stop)
                return complex(partial[stop])
            if degree >= self.max_degree:
                raise HypergeomConvergenceError(f"F_D series not converged by total degree {degree} (z = {z})")
            degree *= 2

    def lauricella_fd_euler(self, p: FDParams, z: Sequence[float], spec: Optional[QuadratureSpec] = None) -> complex:
        """
        F_D by the Euler integral over (0,1):
        Gamma(gamma)/(Gamma(alpha) Gamma(gamma-alpha)) int s^(alpha-1) (1-s)^(gamma-alpha-1) prod (1 - z_j s)^(-beta_j) ds

        Raises:
            HypergeomDomainError: Unless 0 < alpha < gamma are real and every z_j is real and < 1
        """
        if p.alpha.imag or p.gamma.imag:
            raise HypergeomDomainError("Euler integral oracle supports real alpha and gamma only")
        alpha, gamma = p.alpha.real, p.gamma.real
        if not 0 < alpha < gamma:
            raise HypergeomDomainError(f"Euler integral needs 0 < alpha < gamma, got alpha={alpha}, gamma={gamma}")
        zs = []
        for x in z:
            x = complex(x)
            if x.imag != 0 or x.real >= 1:
                raise HypergeomDomainError(f"Euler integral needs real z_j < 1, got {x}")
            zs.append(x.real)
        if len(zs) != p.m:
            raise HypergeomDomainError(f"F_D with {p.m} betas needs {p.m} variables, got {len(zs)}")

        def integrand(s: np.ndarray, oms: np.ndarray) -> np.ndarray:
            out = np.ones_like(s, dtype=complex)
            for beta, zj in zip(p.betas, zs):
                # 1 - z s written around s = 1 to keep accuracy when z is near 1
                base = (1.0 - zj) + zj * oms
                out *= np.power(base.astype(complex), -beta)
            return out

        base_spec = spec or self.scalar_service.default_spec
        result = self.scalar_service.quad_segment(integrand, base_spec.with_exponents(alpha - 1.0, gamma - alpha - 1.0))
        return result.value / self.scalar_service.beta(alpha, gamma - alpha)

def create_hypergeom_service() -> HypergeomService:
    """
    Factory function to create a hypergeometric service instance

    Returns:
        HypergeomService: Configured hypergeometric service instance
    """
    return HypergeomService()
