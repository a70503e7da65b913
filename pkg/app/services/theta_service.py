"""
Theta Service - Riemann theta functions with integer characteristics on
Siegel space, evaluated as ellipsoid-truncated lattice sums
"""
import logging
import math
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from app.core.exceptions import ConvergenceError, DomainError
from app.models.theta import Characteristic, SiegelPoint, ThetaAccuracy

logger = logging.getLogger(__name__)

class ThetaServiceError(Exception):
    """Custom exception for theta service errors"""
    pass

class ThetaDomainError(ThetaServiceError, DomainError):
    pass

class ThetaTruncationError(ThetaServiceError, ConvergenceError):
    """Two successive truncations never agreed within max_radius"""
    pass

@lru_cache(maxsize=512)
def _ellipsoid_points(chol_bytes: bytes, n: int, center: tuple[float, ...], radius: float) -> tuple[np.ndarray, np.ndarray]:
    """
    Integer points k with ||R (k - center)||^2 <= radius^2, R upper triangular

    Fincke-Pohst enumeration, vectorized level by level from the last coordinate.

    Returns:
        tuple: points (P x n, int) and their energies ||R (k - center)||^2
    """
    r = np.frombuffer(chol_bytes, dtype=float).reshape(n, n)
    c = np.asarray(center, dtype=float)
    budget = radius * radius

    # Rows of partial assignments x_{i+1..n-1}, stored right-aligned
    pts = np.zeros((1, 0), dtype=np.int64)
    energy = np.zeros(1)
    for i in range(n - 1, -1, -1):
        tail = pts.astype(float) - c[i + 1:]
        t = tail @ r[i, i + 1:] / r[i, i] if tail.shape[1] else np.zeros(len(pts))
        half = np.sqrt(np.maximum(budget - energy, 0.0)) / r[i, i]
        mid = c[i] - t
        lo = np.ceil(mid - half).astype(np.int64)
        hi = np.floor(mid + half).astype(np.int64)
        counts = np.maximum(hi - lo + 1, 0)
        total = int(counts.sum())
        if total == 0:
            return np.zeros((0, n), dtype=np.int64), np.zeros(0)
        row = np.repeat(np.arange(len(pts)), counts)
        offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        xi = lo[row] + offsets
        new_energy = energy[row] + (r[i, i] * (xi - mid[row])) ** 2
        keep = new_energy <= budget
        pts = np.concatenate([xi[keep, None], pts[row][keep]], axis=1)
        energy = new_energy[keep]
    pts.setflags(write=False)
    energy.setflags(write=False)
    return pts, energy

class ThetaService:
    """Service for theta functions and theta constants"""

    def __init__(self, accuracy: Optional[ThetaAccuracy] = None):
        self._accuracy = accuracy

    @property
    def accuracy(self) -> ThetaAccuracy:
        """Get or create the default accuracy"""
        if self._accuracy is None:
            self._accuracy = ThetaAccuracy()
        return self._accuracy

    def riemann_theta(
        self,
        ch: Characteristic,
        zeta: Sequence[complex],
        tp: SiegelPoint,
        acc: Optional[ThetaAccuracy] = None,
    ) -> complex:
        """
        theta_{a,b}(zeta, tau) = sum_k e(1/2 m tau m^T + m (zeta + b/2)^T), m = k + a/2

        The sum is truncated to the ellipsoid pi (m - c) Im(tau) (m - c)^T <= rho^2 around
        the dominant center c = -Im(tau)^{-1} Im(zeta); rho grows until the terms in the
        shell between rho and rho + 1 are below target_eps relative to the absolute sum.

        Args:
            ch: Characteristic with n entries per half
            zeta: Complex n-vector
            tp: Siegel point of degree n
            acc: Truncation target

        Returns:
            complex: The theta value

        Raises:
            ThetaDomainError: On dimension mismatch
            ThetaTruncationError: If max_radius is reached before agreement
        """
        acc = acc or self.accuracy
        n = tp.n
        zeta = np.asarray(zeta, dtype=complex).reshape(-1)
        if ch.n != n or zeta.shape[0] != n:
            raise ThetaDomainError(f"dimension mismatch: characteristic {ch.n}, zeta {zeta.shape[0]}, tau {n}")

        tau = tp.tau
        y = tau.imag
        try:
            chol = np.linalg.cholesky(math.pi * y).T.copy()
        except np.linalg.LinAlgError as e:
            raise ThetaDomainError(f"Im tau is not positive definite: {str(e)}") from e

        a, b = ch.as_arrays()
        center_m = -np.linalg.solve(y, zeta.imag)
        center_k = tuple(np.round(center_m - a / 2, 12).tolist())
        shift = zeta + b / 2

        rho = math.sqrt(-math.log(acc.target_eps)) + 1.0
        while rho + 1.0 <= acc.max_radius:
            pts, energy = _ellipsoid_points(chol.tobytes(), n, center_k, rho + 1.0)
            m = pts + a / 2
            quad = np.einsum("pi,ij,pj->p", m, tau, m)
            terms = np.exp(1j * math.pi * quad + 2j * math.pi * (m @ shift))
            inner = energy <= rho * rho
            outer_sum = complex(terms.sum())
            shell = abs(complex(terms[~inner].sum()))
            scale = float(np.abs(terms).sum())
            if not math.isfinite(scale):
                raise ThetaDomainError("theta lattice sum overflowed")
            if shell <= acc.target_eps * scale:
                logger.debug("theta sum: %d lattice points at radius %.2f", len(pts), rho + 1.0)
                return outer_sum
            rho += 1.0

        raise ThetaTruncationError(
            f"theta sum for {ch} did not settle within radius {acc.max_radius} (lambda_min {tp.lambda_min:.3e})"
        )

    def theta_constant(self, ch: Characteristic, tp: SiegelPoint, acc: Optional[ThetaAccuracy] = None) -> complex:
        """theta_{a,b}(0, tau)"""
        return self.riemann_theta(ch, np.zeros(tp.n, dtype=complex), tp, acc)

    def theta_constants(
        self,
        chars: Iterable[Characteristic],
        tp: SiegelPoint,
        acc: Optional[ThetaAccuracy] = None,
    ) -> list[complex]:
        """Batch of theta constants at one point; repeated truncation ellipsoids are reused through the lru_cache on _ellipsoid_points"""
        return [self.theta_constant(ch, tp, acc) for ch in chars]

    def jacobi_theta(self, j: int, k: int, tau1: complex, acc: Optional[ThetaAccuracy] = None) -> complex:
        """
        Genus-one theta_{jk}(tau1) = sum_n e(1/2 (n + j/2)^2 tau1 + (n + j/2) k/2)

        Raises:
            ThetaDomainError: If j, k are not 0/1 or Im tau1 <= 0
        """
        if j not in (0, 1) or k not in (0, 1):
            raise ThetaDomainError(f"Jacobi theta indices must be 0 or 1, got ({j}, {k})")
        if complex(tau1).imag <= 0:
            raise ThetaDomainError(f"tau must lie in the upper half plane, got {tau1}")
        return self.theta_constant(Characteristic(a=(j,), b=(k,)), SiegelPoint(tau=[[tau1]]), acc)

def create_theta_service() -> ThetaService:
    """
    Factory function to create a theta service instance

    Returns:
        ThetaService: Configured theta service instance
    """
    return ThetaService()
