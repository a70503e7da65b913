"""
Period Service - the period vector v(x) of w^4 = z(z-x1)(z-x2)(z-x3)(z-1)
over the B-cycles, for branch points in the real chamber
"""
import cmath
import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Optional, Sequence, Union

import numpy as np

from app.core.config import settings
from app.core.exceptions import ConsistencyError, ConvergenceError, DomainError
from app.enums.named_elem import NamedElem
from app.enums.segment import SegmentId
from app.models.ball import BallPoint
from app.models.dyadic import to_complex_array
from app.models.periods import BranchPoints, PeriodVector
from app.models.quadrature import QuadratureSpec
from app.models.report import ResidualCheck, ResidualReport
from app.models.theta import SiegelPoint
from app.services.ball_service import BallService, create_ball_service
from app.services.hypergeom_service import HypergeomService
from app.services.scalar_service import ScalarService, create_scalar_service

logger = logging.getLogger(__name__)

BranchLike = Union[BranchPoints, Sequence[float]]

SQRT2 = math.sqrt(2.0)
CALIBRATION_POINT = 0.5

class PeriodServiceError(Exception):
    """Custom exception for period service errors"""
    pass

class PeriodDomainError(PeriodServiceError, DomainError):
    pass

class PeriodConsistencyError(PeriodServiceError, ConsistencyError):
    """The assembled vector violates a property it has by construction"""
    pass

def _vector_of(v: Union[PeriodVector, BallPoint, np.ndarray, Sequence[complex]]) -> np.ndarray:
    if isinstance(v, (PeriodVector, BallPoint)):
        return v.v
    return np.asarray(v, dtype=complex).reshape(-1)

def interior_point(seg: SegmentId, x: BranchPoints) -> float:
    """A point of the open segment; -1 on L1, 2 on L6, the midpoint otherwise"""
    if seg == SegmentId.L1:
        return -1.0
    if seg == SegmentId.L6:
        return 2.0
    pts = x.extended()
    lo, hi = seg.bounds
    return 0.5 * (pts[lo - 1] + pts[hi - 1])

def upper_branch(z: float, x: BranchPoints) -> complex:
    """w(z + i0) as the product of principal fourth roots (z - e)^(1/4) over e in (0, x1, x2, x3, 1)"""
    diffs = complex(z, 0.0) - np.asarray(x.extended(), dtype=complex)
    return complex(np.prod(np.power(diffs, 0.25)))

class PeriodService:
    """Service for segment integrals, their assembly into v(x) and the checks tying them together"""

    def __init__(
        self,
        scalar_service: Optional[ScalarService] = None,
        hypergeom_service: Optional[HypergeomService] = None,
        ball_service: Optional[BallService] = None,
    ):
        self._scalar_service = scalar_service
        self._hypergeom_service = hypergeom_service
        self._ball_service = ball_service
        self._calibration: Optional[float] = None

    @property
    def scalar_service(self) -> ScalarService:
        """Get or create scalar service instance"""
        if self._scalar_service is None:
            self._scalar_service = create_scalar_service()
        return self._scalar_service

    @property
    def hypergeom_service(self) -> HypergeomService:
        """Get or create hypergeometric service instance"""
        if self._hypergeom_service is None:
            self._hypergeom_service = HypergeomService(scalar_service=self.scalar_service)
        return self._hypergeom_service

    @property
    def ball_service(self) -> BallService:
        """Get or create ball service instance"""
        if self._ball_service is None:
            self._ball_service = create_ball_service()
        return self._ball_service

    # Segment integrals

    def _branch_points(self, x: BranchLike) -> BranchPoints:
        try:
            return BranchPoints.of(x)
        except ValueError as e:
            raise PeriodDomainError(f"Invalid branch points {x}: {str(e)}") from e

    def segment_modulus(self, seg: SegmentId, x: BranchLike, spec: Optional[QuadratureSpec] = None) -> float:
        """
        A_j = integral of |z(z-x1)(z-x2)(z-x3)(z-1)|^(-1/4) over the segment, z increasing

        L1 and L6 are mapped to (0,1) by z = 1 - 1/s and z = 1/s; both leave the weight
        s^(-3/4) (1-s)^(-1/4). On a finite segment a branch point of multiplicity m at
        an end contributes the exponent -m/4. A segment of length zero gives 0.

        Raises:
            PeriodDomainError: If x is outside the chamber
            QuadratureConvergenceError: If the quadrature does not settle
        """
        x = self._branch_points(x)
        seg = SegmentId(seg)
        base = spec or self.scalar_service.default_spec
        xs = x.as_tuple()

        if seg.is_improper:
            # 1 - c s rewritten around s = 1 as (1 - c) + c (1 - s)
            coeffs = [1.0 - xj for xj in xs] if seg == SegmentId.L1 else list(xs)

            def improper(s: np.ndarray, oms: np.ndarray) -> np.ndarray:
                out = np.ones_like(s)
                for c in coeffs:
                    out = out * ((1.0 - c) + c * oms) ** -0.25
                return out

            result = self.scalar_service.quad_segment(improper, base.with_exponents(-0.75, -0.25))
            logger.debug("segment %s: %r (error %.2e, %d nodes)", seg.name, result.value, result.error, result.nodes)
            return float(result.value.real)

        pts = x.extended()
        lo, hi = seg.bounds
        left, right = pts[lo - 1], pts[hi - 1]
        length = right - left
        if length <= 0.0:
            return 0.0

        m_left = sum(1 for p in pts if p == left)
        m_right = sum(1 for p in pts if p == right)
        below = [left - p for p in pts if p < left]
        above = [p - right for p in pts if p > right]

        def finite(t: np.ndarray, omt: np.ndarray) -> np.ndarray:
            out = np.ones_like(t)
            for d in below:
                out = out * (d + length * t) ** -0.25
            for d in above:
                out = out * (d + length * omt) ** -0.25
            return out

        result = self.scalar_service.quad_segment(finite, base.with_exponents(-m_left / 4.0, -m_right / 4.0))
        logger.debug("segment %s: %r (error %.2e, %d nodes)", seg.name, result.value, result.error, result.nodes)
        return length ** (1.0 - (m_left + m_right) / 4.0) * float(result.value.real)

    def segment_integral(self, seg: SegmentId, x: BranchLike, spec: Optional[QuadratureSpec] = None) -> complex:
        """
        Integral of dz/w over L_j with w = e^{i arg_j} |P(z)|^{1/4} on the open segment

        Returns:
            complex: e^{-i arg_j} A_j
        """
        seg = SegmentId(seg)
        return cmath.exp(-1j * seg.arg) * self.segment_modulus(seg, x, spec)

    def segment_integrals(self, x: BranchLike, spec: Optional[QuadratureSpec] = None) -> dict[SegmentId, complex]:
        """All six segment integrals, computed concurrently"""
        x = self._branch_points(x)
        results: dict[SegmentId, complex] = {}
        with ThreadPoolExecutor(max_workers=settings.MAX_WORKERS) as executor:
            future_to_segment = {executor.submit(self.segment_integral, seg, x, spec): seg for seg in SegmentId}
            for future in as_completed(future_to_segment):
                seg = future_to_segment[future]
                try:
                    results[seg] = future.result()
                except (DomainError, ConvergenceError):
                    logger.error("Segment %s failed at x = %s", seg.name, x.as_tuple())
                    raise
                except Exception as e:
                    raise PeriodServiceError(f"Failed to integrate segment {seg.name}: {str(e)}") from e
        return dict(sorted(results.items()))

    def segment_vector(self, x: BranchLike, spec: Optional[QuadratureSpec] = None) -> np.ndarray:
        """u = (I2, I3, I4, I5), the integrals over (0,x1), (x1,x2), (x2,x3), (x3,1)"""
        segs = self.segment_integrals(x, spec)
        return np.array([segs[SegmentId(k)] for k in range(2, 6)], dtype=complex)

    # Assembly

    def calibration(self) -> float:
        """
        c with raw = c v, measured once at the diagonal point (1/2, 1/2, 1/2)

        There v1 = sqrt(2) pi F(1/4, 3/4, 1; 1/2) while the raw assembly gives 2 I6.

        Raises:
            PeriodConsistencyError: If the raw value is not real positive
        """
        if self._calibration is None:
            x0 = BranchPoints.diagonal(CALIBRATION_POINT)
            raw = 2.0 * self.segment_integral(SegmentId.L6, x0)
            target = SQRT2 * math.pi * self.hypergeom_service.gauss_2f1(0.25, 0.75, 1.0, CALIBRATION_POINT).real
            c = raw / target
            if abs(c.imag) > 1e-12 or c.real <= 0:
                raise PeriodConsistencyError(f"calibration constant {c} is not real positive")
            self._calibration = c.real
            logger.info("Period calibration constant c = %.15f", self._calibration)
        return self._calibration

    def period_vector(self, x: BranchLike, spec: Optional[QuadratureSpec] = None) -> PeriodVector:
        """
        v = (B1, B2, B3, B4) integrals of dz/w, scaled by 1/c

        With the integral over rho.gamma equal to -i times that over gamma and
        c_j = (1 - rho^2) L_j, the raw entries are
        (2 I6, 2(1+i) I1, -2(1+i) I3 - 2 I4, 2i I4).

        Raises:
            PeriodDomainError: If x is outside the chamber
            PeriodConsistencyError: If v* U v >= 0
        """
        x = self._branch_points(x)
        segs = self.segment_integrals(x, spec)
        i1, i3, i4, i6 = (segs[SegmentId(k)] for k in (1, 3, 4, 6))
        raw = np.array(
            [2 * i6, 2 * (1 + 1j) * i1, -2 * (1 + 1j) * i3 - 2 * i4, 2j * i4],
            dtype=complex,
        )
        c = self.calibration()
        pv = PeriodVector(v=raw / c, raw=raw, calibration=c, segments=segs)
        if pv.form >= 0:
            logger.error("v(x) left the ball at x = %s: v*Uv = %.3e", x.as_tuple(), pv.form)
            raise PeriodConsistencyError(f"v*Uv = {pv.form:.3e} is not negative at x = {x.as_tuple()}")
        return pv

    def period_vector_via_tu(self, x: BranchLike, spec: Optional[QuadratureSpec] = None) -> np.ndarray:
        """v = T_U' (2u) / c with u = (I2, I3, I4, I5); an assembly independent of L1 and L6"""
        u = self.segment_vector(x, spec)
        tu = to_complex_array(self.ball_service.tu_prime())
        return tu @ (2.0 * u) / self.calibration()

    # Checks

    def _homology_terms(self, segs: dict[SegmentId, complex]) -> tuple[complex, complex]:
        i1, i2, i3, i4, i5, i6 = (segs[SegmentId(k)] for k in range(1, 7))
        c1 = i1 + i4 + i5 + 1j * i3 + 1j * i4
        c6 = i6 + i2 + i3 - 1j * i3 - 1j * i4
        return c1, c6

    def homology_residual(self, x: BranchLike, spec: Optional[QuadratureSpec] = None) -> float:
        """
        Larger of the residuals of the c1 and c6 relations in homology
        c1 = -c4 - c5 - rho c3 - rho c4 and c6 = -c2 - c3 - rho c3 - rho c4, integrated against dz/w
        """
        c1, c6 = self._homology_terms(self.segment_integrals(x, spec))
        return max(abs(c1), abs(c6))

    def homology_identities(
        self,
        x: BranchLike,
        spec: Optional[QuadratureSpec] = None,
        tol: Optional[float] = None,
    ) -> ResidualReport:
        """Real forms A1 = A3 + sqrt2 A4 + A5 and A6 = A2 + sqrt2 A3 + A4 plus the complex relations"""
        tol = tol or settings.TOL_COMPOSITE
        segs = self.segment_integrals(x, spec)
        a = {seg: abs(val) for seg, val in segs.items()}
        c1, c6 = self._homology_terms(segs)
        checks = [
            ResidualCheck.compare(
                "homology.A1",
                a[SegmentId.L1],
                a[SegmentId.L3] + SQRT2 * a[SegmentId.L4] + a[SegmentId.L5],
                tol,
            ),
            ResidualCheck.compare(
                "homology.A6",
                a[SegmentId.L6],
                a[SegmentId.L2] + SQRT2 * a[SegmentId.L3] + a[SegmentId.L4],
                tol,
            ),
            ResidualCheck.compare("homology.c1", c1, 0.0, tol),
            ResidualCheck.compare("homology.c6", c6, 0.0, tol),
        ]
        return ResidualReport.build("homology", checks)

    def verify_periods(
        self,
        x: BranchLike,
        spec: Optional[QuadratureSpec] = None,
        tol: Optional[float] = None,
    ) -> ResidualReport:
        """
        Period suite: ball membership, segment phases, the two assemblies and the homology relations
        """
        tol = tol or settings.TOL_COMPOSITE
        x = self._branch_points(x)
        try:
            pv = self.period_vector(x, spec)
            via_tu = self.period_vector_via_tu(x, spec)
            homology = self.homology_identities(x, spec, tol)
        except (DomainError, ConvergenceError, ConsistencyError):
            raise
        except Exception as e:
            raise PeriodServiceError(f"Failed to verify periods: {str(e)}") from e

        checks = list(homology.checks)
        checks.append(ResidualCheck.holds("periods.ball", pv.form < 0, pv.form, tol))
        # the tabulated phases against the continuation of w from the upper half-plane
        for seg, val in pv.segments.items():
            if abs(val) == 0.0:
                continue
            z = interior_point(seg, x)
            w = upper_branch(z, x)
            poly = math.prod(z - e for e in x.extended())
            checks.append(ResidualCheck.compare(f"periods.branch.{seg.name}", w ** 4, poly, tol))
            checks.append(ResidualCheck.compare(f"periods.phase.{seg.name}", val / abs(val), abs(w) / w, tol))
        for k in range(4):
            checks.append(ResidualCheck.compare(f"periods.tu.v{k + 1}", via_tu[k], pv.v[k], tol))
        return ResidualReport.build("periods", checks)

    def tau_sharp(self, v: Union[PeriodVector, BallPoint, np.ndarray, Sequence[complex]]) -> SiegelPoint:
        """
        tau(v)^# = N . tau(v)

        Raises:
            PeriodConsistencyError: If i q(v) tau(v)_22 differs from 2 v1^2
        """
        vec = _vector_of(v)
        tp = self.ball_service.tau_of_v(vec)
        q = self.ball_service.quadratic_form(vec)
        lhs = 1j * q * tp.tau[1, 1]
        rhs = 2 * vec[0] ** 2
        if abs(lhs - rhs) > 1e-9 * max(1.0, abs(rhs)):
            raise PeriodConsistencyError(f"i q tau_22 = {lhs} differs from 2 v1^2 = {rhs}")
        return self.ball_service.sp_act(self.ball_service.symplectic(NamedElem.N), tp)

def create_period_service() -> PeriodService:
    """
    Factory function to create a period service instance

    Returns:
        PeriodService: Configured period service instance
    """
    return PeriodService()
