"""
Identities Service - the inverse period map x(v), Thomae and Jacobi type
formulas, the mean generating transformation and the AGM / F_D theorems,
each evaluated as a residual report
"""
import cmath
import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, Optional, Sequence, Union

import numpy as np

from app.core.config import settings
from app.core.exceptions import ConsistencyError, ConvergenceError, DomainError
from app.enums.mean_kind import MeanKind
from app.enums.named_elem import NamedElem
from app.models.agm import AgmState
from app.models.ball import BallPoint, exact_u
from app.models.dyadic import DyadicGaussian, dmatmul, dvector
from app.models.hypergeom import FDParams
from app.models.periods import BranchPoints, PeriodVector
from app.models.report import AbcdValues, ResidualCheck, ResidualReport
from app.models.theta import Characteristic, SiegelPoint, ThetaAccuracy
from app.services.agm_service import AgmService, create_agm_service
from app.services.ball_service import BallService, as_ball_vector
from app.services.hypergeom_service import HypergeomService
from app.services.period_service import PeriodService, create_period_service
from app.services.scalar_service import ScalarService
from app.services.transform_service import TransformService, sample_ball_points

logger = logging.getLogger(__name__)

VectorLike = Union[PeriodVector, BallPoint, np.ndarray, Sequence[complex]]
Perturbation = Optional[tuple[int, float]]

# extra chamber points for the mean suite, after the requested x
MEAN_CHAMBER = (
    (0.1, 0.3, 0.6),
    (0.35, 0.4, 0.9),
    (0.15, 0.45, 0.7),
    (0.3, 0.6, 0.85),
    (0.2, 0.5, 0.8),
)
MEAN_POINTS = 5

SUITES = (
    "periods",
    "thomae",
    "table2",
    "thomae3",
    "jacobi",
    "abcd",
    "mean",
    "orbit",
    "km",
    "borwein",
    "borwein-cubic",
    "gauss",
    "secondary",
    "diagonal",
    "cusps",
    "transform",
)

# Products of four theta squares: (id, LHS in s0..s11, (n1, n2, n3, n4) of P_{n1,n2;n3,n4})
TABLE2: tuple[tuple[str, Callable[[Sequence[complex]], complex], tuple[int, int, int, int]], ...] = (
    ("01", lambda s: -16 * s[0] * s[1] * s[2] * s[3], (0, 1, 2, 3)),
    ("02", lambda s: -4 * (s[0] + s[1]) ** 2 * s[2] * s[3], (0, 4, 2, 3)),
    ("03", lambda s: 4 * s[0] * s[1] * (s[2] + s[3]) ** 2, (0, 1, 3, 4)),
    ("04", lambda s: -4 * (s[0] - s[1]) ** 2 * s[2] * s[3], (1, 4, 2, 3)),
    ("05", lambda s: 4 * s[0] * s[1] * (s[2] - s[3]) ** 2, (0, 1, 2, 4)),
    ("06", lambda s: 256 * s[4] * s[5] * s[6] * s[7], (0, 2, 1, 3)),
    ("07", lambda s: 64 * (s[4] + s[5]) ** 2 * s[6] * s[7], (0, 4, 1, 3)),
    ("08", lambda s: 64 * s[4] * s[5] * (s[6] + s[7]) ** 2, (0, 2, 1, 4)),
    ("09", lambda s: 64 * (s[4] - s[5]) ** 2 * s[6] * s[7], (2, 4, 1, 3)),
    ("10", lambda s: 64 * s[4] * s[5] * (s[6] - s[7]) ** 2, (0, 2, 3, 4)),
    ("11", lambda s: 256 * s[8] * s[9] * s[10] * s[11], (0, 3, 1, 2)),
    ("12", lambda s: 64 * (s[8] + s[9]) ** 2 * s[10] * s[11], (0, 4, 1, 2)),
    ("13", lambda s: 64 * s[8] * s[9] * (s[10] + s[11]) ** 2, (0, 3, 1, 4)),
    ("14", lambda s: 64 * (s[8] - s[9]) ** 2 * s[10] * s[11], (3, 4, 1, 2)),
    ("15", lambda s: 64 * s[8] * s[9] * (s[10] - s[11]) ** 2, (0, 3, 2, 4)),
)

A_CHARS = (Characteristic.parse("0000", "0000"), Characteristic.parse("1100", "0000"))
B_CHARS = (Characteristic.parse("0000", "1100"), Characteristic.parse("1111", "1111"))

class IdentitiesServiceError(Exception):
    """Custom exception for identities service errors"""
    pass

class IdentitiesDomainError(IdentitiesServiceError, DomainError):
    pass

class CuspProximityError(IdentitiesServiceError, DomainError):
    """A theta-quotient denominator vanishes: v is too close to a cusp"""
    pass

def _quadratic_form(v: np.ndarray) -> complex:
    """v^T U v"""
    return complex(v[1] * v[0] * 2 + v[2] ** 2 + v[3] ** 2)

def _poly(xt: Sequence[float], idx: tuple[int, int, int, int]) -> float:
    """P_{n1,n2;n3,n4}(x~) = (x~_{n2} - x~_{n1}) (x~_{n4} - x~_{n3})"""
    n1, n2, n3, n4 = idx
    return (xt[n2] - xt[n1]) * (xt[n4] - xt[n3])

class IdentitiesService:
    """Service evaluating the theta-constant identities against periods, series and means"""

    def __init__(
        self,
        period_service: Optional[PeriodService] = None,
        agm_service: Optional[AgmService] = None,
        transform_service: Optional[TransformService] = None,
        accuracy: Optional[ThetaAccuracy] = None,
        tol: Optional[float] = None,
    ):
        self._period_service = period_service
        self._agm_service = agm_service
        self._transform_service = transform_service
        self.accuracy = accuracy
        self.tol = tol

    @property
    def period_service(self) -> PeriodService:
        """Get or create period service instance"""
        if self._period_service is None:
            self._period_service = create_period_service()
        return self._period_service

    @property
    def agm_service(self) -> AgmService:
        """Get or create AGM service instance"""
        if self._agm_service is None:
            self._agm_service = create_agm_service()
        return self._agm_service

    @property
    def transform_service(self) -> TransformService:
        """Get or create transform service instance"""
        if self._transform_service is None:
            self._transform_service = TransformService(ball_service=self.ball_service, accuracy=self.accuracy, tol=self.tol)
        return self._transform_service

    @property
    def ball_service(self) -> BallService:
        return self.period_service.ball_service

    @property
    def scalar_service(self) -> ScalarService:
        return self.period_service.scalar_service

    @property
    def hypergeom_service(self) -> HypergeomService:
        return self.period_service.hypergeom_service

    # Values

    def kappa(self) -> float:
        """1 / ((4 pi)^2 Gamma(3/4)^8)"""
        return 1.0 / ((4 * math.pi) ** 2 * self.scalar_service.gamma34() ** 8)

    def kappa_root(self) -> float:
        """kappa^(1/2) = 1 / (4 pi Gamma(3/4)^4)"""
        return 1.0 / (4 * math.pi * self.scalar_service.gamma34() ** 4)

    def squares(self, v: VectorLike) -> list[complex]:
        """s_j = theta_j(v)^2, j = 0..11"""
        bs = self.ball_service
        tp = bs.tau_of_v(as_ball_vector(v))
        chars = [bs.nu_char(j) for j in range(12)]
        return [t * t for t in bs.theta_service.theta_constants(chars, tp, self.accuracy)]

    def _quotient(self, s_a: complex, s_b: complex, label: str) -> complex:
        denom = (s_a + s_b) ** 2
        if abs(denom) <= 1e-24 * max(1.0, abs(s_a * s_b)) or abs(denom) < 1e-300:
            logger.warning("vanishing denominator for %s", label)
            raise CuspProximityError(f"theta quotient for {label} has a vanishing denominator")
        return 4 * s_a * s_b / denom

    def x_of_v(self, v: VectorLike) -> tuple[complex, complex, complex]:
        """
        x_j(v) = 4 s_{4j-4} s_{4j-3} / (s_{4j-4} + s_{4j-3})^2, j = 1, 2, 3; real on the chamber

        Raises:
            CuspProximityError: If a denominator vanishes
        """
        s = self.squares(v)
        return tuple(self._quotient(s[4 * j], s[4 * j + 1], f"x{j + 1}") for j in range(3))  # type: ignore[return-value]

    def abcd(self, v: VectorLike) -> AbcdValues:
        """a, b1, b2, b3 at tau(v)^# = N . tau(v)"""
        tp = self.period_service.tau_sharp(as_ball_vector(v))
        ts = self.ball_service.theta_service
        t0, t1 = (t * t for t in ts.theta_constants(A_CHARS, tp, self.accuracy))
        t2, t3 = (t * t for t in ts.theta_constants(B_CHARS, tp, self.accuracy))
        return AbcdValues(a=t0 + t1, b1=t0 - t1, b2=t2 + t3, b3=t2 - t3)

    def _perturbed(self, x: BranchPoints, perturb: Perturbation) -> BranchPoints:
        if perturb is None:
            return x
        index, delta = perturb
        try:
            return x.perturbed(index, delta)
        except ValueError as e:
            raise IdentitiesDomainError(f"Perturbation {perturb} leaves the chamber: {str(e)}") from e

    def _fd_quarter(self, x: BranchPoints) -> complex:
        return self.hypergeom_service.lauricella_fd(FDParams.quarter(), x.as_tuple())

    # Inverse period map

    def secondary_relations(
        self,
        v: VectorLike,
        x: Union[BranchPoints, Sequence[float]],
        perturb: Perturbation = None,
        tol: Optional[float] = None,
    ) -> ResidualReport:
        """
        x1, x2, x3 from (nu4k, nu4k+1) and the three further quotients
        (x2-x3)/(1-x3), (x3-x1)/(1-x1), (x2-x1)/(1-x1) from the odd-indexed pairs
        """
        tol = tol or self.tol or settings.TOL_COMPOSITE
        x = self._perturbed(BranchPoints.of(x), perturb)
        x1, x2, x3 = x.as_tuple()
        s = self.squares(v)
        checks = [
            ResidualCheck.compare("x1", self._quotient(s[0], s[1], "x1"), x1, tol),
            ResidualCheck.compare("x2", self._quotient(s[4], s[5], "x2"), x2, tol),
            ResidualCheck.compare("x3", self._quotient(s[8], s[9], "x3"), x3, tol),
            ResidualCheck.compare("x2-x3", self._quotient(s[2], s[3], "nu2,nu3"), (x2 - x3) / (1 - x3), tol),
            ResidualCheck.compare("x3-x1", self._quotient(s[6], s[7], "nu6,nu7"), (x3 - x1) / (1 - x1), tol),
            ResidualCheck.compare("x2-x1", self._quotient(s[10], s[11], "nu10,nu11"), (x2 - x1) / (1 - x1), tol),
        ]
        return ResidualReport.build("secondary", checks)

    # Thomae and Jacobi

    def verify_thomae(
        self,
        x: Union[BranchPoints, Sequence[float]],
        pv: Union[PeriodVector, np.ndarray],
        perturb: Perturbation = None,
        tol: Optional[float] = None,
    ) -> ResidualReport:
        """The six squared sums (s_{2k} + s_{2k+1})^2 against kappa (v^T U v)^2 times 1, 1-x3, 1/4, (1-x1)/4, 1/4, (1-x1)/4"""
        tol = tol or self.tol or settings.TOL_COMPOSITE
        x = self._perturbed(BranchPoints.of(x), perturb)
        x1, _, x3 = x.as_tuple()
        v = as_ball_vector(pv)
        s = self.squares(v)
        base = self.kappa() * _quadratic_form(v) ** 2
        factors = (1.0, 1.0 - x3, 0.25, 0.25 * (1.0 - x1), 0.25, 0.25 * (1.0 - x1))
        checks = [
            ResidualCheck.compare(f"thomae.{2 * k}{2 * k + 1}", (s[2 * k] + s[2 * k + 1]) ** 2, f * base, tol)
            for k, f in enumerate(factors)
        ]
        return ResidualReport.build("thomae", checks)

    def verify_table2(
        self,
        x: Union[BranchPoints, Sequence[float]],
        pv: Union[PeriodVector, np.ndarray],
        perturb: Perturbation = None,
        tol: Optional[float] = None,
    ) -> ResidualReport:
        """The fifteen products of four theta squares against P(x~) kappa^2 (v^T U v)^4"""
        tol = tol or self.tol or settings.TOL_TABLE2
        x = self._perturbed(BranchPoints.of(x), perturb)
        xt = x.extended()
        v = as_ball_vector(pv)
        s = self.squares(v)
        xi = self.kappa() ** 2 * _quadratic_form(v) ** 4
        checks = [ResidualCheck.compare(f"table2.{row}", lhs(s), _poly(xt, idx) * xi, tol) for row, lhs, idx in TABLE2]
        first = TABLE2[0][1](s) / xi
        checks.append(ResidualCheck.holds("table2.sign", first.real > 0 and _poly(xt, (0, 1, 2, 3)) > 0, first, tol))
        return ResidualReport.build("table2", checks)

    def verify_thomae3(self, v: VectorLike, linear: bool = False, tol: Optional[float] = None) -> ResidualReport:
        """
        (s0+s1)/2 = s4+s5 = s8+s9, (s0+s2)/2 = s4+s6 = s8+s10, (s0+s3)/2 = s5+s6 = s8+s11,
        (s1+s2)/2 = s4-s7 = s8-s11

        Args:
            v: Ball point
            linear: Compare the sums themselves (chamber points) instead of their squares
        """
        tol = tol or self.tol or settings.TOL_COMPOSITE
        vec = as_ball_vector(v)
        s = self.squares(vec)
        chains = {
            "01": ((s[0] + s[1]) / 2, s[4] + s[5], s[8] + s[9]),
            "02": ((s[0] + s[2]) / 2, s[4] + s[6], s[8] + s[10]),
            "03": ((s[0] + s[3]) / 2, s[5] + s[6], s[8] + s[11]),
            "12": ((s[1] + s[2]) / 2, s[4] - s[7], s[8] - s[11]),
        }
        checks = []
        for name, (head, mid, tail) in chains.items():
            if linear:
                checks.append(ResidualCheck.compare(f"thomae3.{name}.mid", mid, head, tol))
                checks.append(ResidualCheck.compare(f"thomae3.{name}.tail", tail, head, tol))
            else:
                checks.append(ResidualCheck.compare(f"thomae3.{name}.mid", mid ** 2, head ** 2, tol))
                checks.append(ResidualCheck.compare(f"thomae3.{name}.tail", tail ** 2, head ** 2, tol))
        checks.append(ResidualCheck.compare(
            "thomae3.kappa", chains["01"][0] ** 2, self.kappa() / 4 * _quadratic_form(vec) ** 2, tol
        ))
        return ResidualReport.build("thomae3", checks)

    def verify_jacobi(
        self,
        x: Union[BranchPoints, Sequence[float]],
        pv: Union[PeriodVector, np.ndarray],
        perturb: Perturbation = None,
        tol: Optional[float] = None,
    ) -> ResidualReport:
        """
        s0 + s1 = -kappa^(1/2) v^T U v and a(v) = pi / Gamma(3/4)^4 F_D(x)^2,
        plus a(v) = v1^2 / (2 pi Gamma(3/4)^4) tying the theta side to the period side
        """
        tol = tol or self.tol or settings.TOL_COMPOSITE
        x = self._perturbed(BranchPoints.of(x), perturb)
        v = as_ball_vector(pv)
        s = self.squares(v)
        q = _quadratic_form(v)
        g4 = self.scalar_service.gamma34() ** 4
        a = self.abcd(v).a
        rhs1 = -self.kappa_root() * q
        checks = [
            ResidualCheck.compare("jacobi.1", s[0] + s[1], rhs1, tol),
            ResidualCheck.compare("jacobi.3", a, math.pi / g4 * self._fd_quarter(x) ** 2, tol),
            ResidualCheck.compare("jacobi.v1", a, v[0] ** 2 / (2 * math.pi * g4), tol),
            ResidualCheck.holds("jacobi.sign", rhs1.real > 0, rhs1, tol),
        ]
        return ResidualReport.build("jacobi", checks)

    def verify_abcd(
        self,
        x: Union[BranchPoints, Sequence[float]],
        pv: Union[PeriodVector, np.ndarray],
        perturb: Perturbation = None,
        tol: Optional[float] = None,
    ) -> ResidualReport:
        """(b_j/a)^2 = 1 - x_j, and on the chamber b_j/a = +sqrt(1 - x_j) with a, b_j > 0"""
        tol = tol or self.tol or settings.TOL_COMPOSITE
        x = self._perturbed(BranchPoints.of(x), perturb)
        vals = self.abcd(pv)
        checks = [ResidualCheck.holds("abcd.positive", vals.is_positive(), vals.a, tol)]
        for j, (ratio, xj) in enumerate(zip(vals.ratios(), x.as_tuple()), start=1):
            checks.append(ResidualCheck.compare(f"abcd.b{j}.squared", ratio ** 2, 1.0 - xj, tol))
            checks.append(ResidualCheck.compare(f"abcd.b{j}.root", ratio, math.sqrt(1.0 - xj), tol))
        return ResidualReport.build("abcd", checks)

    # Mean generating transformation

    def mean_transform_check(self, v: VectorLike, on_chamber: bool = True, tol: Optional[float] = None) -> ResidualReport:
        """
        a(Rv)^2 = ((a+b1+b2+b3)/4)^2, b1(Rv)^2 = (a+b3)(b1+b2)/4, b2(Rv)^2 = (a+b2)(b1+b3)/4,
        b3(Rv)^2 = (a+b1)(b2+b3)/4; the root forms on the chamber; the theta_j(Rv) relations and
        the automorphy-factor relation for E_R
        """
        tol = tol or self.tol or settings.TOL_COMPOSITE
        vec = as_ball_vector(v)
        rv = self.ball_service.apply(self.ball_service.builtin(NamedElem.R), vec)
        a, b1, b2, b3 = self.abcd(vec).as_tuple()
        ra, rb1, rb2, rb3 = self.abcd(rv).as_tuple()
        targets = (
            ("a", ra, ((a + b1 + b2 + b3) / 4) ** 2),
            ("b1", rb1, (a + b3) * (b1 + b2) / 4),
            ("b2", rb2, (a + b2) * (b1 + b3) / 4),
            ("b3", rb3, (a + b1) * (b2 + b3) / 4),
        )
        checks = [ResidualCheck.compare(f"mean.{name}.squared", lhs ** 2, rhs, tol) for name, lhs, rhs in targets]
        if on_chamber:
            checks.append(ResidualCheck.compare("mean.a.root", ra, (a + b1 + b2 + b3) / 4, tol))
            for name, lhs, rhs in targets[1:]:
                checks.append(ResidualCheck.compare(f"mean.{name}.root", lhs, cmath.sqrt(rhs), tol))
        relations = self.transform_service.r_relations(vec)
        checks.extend(relations.checks)
        return ResidualReport.build("mean", checks)

    def mean_suite(
        self,
        x: Union[BranchPoints, Sequence[float]],
        pv: Optional[PeriodVector] = None,
        seed: Optional[int] = None,
        tol: Optional[float] = None,
    ) -> ResidualReport:
        """
        mean_transform_check at five chamber points (x first) with the root forms,
        and at five random ball points with the squared forms only

        Check ids are prefixed c0..c4 and b0..b4.
        """
        x = BranchPoints.of(x)
        chamber = [x] + [BranchPoints.of(p) for p in MEAN_CHAMBER if BranchPoints.of(p) != x]
        rng = np.random.default_rng(settings.SEED if seed is None else seed)

        jobs: dict[str, Callable[[], ResidualReport]] = {}
        for k, point in enumerate(chamber[:MEAN_POINTS]):
            if k == 0 and pv is not None:
                jobs[f"c{k}"] = lambda pv=pv: self.mean_transform_check(pv, tol=tol)
            else:
                jobs[f"c{k}"] = lambda point=point: self.mean_transform_check(self.period_service.period_vector(point), tol=tol)
        for k, v in enumerate(sample_ball_points(rng, MEAN_POINTS)):
            jobs[f"b{k}"] = lambda v=v: self.mean_transform_check(v, on_chamber=False, tol=tol)

        checks: list[ResidualCheck] = []
        with ThreadPoolExecutor(max_workers=settings.MAX_WORKERS) as executor:
            future_to_job = {executor.submit(job): name for name, job in jobs.items()}
            for future in as_completed(future_to_job):
                name = future_to_job[future]
                try:
                    report = future.result()
                except (DomainError, ConvergenceError, ConsistencyError):
                    raise
                except Exception as e:
                    raise IdentitiesServiceError(f"Failed to run mean check {name}: {str(e)}") from e
                checks.extend(c.model_copy(update={"id": f"{name}.{c.id}"}) for c in report.checks)
        return ResidualReport.build("mean", checks)

    def orbit_check(self, v: VectorLike, n: int = 8, tol: Optional[float] = None) -> ResidualReport:
        """
        a(R^k v) against the k-th Kato-Matsumoto iterate of abcd(v), k = 1..n,
        and a(R^n v) against pi / Gamma(3/4)^4
        """
        tol = tol or self.tol or settings.TOL_COMPOSITE
        if n < 1:
            raise IdentitiesDomainError(f"orbit length must be positive, got {n}")
        r = self.ball_service.builtin(NamedElem.R)
        vec = as_ball_vector(v)
        start = self.abcd(vec)
        try:
            state = AgmState(terms=tuple(z.real for z in start.as_tuple()))
        except ValueError as e:
            raise IdentitiesDomainError(f"abcd(v) is not positive: {str(e)}") from e

        checks = []
        for k in range(1, n + 1):
            vec = self.ball_service.apply(r, vec)
            vec = vec / np.max(np.abs(vec))
            state = self.agm_service.iterate_mean(MeanKind.KATO_MATSUMOTO4, state)
            a_k = self.abcd(vec).a
            checks.append(ResidualCheck.compare(f"orbit.{k:02d}", a_k, state.terms[0], tol))
        checks.append(ResidualCheck.compare(
            "orbit.limit", a_k, self.scalar_service.agm_limit_constant(), settings.TOL_SIMPLE
        ))
        return ResidualReport.build("orbit", checks)

    # AGM theorems

    def km_main(
        self,
        a0: float,
        b0: float,
        c0: float,
        d0: float,
        perturb: Perturbation = None,
        tol: Optional[float] = None,
    ) -> ResidualReport:
        """
        a0 / M(a0,b0,c0,d0) = F_D(x)^2 = Gamma(3/4)^4 / pi a(v(x)) with x = (1-b0^2/a0^2, 1-c0^2/a0^2, 1-d0^2/a0^2)

        The theta side needs x inside the chamber and is skipped when b0 = a0.

        Raises:
            IdentitiesDomainError: Unless 0 < d0 <= c0 <= b0 <= a0
        """
        tol = tol or self.tol or settings.TOL_COMPOSITE
        if not 0 < d0 <= c0 <= b0 <= a0:
            raise IdentitiesDomainError(f"km needs 0 < d <= c <= b <= a, got ({a0}, {b0}, {c0}, {d0})")
        trace = self.agm_service.mean_limit(MeanKind.KATO_MATSUMOTO4, AgmState(terms=(a0, b0, c0, d0)))
        ratio = a0 / trace.limit
        xs = [1.0 - (t / a0) ** 2 for t in (b0, c0, d0)]
        if perturb is not None:
            xs[perturb[0]] += perturb[1]
        fd = self.hypergeom_service.lauricella_fd(FDParams.quarter(), xs)
        checks = [ResidualCheck.compare("km.fd", ratio, fd ** 2, settings.TOL_SIMPLE)]
        if xs[0] > 0:
            x = BranchPoints.of(xs)
            a = self.abcd(self.period_service.period_vector(x)).a
            g4 = self.scalar_service.gamma34() ** 4
            checks.append(ResidualCheck.compare("km.theta", ratio, g4 / math.pi * a, tol))
        else:
            logger.debug("km: b0 = a0, theta side skipped")
        return ResidualReport.build("km", checks)

    def borwein_main(self, a0: float, b0: float, tol: Optional[float] = None) -> ResidualReport:
        """
        a0 / M_Bor(a0, b0) = theta00(tau1)^4 + theta10(tau1)^4 = F(1/4,3/4,1; 1-b0^2/a0^2)^2
        with tau1 = sqrt2 i F(k) / F(1-k), k = b0^2/a0^2

        Raises:
            IdentitiesDomainError: Unless 0 < b0 < a0
        """
        tol = tol or self.tol or settings.TOL_SIMPLE
        if not 0 < b0 < a0:
            raise IdentitiesDomainError(f"borwein needs 0 < b < a, got ({a0}, {b0})")
        trace = self.agm_service.mean_limit(MeanKind.BORWEIN_QUARTIC2, AgmState(terms=(a0, b0)))
        ratio = a0 / trace.limit
        k = (b0 / a0) ** 2
        f_k = self.hypergeom_service.gauss_2f1(0.25, 0.75, 1.0, k)
        f_kc = self.hypergeom_service.gauss_2f1(0.25, 0.75, 1.0, 1.0 - k)
        tau1 = math.sqrt(2.0) * 1j * f_k / f_kc
        ts = self.ball_service.theta_service
        alpha = ts.jacobi_theta(0, 0, tau1, self.accuracy) ** 4 + ts.jacobi_theta(1, 0, tau1, self.accuracy) ** 4
        checks = [
            ResidualCheck.compare("borwein.theta", ratio, alpha, tol),
            ResidualCheck.compare("borwein.f21", ratio, f_kc ** 2, tol),
        ]
        return ResidualReport.build("borwein", checks)

    def verify_borwein_cubic(self, a0: float, b0: float, tol: Optional[float] = None) -> ResidualReport:
        """a0 / M_cubic(a0, b0) = F(1/3, 2/3, 1; 1 - b0^3/a0^3)"""
        tol = tol or self.tol or settings.TOL_SIMPLE
        if not 0 < b0 <= a0:
            raise IdentitiesDomainError(f"borwein-cubic needs 0 < b <= a, got ({a0}, {b0})")
        trace = self.agm_service.mean_limit(MeanKind.BORWEIN_CUBIC2, AgmState(terms=(a0, b0)))
        rhs = self.hypergeom_service.gauss_2f1(1 / 3, 2 / 3, 1.0, 1.0 - (b0 / a0) ** 3)
        return ResidualReport.build("borwein-cubic", [ResidualCheck.compare("cubic.f21", a0 / trace.limit, rhs, tol)])

    def verify_gauss(self, a0: float, b0: float, tol: Optional[float] = None) -> ResidualReport:
        """a0 / M(a0, b0) = F(1/2, 1/2, 1; 1 - b0^2/a0^2)"""
        tol = tol or self.tol or settings.TOL_SIMPLE
        if not 0 < b0 <= a0:
            raise IdentitiesDomainError(f"gauss needs 0 < b <= a, got ({a0}, {b0})")
        trace = self.agm_service.mean_limit(MeanKind.GAUSS2, AgmState(terms=(a0, b0)))
        rhs = self.hypergeom_service.gauss_2f1(0.5, 0.5, 1.0, 1.0 - (b0 / a0) ** 2)
        return ResidualReport.build("gauss", [ResidualCheck.compare("gauss.f21", a0 / trace.limit, rhs, tol)])

    # Diagonal and boundary

    def verify_diagonal(self, x: float, tol: Optional[float] = None) -> ResidualReport:
        """
        At x1 = x2 = x3 = x: v = (sqrt2 pi F(x), -2 pi F(1-x), 0, 0), equal x_j(v), and
        a(v) = theta00(i)^4 alpha(tau1), b_j(v) = theta00(i)^4 beta(tau1) with tau1 = -i v2/v1,
        alpha = theta00^4 + theta10^4, beta = theta00^4 - theta10^4
        """
        tol = tol or self.tol or settings.TOL_COMPOSITE
        hs = self.hypergeom_service
        pv = self.period_service.period_vector(BranchPoints.diagonal(x))
        v = pv.v
        f = hs.gauss_2f1(0.25, 0.75, 1.0, x)
        fc = hs.gauss_2f1(0.25, 0.75, 1.0, 1.0 - x)
        checks = [
            ResidualCheck.compare("diagonal.v1", v[0], math.sqrt(2.0) * math.pi * f, tol),
            ResidualCheck.compare("diagonal.v2", v[1], -2 * math.pi * fc, tol),
            ResidualCheck.compare("diagonal.v3", v[2], 0.0, tol),
            ResidualCheck.compare("diagonal.v4", v[3], 0.0, tol),
        ]
        xs = self.x_of_v(v)
        checks.extend(ResidualCheck.compare(f"diagonal.x{j + 1}", xj, x, tol) for j, xj in enumerate(xs))

        ts = self.ball_service.theta_service
        tau1 = -1j * v[1] / v[0]
        t00 = ts.jacobi_theta(0, 0, tau1, self.accuracy) ** 4
        t10 = ts.jacobi_theta(1, 0, tau1, self.accuracy) ** 4
        c = self.scalar_service.theta00_at_i() ** 4
        vals = self.abcd(v)
        checks.append(ResidualCheck.compare("diagonal.a", vals.a, c * (t00 + t10), tol))
        for j, b in enumerate((vals.b1, vals.b2, vals.b3), start=1):
            checks.append(ResidualCheck.compare(f"diagonal.b{j}", b, c * (t00 - t10), tol))
        tp = self.period_service.tau_sharp(v)
        expected = SiegelPoint.diagonal([tau1, tau1, 1j, 1j]).tau
        checks.append(ResidualCheck.compare("diagonal.tau_sharp", float(np.max(np.abs(tp.tau - expected))), 0.0, tol))
        return ResidualReport.build("diagonal", checks)

    def cusp_points(self) -> list[np.ndarray]:
        """v16, v26, v36, v46, v56 as exact dyadic Gaussian vectors on the boundary of the ball"""
        return [
            dvector([1, 0, 0, 0]),
            dvector([1, -1 - 1j, -1 + 1j, 0]),
            dvector([1, -1 - 1j, 1j, 1j]),
            dvector([1, -1 - 1j, 1j, 1]),
            dvector([0, 1, 0, 0]),
        ]

    def verify_cusps(self) -> ResidualReport:
        """Exact checks: v*Uv = 0 at each cusp, v26 = g01^{-1} v16, v36 = g12^{-1} v26, v46 = g23^{-1} v36, v56 ~ g34^{-1} v46"""
        bs = self.ball_service
        cusps = self.cusp_points()
        u = exact_u()
        checks = []
        for k, c in enumerate(cusps, start=1):
            form = sum((x.conjugate() * y for x, y in zip(c, dmatmul(u, c))), DyadicGaussian(0))
            checks.append(ResidualCheck.holds(f"cusp.v{k}6.boundary", form.is_zero(), complex(form), 1e-15))
        for k, name in enumerate((NamedElem.G01, NamedElem.G12, NamedElem.G23)):
            image = dmatmul(bs.unitary_inverse(bs.builtin(name)).g, cusps[k])
            same = all(x == y for x, y in zip(image, cusps[k + 1]))
            checks.append(ResidualCheck.holds(f"cusp.v{k + 2}6.chain", same, 0.0, 1e-15))
        image = dmatmul(bs.unitary_inverse(bs.half_turn(3, 4)).g, cusps[3])
        target = cusps[4]
        projective = all((image[i] * target[j] - image[j] * target[i]).is_zero() for i in range(4) for j in range(4))
        checks.append(ResidualCheck.holds("cusp.v56.g34", projective, 0.0, 1e-15))
        return ResidualReport.build("cusps", checks)

    # Suites

    def run_suite(
        self,
        name: str,
        x: Union[BranchPoints, Sequence[float]] = (0.2, 0.5, 0.8),
        quad: Sequence[float] = (1.0, 0.8, 0.6, 0.4),
        seed: Optional[int] = None,
        pv: Optional[PeriodVector] = None,
        perturb: Perturbation = None,
    ) -> ResidualReport:
        """
        Run one named suite

        Args:
            name: One of SUITES
            x: Chamber point for the period-based suites
            quad: (a, b, c, d) for the mean suites; the two-term means use (a, b)
            seed: RNG seed for the transformation suite
            pv: Precomputed period vector at x
            perturb: (index, delta) applied to x on the x side of the period-based identities

        Tolerances default per suite unless the service carries an override.

        Raises:
            IdentitiesDomainError: On an unknown suite name
        """
        x = BranchPoints.of(x)
        a0, b0, c0, d0 = (float(t) for t in quad)

        def period() -> PeriodVector:
            return pv if pv is not None else self.period_service.period_vector(x)

        match name:
            case "periods":
                return self.period_service.verify_periods(x, tol=self.tol)
            case "thomae":
                return self.verify_thomae(x, period(), perturb)
            case "table2":
                return self.verify_table2(x, period(), perturb)
            case "thomae3":
                return self.verify_thomae3(period(), linear=True)
            case "jacobi":
                return self.verify_jacobi(x, period(), perturb)
            case "abcd":
                return self.verify_abcd(x, period(), perturb)
            case "mean":
                return self.mean_suite(x, period(), seed)
            case "orbit":
                return self.orbit_check(period())
            case "km":
                return self.km_main(a0, b0, c0, d0)
            case "borwein":
                return self.borwein_main(a0, b0)
            case "borwein-cubic":
                return self.verify_borwein_cubic(a0, b0)
            case "gauss":
                return self.verify_gauss(a0, b0)
            case "secondary":
                return self.secondary_relations(period(), x, perturb)
            case "diagonal":
                return self.verify_diagonal(x.x1)
            case "cusps":
                return self.verify_cusps()
            case "transform":
                return self.transform_service.verify_transform(seed)
            case _:
                raise IdentitiesDomainError(f"Unknown suite: {name}; expected one of {', '.join(SUITES)} or all")

    def verify_all(
        self,
        x: Union[BranchPoints, Sequence[float]] = (0.2, 0.5, 0.8),
        quad: Sequence[float] = (1.0, 0.8, 0.6, 0.4),
        seed: Optional[int] = None,
        suites: Sequence[str] = SUITES,
        perturb: Perturbation = None,
    ) -> list[ResidualReport]:
        """
        Run the suites concurrently, sharing one period vector

        Returns:
            list[ResidualReport]: Reports sorted by suite name
        """
        x = BranchPoints.of(x)
        pv = self.period_service.period_vector(x)
        reports: list[ResidualReport] = []
        with ThreadPoolExecutor(max_workers=settings.MAX_WORKERS) as executor:
            future_to_suite = {
                executor.submit(self.run_suite, name, x, quad, seed, pv, perturb): name for name in suites
            }
            for future in as_completed(future_to_suite):
                name = future_to_suite[future]
                try:
                    reports.append(future.result())
                except (DomainError, ConvergenceError, ConsistencyError):
                    logger.error("Suite %s raised", name)
                    raise
                except Exception as e:
                    raise IdentitiesServiceError(f"Failed to run suite {name}: {str(e)}") from e
        reports.sort(key=lambda r: r.suite)
        failed = [r.suite for r in reports if not r.passed]
        logger.info("verify: %d suites, failed: %s", len(reports), ", ".join(failed) or "none")
        return reports

def create_identities_service() -> IdentitiesService:
    """
    Factory function to create an identities service instance

    Returns:
        IdentitiesService: Configured identities service instance
    """
    return IdentitiesService()
