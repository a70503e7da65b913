"""
Transform Service - verifies the transformation formulas of theta constants
under the named symplectic elements, at ball points and at Siegel points
"""
import cmath
import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, Optional, Sequence

import numpy as np

from app.core.config import settings
from app.core.exceptions import DomainError
from app.enums.named_elem import NamedElem
from app.models.ball import BallPoint, SymplecticElem, exact_u
from app.models.dyadic import DyadicError, dblock, dequal, deye, dmatmul, dprod, dvector, dzeros
from app.models.report import ResidualCheck, ResidualReport
from app.models.theta import Characteristic, SiegelPoint, ThetaAccuracy
from app.services.ball_service import V0, BallLike, BallService, as_ball_vector, create_ball_service
from app.services.scalar_service import e
from app.services.theta_service import ThetaService

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
KAPPA_PLUS = (1 + 1j) / SQRT2
KAPPA_MINUS = (1 - 1j) / SQRT2
E3 = (0, 0, 1, 0)
E4 = (0, 0, 0, 1)
E34 = (0, 0, 1, 1)

class TransformServiceError(Exception):
    """Custom exception for transform service errors"""
    pass

class TransformDomainError(TransformServiceError, DomainError):
    pass

def sample_ball_points(rng: np.random.Generator, count: int, scale: float = 0.15) -> list[np.ndarray]:
    """Random points v0 + scale * (complex normal) inside the ball"""
    points: list[np.ndarray] = []
    while len(points) < count:
        v = V0 + scale * (rng.standard_normal(4) + 1j * rng.standard_normal(4))
        try:
            BallPoint(v=v)
        except ValueError:
            continue
        points.append(v)
    return points

def sample_siegel_points(rng: np.random.Generator, count: int, n: int = 2) -> list[SiegelPoint]:
    """Random tau = X + iY with |X_jk| <= 1/2 and Y = I + a small symmetric perturbation"""
    points: list[SiegelPoint] = []
    while len(points) < count:
        x = rng.uniform(-0.5, 0.5, (n, n))
        p = rng.uniform(-0.2, 0.2, (n, n))
        try:
            points.append(SiegelPoint(tau=(x + x.T) / 2 + 1j * (np.eye(n) + (p + p.T) / 2)))
        except ValueError:
            continue
    return points

def det_sqrt(tp: SiegelPoint) -> complex:
    """
    det(-i tau)^(1/2), continuous on Siegel space and positive at tau = iI

    Uses det(-i tau) = det Y prod_k (1 - i lambda_k) with lambda_k the eigenvalues of Y^(-1/2) X Y^(-1/2).
    """
    y, x = tp.tau.imag, tp.tau.real
    w, vecs = np.linalg.eigh(y)
    y_half_inv = vecs @ np.diag(w ** -0.5) @ vecs.T
    lam = np.linalg.eigvalsh(y_half_inv @ x @ y_half_inv)
    return complex(math.sqrt(float(np.prod(w))) * np.prod(np.sqrt(1.0 - 1j * lam)))

def _char2(a: Sequence[int], b: Sequence[int]) -> Characteristic:
    return Characteristic(a=tuple(int(t) for t in a), b=tuple(int(t) for t in b))

class TransformService:
    """Service verifying theta transformation formulas for the named elements"""

    def __init__(
        self,
        ball_service: Optional[BallService] = None,
        accuracy: Optional[ThetaAccuracy] = None,
        tol: Optional[float] = None,
    ):
        self._ball_service = ball_service
        self.accuracy = accuracy
        self.tol = tol or settings.TOL_TRANSFORM

    @property
    def ball_service(self) -> BallService:
        """Get or create ball service instance"""
        if self._ball_service is None:
            self._ball_service = create_ball_service()
        return self._ball_service

    @property
    def theta_service(self) -> ThetaService:
        return self.ball_service.theta_service

    # Helpers

    def _theta(self, ch: Characteristic, tp: SiegelPoint) -> complex:
        return self.theta_service.theta_constant(ch, tp, self.accuracy)

    def _nu(self, j: int) -> Characteristic:
        return self.ball_service.nu_char(j)

    def _row_image(self, ch: Characteristic, m: np.ndarray) -> Characteristic:
        """(a, b) M as a row vector, without the diagonal shift"""
        image = dmatmul(dvector(list(ch.a) + list(ch.b)), m)
        n = ch.n
        try:
            return _char2([int(x) for x in image[:n]], [int(x) for x in image[n:]])
        except DyadicError as e:
            raise TransformDomainError(f"(a,b) M is not integral for {ch}") from e

    def _translation(self, s: np.ndarray) -> SymplecticElem:
        n = s.shape[0]
        return SymplecticElem(M=dblock([[deye(n), s], [dzeros(n), deye(n)]]))

    def _transformation_check(
        self,
        check_id: str,
        m: SymplecticElem,
        ch: Characteristic,
        tp: SiegelPoint,
        kappa: complex,
        sqrt_chi: complex,
    ) -> ResidualCheck:
        """theta_{M.(a,b)}(M.tau) = kappa e(phi_{a,b}(M)) chi^(1/2) theta_{a,b}(tau)"""
        lhs = self._theta(self.ball_service.char_act(m, ch), self.ball_service.sp_act(m, tp))
        phase = e(float(self.ball_service.phi_ab(m, ch)))
        rhs = kappa * phase * sqrt_chi * self._theta(ch, tp)
        return ResidualCheck.compare(check_id, lhs, rhs, self.tol)

    # Monodromy items

    def monodromy_items(self, v: BallLike, chars: Optional[Sequence[Characteristic]] = None) -> ResidualReport:
        """
        The six monodromy transformations at tau(v):
        j(g23)^{+-1}, Jswap, j(g01)^{+-1} and the translations by I and U

        Args:
            v: Ball point
            chars: Characteristics to test; defaults to the twelve nu_j
        """
        bs = self.ball_service
        chars = list(chars) if chars is not None else [self._nu(j) for j in range(12)]
        v = as_ball_vector(v)
        tp = bs.tau_of_v(v)
        g23 = bs.builtin(NamedElem.G23)
        g01 = bs.builtin(NamedElem.G01)
        m23 = bs.jmath(g23)
        m23_inv = bs.jmath(bs.unitary_inverse(g23))
        m01 = bs.jmath(g01)
        g01_inv = bs.unitary_inverse(g01)
        m01_inv = bs.jmath(g01_inv)
        jswap = bs.symplectic(NamedElem.JSWAP)
        shift_i = self._translation(deye(4))
        shift_u = self._translation(exact_u())

        sqrt_23 = cmath.sqrt(bs.chi(m23, tp))
        sqrt_23_inv = cmath.sqrt(bs.chi(m23_inv, tp))
        sqrt_01 = bs.sqrt_chi_ball(g01, v)
        sqrt_01_inv = bs.sqrt_chi_ball(g01_inv, v)
        root_det = det_sqrt(tp)
        inverse_tp = bs.sp_act(jswap, tp)

        checks = []
        for k, ch in enumerate(chars):
            checks.append(self._transformation_check(f"item1.{k:02d}", m23, ch, tp, KAPPA_PLUS, sqrt_23))
            checks.append(self._transformation_check(f"item2.{k:02d}", m23_inv, ch, tp, KAPPA_MINUS, sqrt_23_inv))
            ab = sum(x * y for x, y in zip(ch.a, ch.b))
            swapped = _char2(ch.b, ch.a)
            checks.append(ResidualCheck.compare(
                f"item3.{k:02d}",
                self._theta(swapped, inverse_tp),
                root_det * e(ab / 4) * self._theta(ch, tp),
                self.tol,
            ))
            checks.append(self._transformation_check(f"item4.{k:02d}", m01, ch, tp, KAPPA_PLUS, sqrt_01))
            checks.append(self._transformation_check(f"item5.{k:02d}", m01_inv, ch, tp, KAPPA_MINUS, sqrt_01_inv))
            checks.append(self._transformation_check(f"item6.I.{k:02d}", shift_i, ch, tp, 1.0, 1.0))
            checks.append(self._transformation_check(f"item6.U.{k:02d}", shift_u, ch, tp, 1.0, 1.0))
        checks.append(ResidualCheck.compare("item3.det_root", root_det, 1.0, self.tol))
        return ResidualReport.build("monodromy", checks)

    def inversion_on_ball(self, v: BallLike, pairs: Sequence[Characteristic]) -> ResidualReport:
        """e(a b^T / 4) theta_{a,b}(v) = theta_{bU,aU}(v), and theta_{bU,b}(v) = 0 when bUb^T is not 0 mod 4"""
        tp = self.ball_service.tau_of_v(v)
        checks = []
        for k, ch in enumerate(pairs):
            a, b = ch.a, ch.b
            ab = sum(x * y for x, y in zip(a, b))
            flipped = _char2((b[1], b[0], b[2], b[3]), (a[1], a[0], a[2], a[3]))
            checks.append(ResidualCheck.compare(
                f"inversion.{k:02d}", e(ab / 4) * self._theta(ch, tp), self._theta(flipped, tp), self.tol
            ))
        for bits in range(16):
            b = tuple((bits >> (3 - i)) & 1 for i in range(4))
            if (2 * b[0] * b[1] + b[2] + b[3]) % 4 == 0:
                continue
            ch = _char2((b[1], b[0], b[2], b[3]), b)
            checks.append(ResidualCheck.compare(f"vanishing.{''.join(map(str, b))}", self._theta(ch, tp), 0.0, self.tol))
        return ResidualReport.build("inversion", checks)

    def n_action(self, v: BallLike, chars: Optional[Sequence[Characteristic]] = None) -> ResidualReport:
        """theta_{N.(a,b)}(N.tau) = (1-i)/sqrt2 e(phi_{a,b}(N)) tau_22^(1/2) theta_{a,b}(tau), principal root"""
        bs = self.ball_service
        chars = list(chars) if chars is not None else [self._nu(j) for j in range(12)]
        tp = bs.tau_of_v(v)
        n = bs.symplectic(NamedElem.N)
        chi = bs.chi(n, tp)
        checks = [ResidualCheck.compare("n.chi", chi, tp.tau[1, 1], self.tol)]
        root = cmath.sqrt(tp.tau[1, 1])
        for k, ch in enumerate(chars):
            checks.append(ResidualCheck.compare(
                f"n.phi.{k:02d}", e(float(bs.phi_ab(n, ch))), e(-ch.a[1] * ch.b[1] / 4), self.tol
            ))
            checks.append(self._transformation_check(f"n.theta.{k:02d}", n, ch, tp, KAPPA_MINUS, root))
        return ResidualReport.build("n_action", checks)

    def kappa_inference(self, tp: SiegelPoint, mats: dict[str, SymplecticElem]) -> ResidualReport:
        """
        kappa(M) = theta_{M.0}(M.tau) / (e(phi_0(M)) chi^(1/2) theta_0(tau)) with the principal root;
        it must be an eighth root of unity
        """
        bs = self.ball_service
        zero = Characteristic.zero(tp.n)
        base = self._theta(zero, tp)
        checks = []
        for name, m in sorted(mats.items()):
            lhs = self._theta(bs.char_act(m, zero), bs.sp_act(m, tp))
            denom = e(float(bs.phi_ab(m, zero))) * cmath.sqrt(bs.chi(m, tp)) * base
            kappa = lhs / denom
            logger.debug("kappa(%s) = %r", name, kappa)
            checks.append(ResidualCheck.compare(f"kappa.{name}.modulus", abs(kappa), 1.0, self.tol))
            checks.append(ResidualCheck.compare(f"kappa.{name}.order8", kappa ** 8, 1.0, 8 * self.tol))
        return ResidualReport.build("kappa", checks)

    def default_kappa_matrices(self) -> dict[str, SymplecticElem]:
        bs = self.ball_service
        g01 = bs.builtin(NamedElem.G01)
        g23 = bs.builtin(NamedElem.G23)
        return {
            "g01": bs.jmath(g01),
            "g23": bs.jmath(g23),
            "g01g23": bs.jmath(dmatmul(g01, g23)),
            "N": bs.symplectic(NamedElem.N),
            "Jswap": bs.symplectic(NamedElem.JSWAP),
            "Mrho": bs.symplectic(NamedElem.MRHO),
        }

    # g13 and g12

    def g13_action(self, v: BallLike, chars: Optional[Sequence[Characteristic]] = None) -> ResidualReport:
        """
        The 2x2 system for (theta_{a,b}, theta_{a+e3+e4, b+e3+e4}) at g13 v, for a3+a4+b3+b4 even,
        with (c, d) = (a, b) j(g13) and chi(j(g13), iI)^(1/2) = (1-i)/sqrt2
        """
        bs = self.ball_service
        chars = list(chars) if chars is not None else [self._nu(j) for j in range(12)]
        v = as_ball_vector(v)
        g = bs.builtin(NamedElem.G13)
        m_inv = bs.symplectic_inverse(bs.jmath(g))
        w = bs.apply(g, v)
        tp_v, tp_w = bs.tau_of_v(v), bs.tau_of_v(w)
        root = bs.sqrt_chi_ball(g, v, anchor=KAPPA_MINUS)

        checks = []
        for k, ch in enumerate(chars):
            a, b = ch.a, ch.b
            if (a[2] + a[3] + b[2] + b[3]) % 2:
                continue
            cd = bs.char_act(m_inv, ch, allow_rational=True)
            t0 = self._theta(cd.shifted(db=E34), tp_v)
            t1 = self._theta(cd.shifted(da=E34), tp_v)
            s = a[2] + a[3]
            pref = root * e((a[3] - a[2]) * (b[3] - b[2]) / 8) * (1 + 1j) / 2
            lhs0 = self._theta(ch, tp_w)
            lhs1 = self._theta(ch.shifted(E34, E34), tp_w)
            checks.append(ResidualCheck.compare(f"g13.{k:02d}.first", lhs0, pref * (e(-s / 4) * t0 + t1), self.tol))
            checks.append(ResidualCheck.compare(f"g13.{k:02d}.second", lhs1, pref * (t0 - e(s / 4) * t1), self.tol))
        return ResidualReport.build("g13", checks)

    def g12_action(self, v: BallLike, chars: Optional[Sequence[Characteristic]] = None) -> ResidualReport:
        """theta_{a,b}(g12 v) = chi^(1/2) E (E1 theta_{c+e4,d+e3}(v) + E1^{-1} theta_{c+e3,d+e4}(v)), (c,d) = (a,b) j(g12)"""
        bs = self.ball_service
        chars = list(chars) if chars is not None else [self._nu(j) for j in range(12)]
        v = as_ball_vector(v)
        g = bs.builtin(NamedElem.G12)
        m = bs.jmath(g)
        tp_v, tp_w = bs.tau_of_v(v), bs.tau_of_v(bs.apply(g, v))
        root = bs.sqrt_chi_ball(g, v, anchor=KAPPA_MINUS)

        checks = []
        for k, ch in enumerate(chars):
            a1, a2, a3, a4 = ch.a
            b1, b2, b3, b4 = ch.b
            if (a3 + a4 + b3 + b4) % 2:
                continue
            cd = self._row_image(ch, m.M)
            e1 = e((a4 - b4) / 8)
            big_e = (
                (1 + 1j) / 2
                * e((-a3 + b3) / 8)
                * e((a3 - b4) * (a4 + b3) / 8)
                * e(a4 * b4 / 4)
                * e(-(a3 + a4 - b3 - b4) * (a3 + a4 + b3 + b4) / 8)
            )
            rhs = root * big_e * (
                e1 * self._theta(cd.shifted(E4, E3), tp_v) + self._theta(cd.shifted(E3, E4), tp_v) / e1
            )
            checks.append(ResidualCheck.compare(f"g12.{k:02d}", self._theta(ch, tp_w), rhs, self.tol))
        return ResidualReport.build("g12", checks)

    def g_actions(self, v: BallLike) -> ResidualReport:
        """theta_j(g12 v) and theta_j(g13 v), j = 0..3, as single theta constants at v"""
        bs = self.ball_service
        v = as_ball_vector(v)
        tp_v = bs.tau_of_v(v)
        checks = []
        for name, shift_a, shift_b in ((NamedElem.G12, E3, E4), (NamedElem.G13, E34, (0, 0, 0, 0))):
            g = bs.builtin(name)
            tp_w = bs.tau_of_v(bs.apply(g, v))
            root = bs.sqrt_chi_ball(g, v, anchor=KAPPA_MINUS)
            for j in range(4):
                ch = self._nu(j)
                factor = -1j if (name == NamedElem.G12 and j == 3) else 1.0
                rhs = root * (1 + 1j) * factor * self._theta(ch.shifted(shift_a, shift_b), tp_v)
                checks.append(ResidualCheck.compare(f"{name.value}.nu{j}", self._theta(ch, tp_w), rhs, self.tol))
        return ResidualReport.build("g_actions", checks)

    # Genus two blocks and R1

    def _s1_factors(self, a: Sequence[int], b: Sequence[int]) -> tuple[complex, tuple[int, int], tuple[int, int]]:
        """E(S1) and (c, d) for the first two coordinates; needs a2 = b1 mod 2"""
        a1, a2 = a[0], a[1]
        b1, b2 = b[0], b[1]
        if (a2 - b1) % 2:
            raise TransformDomainError(f"S1 formula needs a2 = b1 mod 2, got a2={a2}, b1={b1}")
        big_e = -1j * e((a2 + b1) * (b2 - a1) / 8 + a1 * b1 / 4)
        return big_e, (a1 - b2, (a2 - b1) // 2), ((a2 + b1) // 2, a1 + b2)

    def _tau1_lift(self) -> np.ndarray:
        bs = self.ball_service
        return dprod(bs.builtin(NamedElem.B2), bs.builtin(NamedElem.M1), bs.builtin(NamedElem.B1))

    def genus2_actions(self, tp: SiegelPoint) -> ResidualReport:
        """M1, B1, B1^{-1}, B2 and S1 on a degree-2 Siegel point, for all (a, b) in {0,1}^4"""
        bs = self.ball_service
        t = tp.tau
        b1 = bs.builtin(NamedElem.B1)
        b1_inv = bs.symplectic_inverse(b1).M
        b2 = bs.builtin(NamedElem.B2)
        m1 = bs.builtin(NamedElem.M1)
        s1 = bs.builtin(NamedElem.S1)
        tp_m1 = bs.sp_act(m1, tp)
        tp_b1 = bs.sp_act(b1, tp)
        tp_b1_inv = bs.sp_act(b1_inv, tp)
        tp_b2 = bs.sp_act(b2, tp)
        tp_s1 = bs.sp_act(s1, tp)
        tp1 = bs.sp_act(self._tau1_lift(), tp)

        checks = [
            ResidualCheck.holds("s1.factorization", dequal(dprod(b1_inv, b2, m1, b1), s1), 0.0, self.tol),
            ResidualCheck.holds(
                "s1.lift", dequal(bs.lift12(s1).M, bs.jmath(bs.builtin(NamedElem.R1)).M), 0.0, self.tol
            ),
        ]
        root11 = cmath.sqrt(t[0, 0])
        root_minus11 = cmath.sqrt(-t[0, 0])
        for bits in range(16):
            a = ((bits >> 3) & 1, (bits >> 2) & 1)
            b = ((bits >> 1) & 1, bits & 1)
            ch = _char2(a, b)
            label = f"{a[0]}{a[1]}{b[0]}{b[1]}"
            if a[0] == a[1]:
                at = ((a[0] + a[1]) // 2, (a[0] - a[1]) // 2)
                bt = (b[0] + b[1], b[0] - b[1])
                rhs = self._theta(_char2(at, bt), tp) + self._theta(_char2((at[0] + 1, at[1] + 1), bt), tp)
                checks.append(ResidualCheck.compare(f"m1.{label}", self._theta(ch, tp_m1), rhs, self.tol))
            phase = e(a[0] * b[0] / 4)
            checks.append(ResidualCheck.compare(
                f"b1inv.{label}",
                self._theta(ch, tp_b1_inv),
                KAPPA_MINUS * phase * root11 * self._theta(_char2((b[0], a[1]), (-a[0], b[1])), tp),
                self.tol,
            ))
            checks.append(ResidualCheck.compare(
                f"b1.{label}",
                self._theta(ch, tp_b1),
                KAPPA_PLUS * phase * root_minus11 * self._theta(_char2((-b[0], a[1]), (a[0], b[1])), tp),
                self.tol,
            ))
            checks.append(ResidualCheck.compare(
                f"b2.{label}", self._theta(ch, tp_b2), self._theta(_char2((a[1], a[0]), (b[1], b[0])), tp), self.tol
            ))
            if (a[1] - b[0]) % 2 == 0:
                big_e, c, d = self._s1_factors(a, b)
                rhs = big_e * root11 * cmath.sqrt(tp1.tau[0, 0]) * (
                    self._theta(_char2(c, d), tp)
                    + e((b[1] - a[0]) / 4) * self._theta(_char2((c[0], c[1] + 1), (d[0] + 1, d[1])), tp)
                )
                checks.append(ResidualCheck.compare(f"s1.{label}", self._theta(ch, tp_s1), rhs, self.tol))
        return ResidualReport.build("genus2", checks)

    def r1_action(self, v: BallLike, chars: Optional[Sequence[Characteristic]] = None) -> ResidualReport:
        """The S1 formula lifted to degree 4: theta_{a,b}(R1 v) in terms of theta constants at v"""
        bs = self.ball_service
        chars = list(chars) if chars is not None else [self._nu(j) for j in range(12)]
        v = as_ball_vector(v)
        tp = bs.tau_of_v(v)
        tp_r1 = bs.tau_of_v(bs.apply(bs.builtin(NamedElem.R1), v))
        tp1 = bs.sp_act(bs.lift12(self._tau1_lift()), tp)
        roots = cmath.sqrt(tp.tau[0, 0]) * cmath.sqrt(tp1.tau[0, 0])

        checks = [ResidualCheck.compare(
            "r1.equivariance", float(np.max(np.abs(bs.sp_act(bs.lift12(bs.builtin(NamedElem.S1)), tp).tau - tp_r1.tau))), 0.0, self.tol
        )]
        for k, ch in enumerate(chars):
            a, b = ch.a, ch.b
            if (a[1] - b[0]) % 2:
                continue
            big_e, c, d = self._s1_factors(a, b)
            base = _char2(c + a[2:], d + b[2:])
            other = base.shifted((0, 1, 0, 0), (1, 0, 0, 0))
            rhs = big_e * roots * (self._theta(base, tp) + e((b[1] - a[0]) / 4) * self._theta(other, tp))
            checks.append(ResidualCheck.compare(f"r1.{k:02d}", self._theta(ch, tp_r1), rhs, self.tol))
        return ResidualReport.build("r1", checks)

    # The mean generating transformation R

    def e_r(self, v: BallLike) -> complex:
        """
        E_R(v) = (1-i)/2 tau(v)_11^(1/2) tau1_11^(1/2) chi(j(g13), tau(R1 v))^(1/2)

        tau1 is the lift of B2 M1 B1 applied to tau(v). The first two roots are principal;
        the last is continued from (1-i)/sqrt2 at v0.
        """
        bs = self.ball_service
        v = as_ball_vector(v)
        tp = bs.tau_of_v(v)
        tp1 = bs.sp_act(bs.lift12(self._tau1_lift()), tp)
        r1v = bs.apply(bs.builtin(NamedElem.R1), v)
        root = bs.sqrt_chi_ball(bs.builtin(NamedElem.G13), r1v, anchor=KAPPA_MINUS)
        return (1 - 1j) / 2 * cmath.sqrt(tp.tau[0, 0]) * cmath.sqrt(tp1.tau[0, 0]) * root

    def r_relations(self, v: BallLike) -> ResidualReport:
        """
        theta_j(Rv) for j = 0, 1, 4, 5, 8, 9 as E_R(v) times sums of theta_k(v),
        plus 8 E_R(v)^2 chi(N, tau(Rv)) = chi(N, tau(v))
        """
        bs = self.ball_service
        v = as_ball_vector(v)
        rv = bs.apply(bs.builtin(NamedElem.R), v)
        tp_v, tp_rv = bs.tau_of_v(v), bs.tau_of_v(rv)
        er = self.e_r(v)
        th = {j: self._theta(self._nu(j), tp_v) for j in (0, 2, 4, 6, 8, 10)}
        at_rv: Callable[[int], complex] = lambda j: self._theta(self._nu(j), tp_rv)
        n = bs.symplectic(NamedElem.N)
        checks = [
            ResidualCheck.compare("r.theta0", at_rv(0), 2 * er * (th[8] + th[10]), self.tol),
            ResidualCheck.compare("r.theta1", at_rv(1), 2 * er * (th[8] - th[10]), self.tol),
            ResidualCheck.compare("r.theta4", at_rv(4), SQRT2 * er * (th[4] + th[6]), self.tol),
            ResidualCheck.compare("r.theta5", at_rv(5), SQRT2 * er * (th[4] - th[6]), self.tol),
            ResidualCheck.compare("r.theta8", at_rv(8), er * (th[0] + th[2]), self.tol),
            ResidualCheck.compare("r.theta9", at_rv(9), er * (th[0] - th[2]), self.tol),
            ResidualCheck.compare("r.automorphy", 8 * er * er * bs.chi(n, tp_rv), bs.chi(n, tp_v), self.tol),
            ResidualCheck.compare("r.anchor", self.e_r(V0), 0.5, self.tol),
        ]
        return ResidualReport.build("r_relations", checks)

    # Suite

    def verify_transform(self, seed: Optional[int] = None, points: Optional[int] = None) -> ResidualReport:
        """
        Run every transformation check at random ball points and random degree-2 Siegel points

        Args:
            seed: RNG seed; defaults to settings.SEED
            points: Number of random points of each kind; defaults to settings.TRANSFORM_POINTS

        Returns:
            ResidualReport: The combined "transform" suite
        """
        points = points or settings.TRANSFORM_POINTS
        rng = np.random.default_rng(settings.SEED if seed is None else seed)
        ball_points = sample_ball_points(rng, points)
        siegel_points = sample_siegel_points(rng, points)
        pairs = [
            _char2(rng.integers(0, 2, 4), rng.integers(0, 2, 4)) for _ in range(4)
        ]

        jobs: dict[str, Callable[[], ResidualReport]] = {}
        for p, v in enumerate(ball_points):
            jobs[f"p{p}.monodromy"] = lambda v=v: self.monodromy_items(v)
            jobs[f"p{p}.inversion"] = lambda v=v: self.inversion_on_ball(v, pairs)
            jobs[f"p{p}.n"] = lambda v=v: self.n_action(v)
            jobs[f"p{p}.kappa"] = lambda v=v: self.kappa_inference(self.ball_service.tau_of_v(v), self.default_kappa_matrices())
            jobs[f"p{p}.g13"] = lambda v=v: self.g13_action(v)
            jobs[f"p{p}.g12"] = lambda v=v: self.g12_action(v)
            jobs[f"p{p}.gact"] = lambda v=v: self.g_actions(v)
            jobs[f"p{p}.r1"] = lambda v=v: self.r1_action(v)
            jobs[f"p{p}.r"] = lambda v=v: self.r_relations(v)
        for p, tp in enumerate(siegel_points):
            jobs[f"s{p}.genus2"] = lambda tp=tp: self.genus2_actions(tp)

        checks: list[ResidualCheck] = []
        with ThreadPoolExecutor(max_workers=settings.MAX_WORKERS) as executor:
            future_to_job = {executor.submit(job): name for name, job in jobs.items()}
            for future in as_completed(future_to_job):
                name = future_to_job[future]
                try:
                    report = future.result()
                except DomainError:
                    raise
                except Exception as e:
                    raise TransformServiceError(f"Failed to run {name}: {str(e)}") from e
                checks.extend(c.model_copy(update={"id": f"{name}.{c.id}"}) for c in report.checks)

        report = ResidualReport.build("transform", checks)
        logger.info("transform suite: %d checks, %d failed", len(report.checks), len(report.failures))
        return report

def create_transform_service() -> TransformService:
    """
    Factory function to create a transform service instance

    Returns:
        TransformService: Configured transform service instance
    """
    return TransformService()
