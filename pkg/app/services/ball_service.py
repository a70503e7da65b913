"""
Ball Service - the complex 3-ball, its embedding into Siegel space, the
homomorphism into Sp(8), automorphy factors, characteristic actions and the
named group elements
"""
import cmath
import logging
import math
from functools import lru_cache
from typing import Callable, Optional, Sequence, Union

import numpy as np

from app.core.exceptions import ConsistencyError, DomainError
from app.enums.named_elem import NamedElem
from app.models.ball import BallPoint, SymplecticElem, U_HERMITIAN, UnitaryElem, exact_j, exact_u
from app.models.dyadic import (
    DyadicError,
    DyadicGaussian,
    I,
    dblock,
    dconj,
    ddet,
    dequal,
    from_complex_array,
    ddiag,
    deye,
    dimag,
    dinv,
    dmatmul,
    dmatrix,
    dprod,
    dreal,
    dscale,
    dvector,
    dzeros,
    to_complex_array,
)
from app.models.periods import PeriodVector
from app.models.theta import Characteristic, SiegelPoint, ThetaAccuracy
from app.services.theta_service import ThetaService, create_theta_service

logger = logging.getLogger(__name__)

BallLike = Union[BallPoint, np.ndarray, Sequence[complex]]
MatrixLike = Union[SymplecticElem, np.ndarray]

V0 = np.array([1, -1, 0, 0], dtype=complex)

# Characteristic pairs theta_0 .. theta_11
NU_TABLE: tuple[tuple[str, str], ...] = (
    ("0000", "0000"),
    ("1000", "0100"),
    ("0100", "1000"),
    ("1111", "1111"),
    ("0010", "0001"),
    ("1010", "0101"),
    ("0110", "1001"),
    ("1101", "1110"),
    ("0011", "0000"),
    ("1011", "0100"),
    ("0111", "1000"),
    ("1100", "1111"),
)

# Change of basis from the cycles c2..c5, rho c2..rho c5 to the B-cycles
T1 = ((0, -1, -2, -1), (0, 1, 1, 0), (0, -1, 0, 0), (0, 0, 1, 0))
T2 = ((0, 1, 0, -1), (-1, -1, 0, 0), (0, -1, -1, 0), (0, 0, 0, 0))
# Intersection numbers of c2..c5 (Q1) and of c_j with rho c_k (Q2)
Q1 = ((0, 1, 0, 0), (-1, 0, 1, 0), (0, -1, 0, 1), (0, 0, -1, 0))
Q2 = ((2, -1, 0, 0), (-1, 2, -1, 0), (0, -1, 2, -1), (0, 0, -1, 2))

class BallServiceError(Exception):
    """Custom exception for ball service errors"""
    pass

class BallDomainError(BallServiceError, DomainError):
    pass

class DegeneratePointError(BallServiceError, DomainError):
    """v^T U v vanishes, so tau(v) is undefined"""
    pass

class BoundaryError(BallServiceError, DomainError):
    """M21 tau + M22 is singular"""
    pass

class BranchContinuationError(BallServiceError, ConsistencyError):
    pass

def as_ball_vector(v: BallLike) -> np.ndarray:
    if isinstance(v, (BallPoint, PeriodVector)):
        return v.v
    return np.asarray(v, dtype=complex).reshape(-1)

def _as_matrix(m: MatrixLike) -> np.ndarray:
    return m.M if isinstance(m, SymplecticElem) else np.asarray(m, dtype=object)

def _exact_inverse(m: np.ndarray) -> np.ndarray:
    """Inverse over Z[i][1/2], falling back to rounding the float inverse"""
    try:
        return dinv(m)
    except DyadicError:
        inv = from_complex_array(np.linalg.inv(to_complex_array(m)))
        if not dequal(dmatmul(m, inv), deye(m.shape[0])):
            raise
        return inv

@lru_cache(maxsize=1)
def _named_table() -> dict[NamedElem, np.ndarray]:
    h = DyadicGaussian(1, 1, 1)  # (1+i)/2
    hc = DyadicGaussian(1, -1, 1)  # (1-i)/2
    u = exact_u()
    o4 = dzeros(4)
    i4 = deye(4)
    half = DyadicGaussian(1, 0, 1)

    g01 = dmatrix([[1, 0, 0, 0], [-1 + 1j, 1, -1 - 1j, 0], [1 + 1j, 0, 1j, 0], [0, 0, 0, 1]])
    g12 = dmatrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, h, h], [0, 0, -h, h]])
    g13 = dmatrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, h, hc], [0, 0, hc, h]])
    g23 = ddiag([1, 1, 1, 1j])
    r1 = ddiag([h, DyadicGaussian(1, 1), 1, 1])
    r = dscale(h, dmatrix([[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, -1j], [0, 0, -1j, 1]]))

    e22 = ddiag([0, 1, 0, 0])
    d = ddiag([1, 0, 1, 1])
    n = dblock([[d, dscale(-1, e22)], [e22, d]])
    mrho = dblock([[o4, dscale(-1, u)], [u, o4]])
    jswap = dblock([[o4, dscale(-1, i4)], [i4, o4]])

    t = dmatrix([[half, half], [half, -half]])
    b1 = dmatrix([[0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1]])
    b2 = dmatrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    m1 = dblock([[t, dzeros(2)], [dzeros(2), dmatrix([[1, 1], [1, -1]])]])
    s1 = dmatrix([[1, 0, 0, 1], [0, half, half, 0], [0, -half, half, 0], [-1, 0, 0, 1]])

    return {
        NamedElem.G01: g01,
        NamedElem.G12: g12,
        NamedElem.G13: g13,
        NamedElem.G23: g23,
        NamedElem.N: n,
        NamedElem.R: r,
        NamedElem.R1: r1,
        NamedElem.MRHO: mrho,
        NamedElem.B1: b1,
        NamedElem.B2: b2,
        NamedElem.M1: m1,
        NamedElem.S1: s1,
        NamedElem.T: t,
        NamedElem.JSWAP: jswap,
    }

class BallService:
    """Service for the ball model, its Siegel embedding and the named group elements"""

    def __init__(self, theta_service: Optional[ThetaService] = None):
        self._theta_service = theta_service

    @property
    def theta_service(self) -> ThetaService:
        """Get or create theta service instance"""
        if self._theta_service is None:
            self._theta_service = create_theta_service()
        return self._theta_service

    # Points of the ball

    def quadratic_form(self, v: BallLike) -> complex:
        """q(v) = v^T U v = 2 v1 v2 + v3^2 + v4^2"""
        v = as_ball_vector(v)
        return complex(v @ U_HERMITIAN @ v)

    def tau_of_v(self, v: BallLike) -> SiegelPoint:
        """
        tau(v) = iU - (2i / q(v)) (Uv)(Uv)^T

        Raises:
            DegeneratePointError: If q(v) = 0
            BallDomainError: If the result leaves Siegel space or fails the normalization checks
        """
        v = as_ball_vector(v)
        q = self.quadratic_form(v)
        if abs(q) <= 1e-14 * float(np.vdot(v, v).real):
            raise DegeneratePointError(f"v^T U v vanishes at v = {v}")
        uv = U_HERMITIAN @ v
        tau = 1j * U_HERMITIAN - (2j / q) * np.outer(uv, uv)
        try:
            tp = SiegelPoint(tau=tau)
        except ValueError as e:
            raise BallDomainError(f"v is not in the ball: {str(e)}") from e

        scale = max(1.0, float(np.max(np.abs(tau))))
        ut = U_HERMITIAN @ tau
        if np.max(np.abs(ut @ ut + np.eye(4))) > 1e-10 * scale * scale:
            raise BallDomainError("(U tau)^2 != -I")
        if abs(np.linalg.det(tau) - 1) > 1e-10 * scale ** 4:
            raise BallDomainError("det tau != 1")
        return tp

    def apply(self, g: Union[UnitaryElem, np.ndarray], v: BallLike) -> np.ndarray:
        """g v in floating point"""
        mat = g.g if isinstance(g, UnitaryElem) else g
        return to_complex_array(mat) @ as_ball_vector(v)

    def theta_ball(self, ch: Characteristic, v: BallLike, acc: Optional[ThetaAccuracy] = None) -> complex:
        """theta_{a,b}(tau(v))"""
        return self.theta_service.theta_constant(ch, self.tau_of_v(v), acc)

    def nu_char(self, j: int) -> Characteristic:
        """
        Characteristic of theta_j, j = 0..11

        Raises:
            BallDomainError: If j is out of range
        """
        if not 0 <= j < len(NU_TABLE):
            raise BallDomainError(f"nu index must be in 0..11, got {j}")
        return Characteristic.parse(*NU_TABLE[j])

    # Group elements

    def builtin(self, name: Union[NamedElem, str]) -> np.ndarray:
        """
        Exact stored matrix of a named element

        Raises:
            BallDomainError: On an unknown name
        """
        try:
            key = NamedElem(name)
        except ValueError as e:
            raise BallDomainError(f"Unknown group element: {name}") from e
        return _named_table()[key].copy()

    def unitary(self, name: Union[NamedElem, str]) -> UnitaryElem:
        return UnitaryElem(g=self.builtin(name))

    def symplectic(self, name: Union[NamedElem, str]) -> SymplecticElem:
        return SymplecticElem(M=self.builtin(name))

    def unitary_inverse(self, g: Union[UnitaryElem, np.ndarray]) -> UnitaryElem:
        """g^{-1} = U g* U"""
        mat = g.g if isinstance(g, UnitaryElem) else g
        u = exact_u()
        return UnitaryElem(g=dprod(u, dconj(mat).T, u))

    def symplectic_inverse(self, m: MatrixLike) -> SymplecticElem:
        """M^{-1} = [[M22^T, -M12^T], [-M21^T, M11^T]]"""
        mat = _as_matrix(m)
        n = mat.shape[0] // 2
        a, b, c, d = mat[:n, :n], mat[:n, n:], mat[n:, :n], mat[n:, n:]
        return SymplecticElem(M=dblock([[d.T, dscale(-1, b.T)], [dscale(-1, c.T), a.T]]))

    def jmath(self, g: Union[UnitaryElem, np.ndarray]) -> SymplecticElem:
        """[[U Re(g) U, U Im(g)], [-Im(g) U, Re(g)]]"""
        mat = g.g if isinstance(g, UnitaryElem) else g
        u = exact_u()
        re, im = dreal(mat), dimag(mat)
        return SymplecticElem(M=dblock([[dprod(u, re, u), dmatmul(u, im)], [dscale(-1, dmatmul(im, u)), re]]))

    def lift12(self, m4: np.ndarray) -> SymplecticElem:
        """Lift a 4x4 symplectic acting on coordinates (1,2) to Sp(8), fixing coordinates (3,4)"""
        a, b, c, d = m4[:2, :2], m4[:2, 2:], m4[2:, :2], m4[2:, 2:]
        o2, i2 = dzeros(2), deye(2)

        def pad(block: np.ndarray, corner: np.ndarray) -> np.ndarray:
            return dblock([[block, dzeros(2)], [dzeros(2), corner]])

        return SymplecticElem(M=dblock([[pad(a, i2), pad(b, o2)], [pad(c, o2), pad(d, i2)]]))

    # Half-turns

    def tu_matrix(self) -> np.ndarray:
        """T_U = [[T1, T2], [U T2, -U T1]], exact integer 8x8"""
        u = exact_u()
        t1, t2 = dmatrix(T1), dmatrix(T2)
        return dblock([[t1, t2], [dmatmul(u, t2), dscale(-1, dmatmul(u, t1))]])

    def intersection_matrix(self) -> np.ndarray:
        q1, q2 = dmatrix(Q1), dmatrix(Q2)
        return dblock([[q1, q2], [dscale(-1, q2), q1]])

    def tu_prime(self) -> np.ndarray:
        """T_U' = U (T2 + i T1): segment integrals (u1..u4) to the period vector"""
        return dmatmul(exact_u(), dmatrix(T2) + dscale(I, dmatrix(T1)))

    def _segment_half_turn(self, j: int) -> np.ndarray:
        """Action of the half-turn exchanging x_j and x_{j+1} on (u1..u4), j = 0..3"""
        g = deye(4)
        p = j - 1  # zero-based row of u_j
        if j != 0:
            g[p, p + 1] = -I
        g[p + 1, p + 1] = I
        if j != 3:
            g[p + 2, p + 1] = DyadicGaussian(1)
        return g

    def half_turn(self, j: int, k: int) -> UnitaryElem:
        """
        g_{j,k} = T_U' g'_{j,k} T_U'^{-1} for 0 <= j < k <= 4, where
        g'_{j,k} = P g'_{j,j+1} P^{-1}, P = g'_{k-1,k} ... g'_{j+1,j+2}

        Raises:
            BallDomainError: If (j, k) is out of range
        """
        if not 0 <= j < k <= 4:
            raise BallDomainError(f"half-turn indices need 0 <= j < k <= 4, got ({j}, {k})")
        p = deye(4)
        for m in range(k - 1, j, -1):
            p = dmatmul(p, self._segment_half_turn(m))
        local = dprod(p, self._segment_half_turn(j), _exact_inverse(p))
        tp = self.tu_prime()
        return UnitaryElem(g=dprod(tp, local, _exact_inverse(tp)))

    def intersection_check(self) -> tuple[DyadicGaussian, int]:
        """
        det T_U and the sign s with T_U Q T_U^T = 2 s J_8

        Raises:
            ConsistencyError: If the transformed intersection form is not +-2 J_8
        """
        tu = self.tu_matrix()
        form = dprod(tu, self.intersection_matrix(), tu.T)
        j8 = exact_j(4)
        for sign in (1, -1):
            if dequal(form, dscale(2 * sign, j8)):
                return ddet(tu), sign
        raise ConsistencyError("T_U does not carry the intersection form to a multiple of J_8")

    # Actions on Siegel space

    def sp_act(self, m: MatrixLike, tp: SiegelPoint) -> SiegelPoint:
        """
        (M11 tau + M12)(M21 tau + M22)^{-1}

        Raises:
            BoundaryError: If M21 tau + M22 is singular
        """
        mat = to_complex_array(_as_matrix(m))
        n = tp.n
        if mat.shape != (2 * n, 2 * n):
            raise BallDomainError(f"matrix of size {mat.shape} cannot act on degree {n}")
        a, b, c, d = mat[:n, :n], mat[:n, n:], mat[n:, :n], mat[n:, n:]
        num = a @ tp.tau + b
        den = c @ tp.tau + d
        if np.linalg.cond(den) > 1e13:
            raise BoundaryError("M21 tau + M22 is singular")
        tau = np.linalg.solve(den.T, num.T).T
        try:
            return SiegelPoint(tau=(tau + tau.T) / 2)
        except ValueError as e:
            raise BallDomainError(f"Failed to act on Siegel point: {str(e)}") from e

    def chi(self, m: MatrixLike, tp: SiegelPoint) -> complex:
        """det(M21 tau + M22)"""
        mat = to_complex_array(_as_matrix(m))
        n = tp.n
        return complex(np.linalg.det(mat[n:, :n] @ tp.tau + mat[n:, n:]))

    def chi_ball(self, g: Union[UnitaryElem, np.ndarray], v: BallLike) -> complex:
        """chi(j(g), tau(v)) = q(gv) / (det g q(v))"""
        mat = to_complex_array(g.g if isinstance(g, UnitaryElem) else g)
        v = as_ball_vector(v)
        return self.quadratic_form(mat @ v) / (np.linalg.det(mat) * self.quadratic_form(v))

    def char_act(self, m: MatrixLike, ch: Characteristic, allow_rational: bool = False) -> Characteristic:
        """
        M.(a,b) = (a,b) M^{-1} + ((M21 M22^T)_0, (M11 M12^T)_0), computed exactly

        Args:
            m: Symplectic matrix
            ch: Characteristic
            allow_rational: Accept non-integral M as long as the image is integral

        Raises:
            BallDomainError: If M (or, with allow_rational, the image) is not integral
        """
        mat = _as_matrix(m)
        n = mat.shape[0] // 2
        if ch.n != n:
            raise BallDomainError(f"characteristic of length {ch.n} for a degree-{n} matrix")
        if not allow_rational and not all(x.is_integral() for x in mat.flat):
            raise BallDomainError("characteristic action needs an integral matrix")
        inv = self.symplectic_inverse(mat).M
        a11, a12, a21, a22 = mat[:n, :n], mat[:n, n:], mat[n:, :n], mat[n:, n:]
        row = dvector(list(ch.a) + list(ch.b))
        image = dmatmul(row, inv)
        shift_a = np.diag(dmatmul(a21, a22.T))
        shift_b = np.diag(dmatmul(a11, a12.T))
        new_a = [image[k] + shift_a[k] for k in range(n)]
        new_b = [image[n + k] + shift_b[k] for k in range(n)]
        try:
            return Characteristic(a=tuple(int(x) for x in new_a), b=tuple(int(x) for x in new_b))
        except DyadicError as e:
            raise BallDomainError(f"characteristic image of {ch} is not integral") from e

    def phi_ab(self, m: MatrixLike, ch: Characteristic) -> DyadicGaussian:
        """
        phi_{a,b}(M) = -1/8 (a M22^T M12 a^T - 2 a M12^T M21 b^T + b M21^T M11 b^T)
                       + 1/4 (a M22^T - b M21^T) (M11 M12^T)_0^T
        """
        mat = _as_matrix(m)
        n = mat.shape[0] // 2
        a11, a12, a21, a22 = mat[:n, :n], mat[:n, n:], mat[n:, :n], mat[n:, n:]
        a, b = dvector(ch.a), dvector(ch.b)

        def form(x: np.ndarray, mid: np.ndarray, y: np.ndarray) -> DyadicGaussian:
            return sum((p * q for p, q in zip(dmatmul(x, mid), y)), DyadicGaussian(0))

        quad = form(a, dmatmul(a22.T, a12), a) - 2 * form(a, dmatmul(a12.T, a21), b) + form(b, dmatmul(a21.T, a11), b)
        diag = np.diag(dmatmul(a11, a12.T))
        lin_vec = dmatmul(a, a22.T) - dmatmul(b, a21.T)
        lin = sum((p * q for p, q in zip(lin_vec, diag)), DyadicGaussian(0))
        return -quad * DyadicGaussian(1, 0, 3) + lin * DyadicGaussian(1, 0, 2)

    # Square-root branches

    def continued_sqrt(
        self,
        f: Callable[[np.ndarray], complex],
        v: BallLike,
        anchor: Optional[complex] = None,
        steps: int = 64,
    ) -> complex:
        """
        Continue sqrt(f) from the anchor v0 = (1,-1,0,0) to v along a straight path

        The path lies in the chart (v1 - v2)/sqrt(2) = 1, where the ball is convex.
        The anchor defaults to the principal root of f(v0).

        Raises:
            BranchContinuationError: If the anchor is not a root of f(v0) or the path degenerates
        """
        v = as_ball_vector(v)
        start = V0 / math.sqrt(2.0)
        denom = (v[0] - v[1]) / math.sqrt(2.0)
        if abs(denom) < 1e-300:
            raise BranchContinuationError("v1 = v2: point outside the ball chart")
        target = v / denom

        value0 = f(start)
        s = cmath.sqrt(value0) if anchor is None else complex(anchor)
        if abs(s * s - value0) > 1e-9 * max(1.0, abs(value0)):
            raise BranchContinuationError(f"anchor {anchor} is not a square root of {value0}")

        t_prev, dt = 0.0, 1.0 / steps
        while t_prev < 1.0:
            t = min(1.0, t_prev + dt)
            r = cmath.sqrt(f((1 - t) * start + t * target))
            cand = r if abs(r - s) <= abs(r + s) else -r
            if abs(cand - s) > 0.25 * abs(s) and dt > 1e-9:
                dt /= 2
                continue
            if abs(cand) < 1e-300:
                raise BranchContinuationError("square root passes through zero along the path")
            s, t_prev = cand, t
            dt = min(2 * dt, 1.0 / steps)
        return s

    def sqrt_chi_ball(self, g: Union[UnitaryElem, np.ndarray], v: BallLike, anchor: Optional[complex] = None) -> complex:
        """chi(j(g), tau(v))^{1/2}, continued from its value at tau = iI"""
        mat = to_complex_array(g.g if isinstance(g, UnitaryElem) else g)
        det = np.linalg.det(mat)

        def chi(w: np.ndarray) -> complex:
            return self.quadratic_form(mat @ w) / (det * self.quadratic_form(w))

        return self.continued_sqrt(chi, v, anchor)

def create_ball_service() -> BallService:
    """
    Factory function to create a ball service instance

    Returns:
        BallService: Configured ball service instance
    """
    return BallService()
