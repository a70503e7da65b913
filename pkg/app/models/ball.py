"""
Complex ball and automorphism group models
"""
import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from app.models.dyadic import DyadicGaussian, dconj, deye, dequal, dmatmul, dmatrix, dzeros

U_HERMITIAN = np.array(
    [[0, 1, 0, 0],
     [1, 0, 0, 0],
     [0, 0, 1, 0],
     [0, 0, 0, 1]],
    dtype=complex,
)

def exact_u() -> np.ndarray:
    return dmatrix(U_HERMITIAN.real.astype(int).tolist())

def exact_j(n: int) -> np.ndarray:
    """J_{2n} = [[O, I], [-I, O]]"""
    j = dzeros(2 * n)
    for k in range(n):
        j[k, n + k] = DyadicGaussian(1)
        j[n + k, k] = DyadicGaussian(-1)
    return j

def hermitian_form(v: np.ndarray) -> float:
    """v* U v = 2 Re(conj(v1) v2) + |v3|^2 + |v4|^2"""
    v = np.asarray(v, dtype=complex)
    return float(np.real(np.conj(v) @ U_HERMITIAN @ v))

def is_unitary(g: np.ndarray) -> bool:
    """Exact test of g* U g = U for a 4x4 dyadic Gaussian matrix"""
    u = exact_u()
    return g.shape == (4, 4) and dequal(dmatmul(dmatmul(dconj(g).T, u), g), u)

def is_symplectic(m: np.ndarray) -> bool:
    """Exact test of M J M^T = J with M real"""
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
        return False
    if not all(x.is_real() for x in m.flat):
        return False
    j = exact_j(m.shape[0] // 2)
    return dequal(dmatmul(dmatmul(m, j), m.T), j)

class BallPoint(BaseModel):
    """Complex 4-vector v with v* U v < 0, taken up to scalar multiples"""
    v: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @field_validator("v", mode="before")
    @classmethod
    def validate_v(cls, value) -> np.ndarray:
        """Nonzero 4-vector inside the ball"""
        v = np.asarray(value, dtype=complex).reshape(-1)
        if v.shape != (4,):
            raise ValueError(f"ball points have 4 coordinates, got {v.shape[0]}")
        if not np.all(np.isfinite(v)) or not np.any(v):
            raise ValueError("ball point must be finite and nonzero")
        form = hermitian_form(v)
        if form >= 0:
            raise ValueError(f"v*Uv = {form:.3e} is not negative; v is not in the ball")
        return v

    @property
    def form(self) -> float:
        return hermitian_form(self.v)

class UnitaryElem(BaseModel):
    """Exact 4x4 matrix g with g* U g = U"""
    g: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @field_validator("g", mode="before")
    @classmethod
    def validate_g(cls, value) -> np.ndarray:
        g = value if isinstance(value, np.ndarray) and value.dtype == object else dmatrix(np.asarray(value).tolist())
        if g.shape != (4, 4):
            raise ValueError(f"unitary elements are 4x4, got {g.shape}")
        if not is_unitary(g):
            raise ValueError("g* U g != U")
        return g

class SymplecticElem(BaseModel):
    """Exact 2n x 2n matrix M with M J M^T = J"""
    M: np.ndarray

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @field_validator("M", mode="before")
    @classmethod
    def validate_m(cls, value) -> np.ndarray:
        m = value if isinstance(value, np.ndarray) and value.dtype == object else dmatrix(np.asarray(value).tolist())
        if m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError(f"symplectic elements are square of even size, got {m.shape}")
        if not all(x.is_real() for x in m.flat):
            raise ValueError("symplectic elements must be real")
        j = exact_j(m.shape[0] // 2)
        if not dequal(dmatmul(dmatmul(m, j), m.T), j):
            raise ValueError("M J M^T != J")
        return m

    @property
    def n(self) -> int:
        return self.M.shape[0] // 2

    def blocks(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        n = self.n
        return self.M[:n, :n], self.M[:n, n:], self.M[n:, :n], self.M[n:, n:]

    def complex_blocks(self) -> tuple[np.ndarray, ...]:
        return tuple(np.vectorize(complex, otypes=[complex])(b) for b in self.blocks())

    @classmethod
    def identity(cls, n: int) -> "SymplecticElem":
        return cls(M=deye(2 * n))
