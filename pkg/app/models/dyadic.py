"""
Exact dyadic Gaussian rationals (Z[i][1/2]) and small matrix helpers over them

Every named group element (half-turns, R, R1, N, S1, ...) has entries of the
form (p + qi)/2^k, so group relations can be checked with zero residual.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

Scalar = Union["DyadicGaussian", int, float, complex, Fraction]

class DyadicError(ArithmeticError):
    """Custom exception for inexact dyadic arithmetic"""
    pass

def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0

class DyadicGaussian:
    """Value (re + i*im) / 2**exp with integer re, im and exp >= 0 in canonical form"""

    __slots__ = ("re", "im", "exp")

    def __init__(self, re: int = 0, im: int = 0, exp: int = 0):
        if exp < 0:
            re <<= -exp
            im <<= -exp
            exp = 0
        while exp > 0 and re % 2 == 0 and im % 2 == 0:
            re //= 2
            im //= 2
            exp -= 1
        if re == 0 and im == 0:
            exp = 0
        self.re = re
        self.im = im
        self.exp = exp

    @classmethod
    def from_complex(cls, z: complex, max_exponent: int = 24, tol: float = 1e-9) -> "DyadicGaussian":
        """
        Round a float to the dyadic Gaussian with the smallest denominator within tol

        Raises:
            DyadicError: If no denominator up to 2**max_exponent fits
        """
        z = complex(z)
        for k in range(max_exponent + 1):
            scale = 2 ** k
            re = round(z.real * scale)
            im = round(z.imag * scale)
            if abs(re / scale - z.real) <= tol and abs(im / scale - z.imag) <= tol:
                return cls(re, im, k)
        raise DyadicError(f"{z!r} is not dyadic within {tol} up to 2^{max_exponent}")

    @classmethod
    def coerce(cls, x: Scalar) -> "DyadicGaussian":
        if isinstance(x, DyadicGaussian):
            return x
        if isinstance(x, (bool, int, np.integer)):
            return cls(int(x), 0, 0)
        if isinstance(x, Fraction):
            den = x.denominator
            if not _is_power_of_two(den):
                raise DyadicError(f"{x} has a non-dyadic denominator")
            return cls(x.numerator, 0, den.bit_length() - 1)
        return cls.from_complex(complex(x), tol=0.0)

    # Arithmetic

    def _aligned(self, other: "DyadicGaussian") -> tuple[int, int, int, int, int]:
        e = max(self.exp, other.exp)
        s = e - self.exp
        t = e - other.exp
        return self.re << s, self.im << s, other.re << t, other.im << t, e

    def __add__(self, other: Scalar) -> "DyadicGaussian":
        try:
            other = DyadicGaussian.coerce(other)
        except (DyadicError, TypeError):
            return NotImplemented
        a, b, c, d, e = self._aligned(other)
        return DyadicGaussian(a + c, b + d, e)

    __radd__ = __add__

    def __neg__(self) -> "DyadicGaussian":
        return DyadicGaussian(-self.re, -self.im, self.exp)

    def __sub__(self, other: Scalar) -> "DyadicGaussian":
        return self + (-DyadicGaussian.coerce(other))

    def __rsub__(self, other: Scalar) -> "DyadicGaussian":
        return DyadicGaussian.coerce(other) - self

    def __mul__(self, other: Scalar) -> "DyadicGaussian":
        try:
            other = DyadicGaussian.coerce(other)
        except (DyadicError, TypeError):
            return NotImplemented
        return DyadicGaussian(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
            self.exp + other.exp,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """|x|^2 as an exact rational"""
        return Fraction(self.re * self.re + self.im * self.im, 4 ** self.exp)

    def is_unit(self) -> bool:
        """Invertible in Z[i][1/2], i.e. the Gaussian norm is a power of two"""
        return _is_power_of_two(self.re * self.re + self.im * self.im)

    def __truediv__(self, other: Scalar) -> "DyadicGaussian":
        other = DyadicGaussian.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero dyadic")
        n = other.re * other.re + other.im * other.im
        odd = n
        shift = 0
        while odd % 2 == 0:
            odd //= 2
            shift += 1
        re = self.re * other.re + self.im * other.im
        im = self.im * other.re - self.re * other.im
        if re % odd or im % odd:
            raise DyadicError(f"{self} / {other} is not a dyadic Gaussian")
        # x/y = X conj(Y) 2^{b} / (2^{a} 2^{shift} odd)
        return DyadicGaussian(re // odd, im // odd, self.exp + shift - other.exp)

    def __rtruediv__(self, other: Scalar) -> "DyadicGaussian":
        return DyadicGaussian.coerce(other) / self

    def __pow__(self, n: int) -> "DyadicGaussian":
        if n < 0:
            return DyadicGaussian(1) / (self ** (-n))
        result = DyadicGaussian(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "DyadicGaussian":
        return DyadicGaussian(self.re, -self.im, self.exp)

    @property
    def real(self) -> "DyadicGaussian":
        return DyadicGaussian(self.re, 0, self.exp)

    @property
    def imag(self) -> "DyadicGaussian":
        return DyadicGaussian(self.im, 0, self.exp)

    # Predicates and conversions

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def is_integral(self) -> bool:
        return self.exp == 0

    def to_fraction(self) -> Fraction:
        if self.im:
            raise DyadicError(f"{self} is not real")
        return Fraction(self.re, 2 ** self.exp)

    def __int__(self) -> int:
        if not (self.is_real() and self.is_integral()):
            raise DyadicError(f"{self} is not a rational integer")
        return self.re

    def __float__(self) -> float:
        return float(self.to_fraction())

    def __complex__(self) -> complex:
        scale = 2.0 ** self.exp
        return complex(self.re / scale, self.im / scale)

    def __eq__(self, other: object) -> bool:
        try:
            other = DyadicGaussian.coerce(other)  # type: ignore[arg-type]
        except (DyadicError, TypeError, ValueError):
            return NotImplemented
        return (self.re, self.im, self.exp) == (other.re, other.im, other.exp)

    def __hash__(self) -> int:
        return hash((self.re, self.im, self.exp))

    def __repr__(self) -> str:
        if self.im == 0:
            body = f"{self.re}"
        else:
            body = f"{self.re}{self.im:+d}i"
        return body if self.exp == 0 else f"({body})/{2 ** self.exp}"

ZERO = DyadicGaussian(0)
ONE = DyadicGaussian(1)
I = DyadicGaussian(0, 1)

# Matrix helpers: numpy object arrays of DyadicGaussian

def dmatrix(rows: Iterable[Iterable[Scalar]]) -> np.ndarray:
    """Build an exact matrix from nested rows of ints, dyadic floats/complexes or DyadicGaussian"""
    data = [[DyadicGaussian.coerce(x) for x in row] for row in rows]
    out = np.empty((len(data), len(data[0])), dtype=object)
    for i, row in enumerate(data):
        for j, x in enumerate(row):
            out[i, j] = x
    return out

def dvector(entries: Iterable[Scalar]) -> np.ndarray:
    data = [DyadicGaussian.coerce(x) for x in entries]
    out = np.empty(len(data), dtype=object)
    for i, x in enumerate(data):
        out[i] = x
    return out

def deye(n: int) -> np.ndarray:
    return dmatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

def dzeros(n: int, m: int | None = None) -> np.ndarray:
    m = n if m is None else m
    return dmatrix([[0] * m for _ in range(n)])

def dblock(blocks: Sequence[Sequence[np.ndarray]]) -> np.ndarray:
    return np.block([[np.asarray(b, dtype=object) for b in row] for row in blocks])

def ddiag(entries: Iterable[Scalar]) -> np.ndarray:
    entries = list(entries)
    out = dzeros(len(entries))
    for k, x in enumerate(entries):
        out[k, k] = DyadicGaussian.coerce(x)
    return out

def dmatmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.shape[-1] != b.shape[0]:
        raise ValueError("Dimension mismatch")
    if b.ndim == 1:
        return dvector([sum((a[i, k] * b[k] for k in range(a.shape[1])), ZERO) for i in range(a.shape[0])])
    if a.ndim == 1:
        return dvector([sum((a[k] * b[k, j] for k in range(a.shape[0])), ZERO) for j in range(b.shape[1])])
    return dmatrix([
        [sum((a[i, k] * b[k, j] for k in range(a.shape[1])), ZERO) for j in range(b.shape[1])]
        for i in range(a.shape[0])
    ])

def dprod(*mats: np.ndarray) -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        out = dmatmul(out, m)
    return out

def dconj(a: np.ndarray) -> np.ndarray:
    return np.vectorize(lambda x: x.conjugate(), otypes=[object])(a)

def dreal(a: np.ndarray) -> np.ndarray:
    return np.vectorize(lambda x: x.real, otypes=[object])(a)

def dimag(a: np.ndarray) -> np.ndarray:
    return np.vectorize(lambda x: x.imag, otypes=[object])(a)

def dscale(c: Scalar, a: np.ndarray) -> np.ndarray:
    c = DyadicGaussian.coerce(c)
    return np.vectorize(lambda x: c * x, otypes=[object])(a)

def dinv(a: np.ndarray) -> np.ndarray:
    """
    Exact inverse by Gauss-Jordan elimination over Z[i][1/2]

    Raises:
        DyadicError: If the matrix is not invertible over the dyadic Gaussian ring
    """
    n = a.shape[0]
    work = np.concatenate([np.array(a, dtype=object), deye(n)], axis=1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if not work[r, col].is_zero() and work[r, col].is_unit()), None)
        if pivot is None:
            raise DyadicError(f"no unit pivot in column {col}")
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
        inv_p = ONE / work[col, col]
        work[col] = np.array([inv_p * x for x in work[col]], dtype=object)
        for r in range(n):
            if r != col and not work[r, col].is_zero():
                f = work[r, col]
                work[r] = np.array([x - f * y for x, y in zip(work[r], work[col])], dtype=object)
    return work[:, n:].copy()

def ddet(a: np.ndarray) -> DyadicGaussian:
    """Exact determinant by cofactor expansion (sizes up to 8)"""
    n = a.shape[0]
    if n == 1:
        return a[0, 0]
    if n == 2:
        return a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    total = ZERO
    for j in range(n):
        if a[0, j].is_zero():
            continue
        minor = np.delete(np.delete(a, 0, axis=0), j, axis=1)
        term = a[0, j] * ddet(minor)
        total = total + term if j % 2 == 0 else total - term
    return total

def dequal(a: np.ndarray, b: np.ndarray) -> bool:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    return a.shape == b.shape and all(DyadicGaussian.coerce(x) == DyadicGaussian.coerce(y) for x, y in zip(a.flat, b.flat))

def is_integral(a: np.ndarray) -> bool:
    return all(DyadicGaussian.coerce(x).is_integral() for x in np.asarray(a, dtype=object).flat)

def to_complex_array(a: np.ndarray) -> np.ndarray:
    return np.vectorize(complex, otypes=[complex])(np.asarray(a, dtype=object))

def from_complex_array(a: np.ndarray, max_exponent: int = 24, tol: float = 1e-9) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    return np.vectorize(lambda z: DyadicGaussian.from_complex(z, max_exponent, tol), otypes=[object])(a)

def to_fraction_array(a: np.ndarray) -> np.ndarray:
    return np.vectorize(lambda x: DyadicGaussian.coerce(x).to_fraction(), otypes=[object])(np.asarray(a, dtype=object))
