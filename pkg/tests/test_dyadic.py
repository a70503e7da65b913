"""
Tests for exact dyadic Gaussian arithmetic and the matrix helpers
"""
from fractions import Fraction

import numpy as np
import pytest

from app.models.dyadic import (
    DyadicError,
    DyadicGaussian,
    ddet,
    dequal,
    deye,
    dinv,
    dmatmul,
    dmatrix,
    from_complex_array,
    is_integral,
    to_complex_array,
)

def test_canonical_form():
    assert DyadicGaussian(2, 4, 1) == DyadicGaussian(1, 2, 0)
    assert DyadicGaussian(0, 0, 5).exp == 0
    assert DyadicGaussian(1, 0, -2) == DyadicGaussian(4)

def test_arithmetic_matches_complex():
    x = DyadicGaussian(1, 1, 1)  # (1+i)/2
    y = DyadicGaussian(3, -1, 2)
    for got, want in [
        (x + y, complex(x) + complex(y)),
        (x - y, complex(x) - complex(y)),
        (x * y, complex(x) * complex(y)),
        (x ** 3, complex(x) ** 3),
        (x.conjugate(), complex(x).conjugate()),
    ]:
        assert complex(got) == pytest.approx(want, abs=1e-15)

def test_exact_division():
    h = DyadicGaussian(1, 1, 1)
    assert h / h == DyadicGaussian(1)
    assert DyadicGaussian(1) / DyadicGaussian(1, 1) == DyadicGaussian(1, -1, 1)
    with pytest.raises(DyadicError):
        DyadicGaussian(1) / 3
    with pytest.raises(ZeroDivisionError):
        DyadicGaussian(1) / 0

def test_from_complex_and_coerce():
    assert DyadicGaussian.from_complex(0.375 - 0.5j) == DyadicGaussian(3, -4, 3)
    assert DyadicGaussian.coerce(Fraction(5, 8)) == DyadicGaussian(5, 0, 3)
    with pytest.raises(DyadicError):
        DyadicGaussian.coerce(Fraction(1, 3))
    with pytest.raises(DyadicError):
        DyadicGaussian.from_complex(1 / 3, max_exponent=10)

def test_integer_conversion():
    assert int(DyadicGaussian(6, 0, 1)) == 3
    with pytest.raises(DyadicError):
        int(DyadicGaussian(1, 0, 1))

def test_inverse_and_determinant():
    a = dmatrix([[1, 1j, 0], [0, 1, 0.5], [0, 0, 1 + 1j]])
    inv = dinv(a)
    assert dequal(dmatmul(a, inv), deye(3))
    assert ddet(a) == DyadicGaussian(1, 1)
    np.testing.assert_allclose(to_complex_array(inv), np.linalg.inv(to_complex_array(a)), atol=1e-15)

def test_inverse_needs_unit_pivot():
    with pytest.raises(DyadicError):
        dinv(dmatrix([[3, 0], [0, 1]]))

def test_round_trip_helpers():
    a = np.array([[0.5, -1j], [2 + 0.25j, 1]])
    exact = from_complex_array(a)
    np.testing.assert_array_equal(to_complex_array(exact), a)
    assert not is_integral(exact)
    assert is_integral(deye(4))
