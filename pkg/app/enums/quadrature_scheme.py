"""
Quadrature schemes
"""
from enum import Enum

class QuadratureScheme(str, Enum):
    """Rules for integrands with algebraic endpoint singularities"""
    GAUSS_JACOBI = "gauss-jacobi"
    TANH_SINH = "tanh-sinh"
