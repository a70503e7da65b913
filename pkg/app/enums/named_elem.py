"""
Named unitary and symplectic elements
"""
from enum import Enum

class NamedElem(str, Enum):
    """Explicit group elements with exact dyadic Gaussian entries"""
    G01 = "g01"
    G12 = "g12"
    G13 = "g13"
    G23 = "g23"
    N = "N"
    R = "R"
    R1 = "R1"
    MRHO = "Mrho"
    B1 = "B1"
    B2 = "B2"
    M1 = "M1"
    S1 = "S1"
    T = "T"
    JSWAP = "Jswap"

    @property
    def is_unitary(self) -> bool:
        """4x4 unitary for U (as opposed to a symplectic or 2x2 matrix)"""
        return self in (NamedElem.G01, NamedElem.G12, NamedElem.G13, NamedElem.G23, NamedElem.R, NamedElem.R1)
