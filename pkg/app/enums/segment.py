"""
Real segments between consecutive branch points of w^4 = z(z-x1)(z-x2)(z-x3)(z-1)
"""
import math
from enum import IntEnum

class SegmentId(IntEnum):
    """Segments L1..L6 of the real line cut at 0 < x1 < x2 < x3 < 1"""
    L1 = 1
    L2 = 2
    L3 = 3
    L4 = 4
    L5 = 5
    L6 = 6

    @property
    def phase_eighths(self) -> int:
        """arg(w) on the segment in units of pi/4"""
        return {1: 5, 2: 4, 3: 3, 4: 2, 5: 1, 6: 0}[int(self)]

    @property
    def arg(self) -> float:
        return self.phase_eighths * math.pi / 4

    @property
    def bounds(self) -> tuple[int, int]:
        """Indices into (-inf, 0, x1, x2, x3, 1, +inf) of the segment ends"""
        return int(self) - 1, int(self)

    @property
    def is_improper(self) -> bool:
        return self in (SegmentId.L1, SegmentId.L6)
