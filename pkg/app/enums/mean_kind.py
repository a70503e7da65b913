"""
Mean iteration kinds
"""
from enum import Enum

class MeanKind(str, Enum):
    """Coupled mean iterations with a common limit"""
    GAUSS2 = "gauss"
    BORCHARDT4 = "borchardt"
    BORWEIN_CUBIC2 = "borwein-cubic"
    BORWEIN_QUARTIC2 = "borwein-quartic"
    KATO_MATSUMOTO4 = "km"

    @property
    def arity(self) -> int:
        """Number of coupled terms"""
        if self in (MeanKind.BORCHARDT4, MeanKind.KATO_MATSUMOTO4):
            return 4
        return 2
