"""Exact linear-extension counting, Stanley equality deciders and their gadgets."""
from .counting import CountInstance, count, count_fixed, count_pinned, rho, stanley_defect
from .errors import LinextError
from .poset import Poset, antichain, chain

__all__ = [
    "CountInstance", "LinextError", "Poset", "antichain", "chain", "count",
    "count_fixed", "count_pinned", "rho", "stanley_defect",
]
__version__ = "0.1.0"
