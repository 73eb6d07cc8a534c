"""Zeta functions of smooth complete intersections over finite fields.

Mod-p Koszul cohomology (h_e), point counting, Newton versus Hodge
polygons, exponential sums and a truncated Dwork Frobenius for q = p.
"""
__version__ = "0.1.0"

from .field_tower import FieldCtx, make_field
from .polyforms import VarietySpec

__all__ = ["FieldCtx", "VarietySpec", "make_field", "__version__"]
