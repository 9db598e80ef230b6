"""Exact enumerative computations for lines, conics and multiple covers on
hypersurfaces of projective space."""

from .exactpoly import BiForm, MPoly, NumberField, UniPoly, rat, rat_str
from .grassmann import SymClass, integrate, line_count

__all__ = ["BiForm", "MPoly", "NumberField", "UniPoly", "SymClass", "integrate",
           "line_count", "rat", "rat_str"]
__version__ = "0.1.0"
