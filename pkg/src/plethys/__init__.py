"""Integer-valued polynomial plethory toolkit."""

from .errors import (
    BudgetError,
    BudgetExceeded,
    DegreeExceeded,
    DomainError,
    NotIntegerValued,
    NotWpc,
    PlethysError,
    PrecisionInsufficient,
    SchemaError,
)
from .exact import Lattice, ModInt, MultiRatPoly, RatPoly
from .ivpoly import IvPoly, compose, from_rational_poly, to_rational_poly
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetError",
    "BudgetExceeded",
    "DegreeExceeded",
    "DomainError",
    "IvPoly",
    "Lattice",
    "ModInt",
    "MultiRatPoly",
    "NotIntegerValued",
    "NotWpc",
    "PlethysError",
    "PrecisionInsufficient",
    "RatPoly",
    "SchemaError",
    "compose",
    "from_rational_poly",
    "to_rational_poly",
]
