"""Dyadic-grid laboratory for level-set decay of singular and maximal operators."""
from .dyadic import ROOT, Cube, DyadicIndex, GridFunction, CellSet
from .errors import (CZLabError, ConfigError, DomainError, InsufficientDataError,
                     InvalidCubeError, ShapeError)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["ROOT", "Cube", "DyadicIndex", "GridFunction", "CellSet", "CZLabError",
           "ConfigError", "DomainError", "InsufficientDataError", "InvalidCubeError",
           "ShapeError", "BACKEND", "__version__"]
