"""
The core subpackage of coblockfit.
"""

from .exceptions import (
    DomainError,
    DimensionError,
    InfeasibleCountsError,
    SizeLimitError,
    NumericalError,
    UnsupportedKernelError,
    ConfigError,
    SchemaError,
)
from .params import ClassCounts, CoBlockParams, as_proportions
from .quadrature import (
    integrate_1d,
    integrate_2d,
    gauss_legendre_cells,
    cumulate_cells,
)

__all__ = [
    "DomainError",
    "DimensionError",
    "InfeasibleCountsError",
    "SizeLimitError",
    "NumericalError",
    "UnsupportedKernelError",
    "ConfigError",
    "SchemaError",
    "ClassCounts",
    "CoBlockParams",
    "as_proportions",
    "integrate_1d",
    "integrate_2d",
    "gauss_legendre_cells",
    "cumulate_cells",
]
