"""
Module with kernels tabulated on an equal-measure grid.

Cell (k, l) of an R-by-C grid kernel covers [k/R, (k+1)/R) x [l/C, (l+1)/C);
the last cell of each side is closed at 1.
"""

from __future__ import annotations

import numpy as np

from dataclasses import dataclass
from numpy.typing import ArrayLike

from .block import PiecewiseConstantKernel
from ..core.exceptions import DimensionError, DomainError
from ..global_settings import ARRAY_FLOAT, ARRAY_INT

__all__ = ["GridKernel", "constant_kernel"]


@dataclass(frozen=True, eq=False)
class GridKernel(PiecewiseConstantKernel):
    """A piecewise-constant kernel on an equal-measure grid.

    Parameters
    ----------
    values : ArrayLike
        An R-by-C matrix of probabilities in [0, 1].
    """

    _description = "Grid kernel"

    values: ArrayLike

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 2 or values.size == 0:
            raise DimensionError(
                f"Grid values must be a non-empty matrix! "
                f"Got shape {values.shape}."
            )
        if not np.all(np.logical_and(values >= 0.0, values <= 1.0)):
            raise DomainError("Grid values must be probabilities in [0, 1]!")
        values.setflags(write=False)
        num_rows, num_cols = values.shape

        # Because frozen=True, post init must access self via setattr
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "row_edges", np.linspace(0, 1, num_rows + 1))
        object.__setattr__(self, "col_edges", np.linspace(0, 1, num_cols + 1))

    def evaluate(self, xx: ARRAY_FLOAT, yy: ARRAY_FLOAT) -> ARRAY_FLOAT:
        values = np.asarray(self.values)
        rows = _cell_index(xx, values.shape[0])
        cols = _cell_index(yy, values.shape[1])

        return values[rows, cols]

    def __str__(self) -> str:
        num_rows, num_cols = np.asarray(self.values).shape
        return f"Kernel : {self.description} ({num_rows}-by-{num_cols})"


def constant_kernel(value: float) -> GridKernel:
    """Create the constant kernel omega = value."""
    return GridKernel(np.full((1, 1), float(value)))


def _cell_index(xx: ARRAY_FLOAT, num_cells: int) -> ARRAY_INT:
    index = np.floor(np.asarray(xx) * num_cells).astype(np.int64)

    return np.minimum(index, num_cells - 1)
