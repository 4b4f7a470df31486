"""
Module with the piecewise-constant kernels.

A stochastic co-blockmodel phi = (mu, nu, theta) induces the kernel

    omega_phi(x, y) = theta[F_mu^{-1}(x), F_nu^{-1}(y)],

where F^{-1} is the left-continuous inverse of the class distribution
function; row class a occupies the interval (F_mu(a - 1), F_mu(a)].
All integrals of a piecewise-constant kernel are finite sums, so the
quadrature defaults of the base class are never used.
"""

from __future__ import annotations

import numpy as np

from dataclasses import dataclass
from numpy.typing import ArrayLike
from scipy.special import xlogy
from typing import Tuple

from .kernel_abc import KernelABC
from ..core.params import CoBlockParams
from ..global_settings import ARRAY_FLOAT, ARRAY_INT

__all__ = ["PiecewiseConstantKernel", "BlockKernel", "class_edges"]


class PiecewiseConstantKernel(KernelABC):
    """A base class for kernels constant on the cells of a product grid.

    Notes
    -----
    - Concrete classes provide ``row_edges``, ``col_edges`` (sorted, from
      0 to 1) and the matrix ``values`` with one entry per cell.
    """

    row_edges: ARRAY_FLOAT
    col_edges: ARRAY_FLOAT
    values: ARRAY_FLOAT

    @property
    def supports_four_case(self) -> bool:
        # Only a constant kernel is monotone separable
        values = np.asarray(self.values)
        return bool(np.all(values == values.flat[0]))

    def breakpoints(self) -> Tuple[ARRAY_FLOAT, ARRAY_FLOAT]:
        return np.asarray(self.row_edges), np.asarray(self.col_edges)

    def cumulative_mass(self, xs: ArrayLike, ys: ArrayLike) -> ARRAY_FLOAT:
        xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
        ys = np.atleast_1d(np.asarray(ys, dtype=np.float64))
        row_overlap = _overlap_lengths(xs, np.asarray(self.row_edges))
        col_overlap = _overlap_lengths(ys, np.asarray(self.col_edges))

        return row_overlap @ np.asarray(self.values) @ col_overlap.T

    def total_mass(self) -> float:
        return float(self._row_widths @ self.values @ self._col_widths)

    def square_mass(self) -> float:
        values = np.asarray(self.values)
        return float(self._row_widths @ values**2 @ self._col_widths)

    def neg_entropy(self) -> float:
        values = np.asarray(self.values)
        entropy = xlogy(values, values) + xlogy(1 - values, 1 - values)

        return float(self._row_widths @ entropy @ self._col_widths)

    @property
    def _row_widths(self) -> ARRAY_FLOAT:
        return np.diff(np.asarray(self.row_edges))

    @property
    def _col_widths(self) -> ARRAY_FLOAT:
        return np.diff(np.asarray(self.col_edges))


@dataclass(frozen=True, eq=False)
class BlockKernel(PiecewiseConstantKernel):
    """The kernel induced by a stochastic co-blockmodel.

    Parameters
    ----------
    phi : CoBlockParams
        The co-blockmodel parameters (mu, nu, theta).
    """

    _description = "Stochastic co-blockmodel kernel"

    phi: CoBlockParams

    def __post_init__(self) -> None:
        object.__setattr__(self, "row_edges", class_edges(self.phi.mu))
        object.__setattr__(self, "col_edges", class_edges(self.phi.nu))
        object.__setattr__(self, "values", np.asarray(self.phi.theta))

    def evaluate(self, xx: ARRAY_FLOAT, yy: ARRAY_FLOAT) -> ARRAY_FLOAT:
        rows = _inverse_cdf(np.asarray(self.row_edges), xx)
        cols = _inverse_cdf(np.asarray(self.col_edges), yy)

        return np.asarray(self.values)[rows, cols]

    def __str__(self) -> str:
        return f"Kernel : {self.description}\n{self.phi}"


def class_edges(counts) -> ARRAY_FLOAT:
    """Interval boundaries 0 = F(0) <= F(1) <= ... <= F(K) = 1."""
    edges = np.concatenate(([0.0], np.cumsum(counts.proportions)))
    edges[-1] = 1.0

    return edges


def _inverse_cdf(edges: ARRAY_FLOAT, xx: ARRAY_FLOAT) -> ARRAY_INT:
    """The 0-based left-continuous inverse min{a : F(a + 1) >= x}."""
    classes = np.searchsorted(edges[1:], xx, side="left")

    return np.minimum(classes, len(edges) - 2)


def _overlap_lengths(points: ARRAY_FLOAT, edges: ARRAY_FLOAT) -> ARRAY_FLOAT:
    """The lengths of [0, x] intersected with each cell, one row per x."""
    lower = edges[np.newaxis, :-1]
    widths = np.diff(edges)[np.newaxis, :]

    return np.clip(points[:, np.newaxis] - lower, 0.0, widths)
