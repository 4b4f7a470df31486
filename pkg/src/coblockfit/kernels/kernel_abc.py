"""
This module provides the abstract base class for bipartite kernels.

A kernel is a measurable function omega: [0, 1]^2 -> [0, 1]; omega(x, y) is
the probability that a row node with latent position x and a column node
with latent position y are connected. Besides pointwise evaluation, the base
class offers the integrals every estimator and risk functional needs:
cumulative masses on rectilinear grids, rectangle masses, the integral of
omega squared, and the negative binary entropy. Concrete kernels override
them whenever a closed form is available.
"""

import abc

import numpy as np

from numpy.typing import ArrayLike
from scipy.special import xlogy
from typing import Tuple, Type

from ..core.exceptions import DomainError
from ..core.quadrature import (
    cumulate_cells,
    gauss_legendre_cells,
    integrate_2d,
)
from ..global_settings import ARRAY_FLOAT

__all__ = ["KernelABC"]

CLASS_HIDDEN_ATTRIBUTES = ["_description"]

# Above this number of cells, cumulative tables use composite quadrature
ADAPTIVE_CELL_LIMIT = 64


class classproperty(property):  # type: ignore
    """Decorator w/ descriptor to get and set class-level attributes."""

    def __get__(self, owner_self, owner_cls):  # type: ignore
        return self.fget(owner_cls)  # type: ignore

    def __set__(self, owner_self, owner_cls):  # pragma: no cover
        raise AttributeError("can't set attribute")


class KernelABC(abc.ABC):
    """An abstract class for bipartite kernels on the unit square.

    Notes
    -----
    - Concrete kernels must define the class attribute ``_description``
      and implement the vectorized ``evaluate()`` method.
    - Kernels are immutable once created.
    """

    def __init_subclass__(cls, **kwargs):
        """Verify if concrete kernels have the required hidden attributes."""
        super().__init_subclass__(**kwargs)
        _init_subclass(cls)

    @classproperty
    def description(cls) -> str:
        """Short description of the kernel family."""
        return cls._description  # type: ignore

    @property
    def supports_four_case(self) -> bool:
        """True if the kernel admits the closed-form interval partitions."""
        return False

    def __call__(self, xx: ArrayLike, yy: ArrayLike) -> ARRAY_FLOAT:
        """Evaluate the kernel with a domain check; inputs broadcast."""
        xx = np.asarray(xx, dtype=np.float64)
        yy = np.asarray(yy, dtype=np.float64)
        _verify_unit_domain(xx)
        _verify_unit_domain(yy)

        return self.evaluate(xx, yy)

    @abc.abstractmethod
    def evaluate(self, xx: ARRAY_FLOAT, yy: ARRAY_FLOAT) -> ARRAY_FLOAT:
        """Evaluate the kernel on broadcastable arrays in [0, 1]."""
        pass

    def breakpoints(self) -> Tuple[ARRAY_FLOAT, ARRAY_FLOAT]:
        """Points (including 0 and 1) where the kernel may be non-smooth."""
        return np.array([0.0, 1.0]), np.array([0.0, 1.0])

    def cumulative_mass(self, xs: ArrayLike, ys: ArrayLike) -> ARRAY_FLOAT:
        """Compute the mass of omega over [0, x] x [0, y] on a grid.

        Parameters
        ----------
        xs : ArrayLike
            Points in [0, 1] along the first (row) coordinate.
        ys : ArrayLike
            Points in [0, 1] along the second (column) coordinate.

        Returns
        -------
        ARRAY_FLOAT
            A len(xs)-by-len(ys) array of cumulative masses.
        """
        xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
        ys = np.atleast_1d(np.asarray(ys, dtype=np.float64))
        _verify_unit_domain(xs)
        _verify_unit_domain(ys)

        x_breaks, y_breaks = self.breakpoints()
        grid_x = np.unique(np.concatenate(([0.0, 1.0], x_breaks, xs)))
        grid_y = np.unique(np.concatenate(([0.0, 1.0], y_breaks, ys)))

        num_cells = (len(grid_x) - 1) * (len(grid_y) - 1)
        if num_cells <= ADAPTIVE_CELL_LIMIT:
            cells = np.empty((len(grid_x) - 1, len(grid_y) - 1))
            for i in range(len(grid_x) - 1):
                for j in range(len(grid_y) - 1):
                    cells[i, j] = integrate_2d(
                        self.evaluate_scalar,
                        grid_x[i],
                        grid_x[i + 1],
                        grid_y[j],
                        grid_y[j + 1],
                        description=f"{self.description} mass",
                    )
        else:
            cells = gauss_legendre_cells(self.evaluate, grid_x, grid_y)

        table = cumulate_cells(cells)

        rows = np.searchsorted(grid_x, xs)
        cols = np.searchsorted(grid_y, ys)

        return table[np.ix_(rows, cols)]

    def mass(self, x0: float, x1: float, y0: float, y1: float) -> float:
        """Compute the mass of omega over the rectangle [x0, x1] x [y0, y1]."""
        table = self.cumulative_mass([x0, x1], [y0, y1])

        return float(table[1, 1] - table[0, 1] - table[1, 0] + table[0, 0])

    def total_mass(self) -> float:
        """The integral of omega over the unit square."""
        return self.mass(0.0, 1.0, 0.0, 1.0)

    def square_mass(self) -> float:
        """The integral of omega squared over the unit square."""
        return self._integrate_pointwise(
            lambda x, y: self.evaluate_scalar(x, y) ** 2,
            f"{self.description} squared",
        )

    def neg_entropy(self) -> float:
        """The integral of w log w + (1 - w) log(1 - w) with w = omega."""

        def integrand(x: float, y: float) -> float:
            value = self.evaluate_scalar(x, y)
            return float(xlogy(value, value) + xlogy(1 - value, 1 - value))

        return self._integrate_pointwise(
            integrand, f"{self.description} entropy"
        )

    def evaluate_scalar(self, x: float, y: float) -> float:
        """Evaluate the kernel at a single point (for adaptive quadrature)."""
        return float(self.evaluate(np.asarray(x), np.asarray(y)))

    def _integrate_pointwise(self, func, description: str) -> float:
        """Integrate over the unit square, split at the breakpoints."""
        x_breaks, y_breaks = self.breakpoints()
        total = 0.0
        for x0, x1 in zip(x_breaks[:-1], x_breaks[1:]):
            for y0, y1 in zip(y_breaks[:-1], y_breaks[1:]):
                total += integrate_2d(
                    func, x0, x1, y0, y1, description=description
                )

        return total


def _init_subclass(cls: Type[KernelABC]) -> None:
    """Verify if a concrete kernel has all the required hidden attributes.

    Intermediate bases that still leave ``evaluate`` abstract are skipped;
    ``__abstractmethods__`` is not set yet when this hook runs.

    Raises
    ------
    NotImplementedError
        If required attributes are not implemented in the concrete class.
    """
    if getattr(cls.evaluate, "__isabstractmethod__", False):
        return
    for class_hidden_attribute in CLASS_HIDDEN_ATTRIBUTES:
        if not hasattr(cls, class_hidden_attribute):
            raise NotImplementedError(
                f"Class {cls} lacks required {class_hidden_attribute!r} "
                f"class attribute."
            )

def _verify_unit_domain(xx: ARRAY_FLOAT) -> None:
    """Verify whether the latent positions are within [0, 1].

    Raises
    ------
    DomainError
        If any of the values are outside the unit interval or NaN.
    """
    if not np.all(np.logical_and(xx >= 0.0, xx <= 1.0)):
        raise DomainError(
            "One or more latent positions are outside the domain [0, 1]!"
        )
