"""
Module with the numerical integration routines used by the kernels.

One-dimensional and small two-dimensional integrals use the adaptive
Gauss-Kronrod routines of SciPy (QUADPACK) and fail loudly when the
tolerance is not reached. Large tables of cell integrals use a composite
tensor-product Gauss-Legendre rule instead.
"""

import warnings

import numpy as np

from scipy import integrate
from scipy.integrate import IntegrationWarning
from typing import Callable, List, Optional, Sequence, Tuple

from .exceptions import NumericalError
from ..global_settings import ARRAY_FLOAT, QUAD_TOL_1D, QUAD_TOL_2D

__all__ = [
    "integrate_1d",
    "integrate_2d",
    "gauss_legendre_cells",
    "cumulate_cells",
]

QUAD_LIMIT = 200

GAUSS_LEGENDRE_ORDER = 8


def integrate_1d(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    epsabs: float = QUAD_TOL_1D,
    points: Optional[Sequence[float]] = None,
    description: str = "",
) -> float:
    """Integrate a scalar function over an interval adaptively.

    Parameters
    ----------
    func : Callable[[float], float]
        The integrand.
    lower : float
        The lower integration bound.
    upper : float
        The upper integration bound.
    epsabs : float, optional
        The requested absolute error.
    points : Sequence[float], optional
        Interior points where the integrand is difficult (e.g., kinks).
    description : str, optional
        A short description of the integrand used in error messages.

    Returns
    -------
    float
        The value of the integral.

    Raises
    ------
    NumericalError
        If the adaptive routine does not converge.
    """
    if upper <= lower:
        return 0.0

    if points is not None:
        points = [p for p in points if lower < p < upper] or None

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        value, error = integrate.quad(
            func,
            lower,
            upper,
            epsabs=epsabs,
            epsrel=1e-13,
            limit=QUAD_LIMIT,
            points=points,
        )
    _raise_on_warning(caught, description, (lower, upper), value, error)

    return float(value)


def integrate_2d(
    func: Callable[[float, float], float],
    x_lower: float,
    x_upper: float,
    y_lower: float,
    y_upper: float,
    epsabs: float = QUAD_TOL_2D,
    description: str = "",
) -> float:
    """Integrate a scalar function over a rectangle adaptively.

    Parameters
    ----------
    func : Callable[[float, float], float]
        The integrand ``func(x, y)``.
    x_lower, x_upper : float
        The integration bounds in the first coordinate.
    y_lower, y_upper : float
        The integration bounds in the second coordinate.
    epsabs : float, optional
        The requested absolute error.
    description : str, optional
        A short description of the integrand used in error messages.

    Returns
    -------
    float
        The value of the integral.

    Raises
    ------
    NumericalError
        If the adaptive routine does not converge.
    """
    if x_upper <= x_lower or y_upper <= y_lower:
        return 0.0

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        value, error = integrate.dblquad(
            lambda y, x: func(x, y),
            x_lower,
            x_upper,
            y_lower,
            y_upper,
            epsabs=epsabs,
            epsrel=1e-11,
        )
    _raise_on_warning(
        caught,
        description,
        (x_lower, x_upper, y_lower, y_upper),
        value,
        error,
    )

    return float(value)


def gauss_legendre_cells(
    func: Callable[[ARRAY_FLOAT, ARRAY_FLOAT], ARRAY_FLOAT],
    xs: ARRAY_FLOAT,
    ys: ARRAY_FLOAT,
    order: int = GAUSS_LEGENDRE_ORDER,
) -> ARRAY_FLOAT:
    """Integrate a vectorized function over each cell of a rectilinear grid.

    Parameters
    ----------
    func : Callable
        Vectorized integrand ``func(xx, yy)`` supporting broadcasting.
    xs : ARRAY_FLOAT
        Sorted cell boundaries in the first coordinate.
    ys : ARRAY_FLOAT
        Sorted cell boundaries in the second coordinate.
    order : int, optional
        The number of Gauss-Legendre nodes per cell and coordinate.

    Returns
    -------
    ARRAY_FLOAT
        A (len(xs) - 1)-by-(len(ys) - 1) array of cell integrals.
    """
    nodes, weights = np.polynomial.legendre.leggauss(order)

    x_nodes, x_weights = _map_nodes(xs, nodes, weights)
    y_nodes, y_weights = _map_nodes(ys, nodes, weights)

    num_x = len(xs) - 1
    num_y = len(ys) - 1
    y_flat = y_nodes.ravel()
    y_weights_flat = y_weights.ravel()

    cells = np.empty((num_x, num_y))
    # Row by row to keep the memory footprint at O(order^2 * num_y)
    for i in range(num_x):
        values = func(x_nodes[i][:, np.newaxis], y_flat[np.newaxis, :])
        weighted = values * x_weights[i][:, np.newaxis] * y_weights_flat
        cells[i] = weighted.sum(axis=0).reshape(num_y, order).sum(axis=1)

    return cells


def cumulate_cells(cells: ARRAY_FLOAT) -> ARRAY_FLOAT:
    """Turn cell integrals into a table of cumulative integrals.

    Parameters
    ----------
    cells : ARRAY_FLOAT
        Cell integrals on a rectilinear grid.

    Returns
    -------
    ARRAY_FLOAT
        Array with one more row and column than ``cells`` whose entry
        (i, j) is the integral over the union of cells below i and j.
    """
    table = np.zeros((cells.shape[0] + 1, cells.shape[1] + 1))
    table[1:, 1:] = np.cumsum(np.cumsum(cells, axis=0), axis=1)

    return table


def _map_nodes(bounds, nodes, weights):
    """Map reference Gauss-Legendre nodes onto each interval of a grid."""
    lower = bounds[:-1, np.newaxis]
    half_width = (bounds[1:, np.newaxis] - lower) / 2.0
    mapped_nodes = lower + half_width * (nodes[np.newaxis, :] + 1.0)
    mapped_weights = half_width * weights[np.newaxis, :]

    return mapped_nodes, mapped_weights


def _raise_on_warning(
    caught: List[warnings.WarningMessage],
    description: str,
    bounds: Tuple[float, ...],
    value: float,
    error: float,
) -> None:
    """Turn an integration warning into an error with the last estimate.

    Raises
    ------
    NumericalError
        If any of the caught warnings is an ``IntegrationWarning``.
    """
    for item in caught:
        if issubclass(item.category, IntegrationWarning):
            raise NumericalError(
                str(item.message).strip().split("\n")[0],
                integrand=description,
                bounds=bounds,
                estimate=float(value),
                error=float(error),
            )
