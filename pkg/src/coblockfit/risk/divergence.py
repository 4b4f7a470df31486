"""
Module with Kullback-Leibler divergences between kernels and blockmodels.
"""

from __future__ import annotations

import logging
import warnings

import numpy as np

from numpy.typing import ArrayLike
from scipy.special import rel_entr, xlogy
from typing import List, Tuple, Union

from .objectives import clamp_theta, population_risk
from ..coclust.partition import IntervalPartition
from ..core.params import CoBlockParams
from ..core.quadrature import integrate_2d
from ..global_settings import (
    ARRAY_FLOAT,
    DEFAULT_EPS,
    DEFAULT_THRESHOLD_GRID,
    QUAD_TOL_2D,
)
from ..kernels.block import BlockKernel, PiecewiseConstantKernel
from ..kernels.kernel_abc import KernelABC

__all__ = ["bernoulli_kl", "avg_kl", "kl_small_rho_limit"]

logger = logging.getLogger(__name__)


def bernoulli_kl(
    p: ArrayLike, q: ArrayLike, eps: float = DEFAULT_EPS
) -> Union[float, ARRAY_FLOAT]:
    """Compute the divergence of Bernoulli(q) from Bernoulli(p).

    Parameters
    ----------
    p : ArrayLike
        Probabilities in [0, 1].
    q : ArrayLike
        Probabilities, clamped into [eps, 1 - eps].
    eps : float, optional
        The clamp on q.

    Returns
    -------
    Union[float, ARRAY_FLOAT]
        p log(p / q) + (1 - p) log((1 - p) / (1 - q)), with 0 log 0 = 0.
    """
    p = np.asarray(p, dtype=np.float64)
    q = clamp_theta(q, eps)
    values = rel_entr(p, q) + rel_entr(1.0 - p, 1.0 - q)
    if values.ndim == 0:
        return float(values)

    return values


def avg_kl(
    kernel: KernelABC,
    phi: CoBlockParams,
    eps: float = DEFAULT_EPS,
    grid_size: int = DEFAULT_THRESHOLD_GRID,
) -> float:
    """Compute the average Bernoulli divergence of a blockmodel from a kernel.

    The blockmodel is aligned with the kernel through the partition pair
    that attains the population profile likelihood L_omega(phi); the
    pointwise divergence is then integrated over the class rectangles.

    Returns
    -------
    float
        The average divergence (equal to the negative entropy of the kernel
        minus L_omega(phi)), at least zero.
    """
    report = population_risk(kernel, phi, "pl", eps, grid_size)
    sigma, tau = report.witness  # type: ignore
    theta = clamp_theta(phi.theta, eps)
    x_breaks, y_breaks = kernel.breakpoints()
    tolerance = QUAD_TOL_2D * min(1.0, kernel.total_mass())

    total = 0.0
    for a, x_pieces in enumerate(_class_pieces(sigma, x_breaks)):
        for b, y_pieces in enumerate(_class_pieces(tau, y_breaks)):
            theta_ab = float(theta[a, b])

            def integrand(x: float, y: float, q: float = theta_ab) -> float:
                value = kernel.evaluate_scalar(x, y)
                return float(bernoulli_kl(value, q, eps))

            for x0, x1 in x_pieces:
                for y0, y1 in y_pieces:
                    total += integrate_2d(
                        integrand,
                        x0,
                        x1,
                        y0,
                        y1,
                        epsabs=tolerance,
                        description="pointwise Bernoulli divergence",
                    )
    logger.debug("Average divergence %.12g at %s x %s", total, sigma, tau)

    return max(total, 0.0)


def kl_small_rho_limit(
    base_p: KernelABC, base_q: Union[PiecewiseConstantKernel, CoBlockParams]
) -> float:
    """Compute the small-sparsity limit of the normalized divergence.

    For a kernel p and a blockmodel q, both at unit sparsity scale,

        lim_{rho -> 0} D(rho p || rho q) / rho
            = int int [p log(p / q) - p + q] dx dy.

    The blockmodel classes are taken at their own intervals, i.e., the
    blockmodel must already be aligned with the kernel.

    Returns
    -------
    float
        The limit; infinity (with a warning) if q vanishes where p has mass.
    """
    if isinstance(base_q, CoBlockParams):
        base_q = BlockKernel(base_q)
    theta = np.asarray(base_q.values)
    row_edges, col_edges = base_q.breakpoints()
    x_breaks, y_breaks = base_p.breakpoints()
    x_grid = np.unique(np.concatenate((row_edges, x_breaks)))
    y_grid = np.unique(np.concatenate((col_edges, y_breaks)))

    total = 0.0
    for x0, x1 in zip(x_grid[:-1], x_grid[1:]):
        a = _cell_of(row_edges, 0.5 * (x0 + x1))
        for y0, y1 in zip(y_grid[:-1], y_grid[1:]):
            b = _cell_of(col_edges, 0.5 * (y0 + y1))
            q = float(theta[a, b])
            if q == 0.0:
                if base_p.mass(x0, x1, y0, y1) > 0.0:
                    warnings.warn(
                        "The blockmodel vanishes where the kernel has mass; "
                        "the divergence is infinite.",
                        UserWarning,
                    )
                    return float("inf")
                continue

            def integrand(x: float, y: float, q: float = q) -> float:
                p = base_p.evaluate_scalar(x, y)
                return float(xlogy(p, p / q) - p + q)

            total += integrate_2d(
                integrand,
                x0,
                x1,
                y0,
                y1,
                description="small-sparsity divergence",
            )

    return total


def _class_pieces(
    partition: IntervalPartition, breaks: ARRAY_FLOAT
) -> List[List[Tuple[float, float]]]:
    """The intervals of each class, further split at the breakpoints."""
    inside = [(partition.start, partition.end)]
    outside = [(0.0, partition.start), (partition.end, 1.0)]
    pieces = {
        partition.inside_class: inside,
        3 - partition.inside_class: outside,
    }

    return [_split(pieces[label], breaks) for label in (1, 2)]


def _split(
    intervals: List[Tuple[float, float]], breaks: ARRAY_FLOAT
) -> List[Tuple[float, float]]:
    split = []
    for lower, upper in intervals:
        if upper <= lower:
            continue
        inner = [b for b in breaks if lower < b < upper]
        points = [lower] + inner + [upper]
        split.extend(zip(points[:-1], points[1:]))

    return split


def _cell_of(edges: ARRAY_FLOAT, x: float) -> int:
    return int(min(np.searchsorted(edges[1:], x, side="left"), len(edges) - 2))
