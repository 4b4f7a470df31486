"""
Module with two-class interval partitions of the unit interval.

A partition sigma: [0, 1] -> {1, 2} with class proportions mu is described
by the class that occupies a single interval (the inside class) and the
start of that interval; the other class takes the complement. The family
contains the two canonical partitions

    canonical_1 : class 1 on [0, mu_1), class 2 on [mu_1, 1],
    canonical_2 : class 2 on [0, mu_2), class 1 on [mu_2, 1],

and, more generally, every placement of the inside interval on a grid of
starts. Block masses of a whole family of partition pairs are computed
from a single table of cumulative kernel masses.
"""

from __future__ import annotations

import numpy as np

from dataclasses import dataclass
from numpy.typing import ArrayLike
from typing import List, Sequence, Tuple, Union

from .summary import BlockSummary
from ..core.exceptions import DimensionError, DomainError
from ..core.params import ClassCounts, as_proportions
from ..global_settings import ARRAY_FLOAT, DEFAULT_THRESHOLD_GRID
from ..kernels.kernel_abc import KernelABC

__all__ = [
    "IntervalPartition",
    "canonical_partitions",
    "threshold_family",
    "family_block_masses",
    "population_block_mass",
]

# Slack allowed when an interval end point overshoots 1 by rounding
END_TOL = 1e-12


@dataclass(frozen=True)
class IntervalPartition:
    """A two-class partition of [0, 1] into an interval and its complement.

    Parameters
    ----------
    mu : Tuple[float, float]
        The class proportions (mu_1, mu_2).
    inside_class : int
        The class (1 or 2) occupying the interval [start, start + mu).
    start : float
        The start of the interval, within [0, 1 - mu_inside].
    """

    mu: Tuple[float, float]
    inside_class: int = 1
    start: float = 0.0

    def __post_init__(self) -> None:
        mu = tuple(float(value) for value in two_class_proportions(self.mu))
        if self.inside_class not in (1, 2):
            raise DomainError(
                f"Inside class must be 1 or 2! Got {self.inside_class}."
            )
        start = float(self.start)
        width = mu[self.inside_class - 1]
        if start < 0.0 or start + width > 1.0 + END_TOL:
            raise DomainError(
                f"Interval [{start}, {start + width}) is not within [0, 1]!"
            )
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "start", start)

    @classmethod
    def canonical_1(cls, mu) -> IntervalPartition:
        """Class 1 on the lower interval [0, mu_1)."""
        return cls(tuple(two_class_proportions(mu)), 1, 0.0)

    @classmethod
    def canonical_2(cls, mu) -> IntervalPartition:
        """Class 1 on the upper interval [1 - mu_1, 1]."""
        return cls(tuple(two_class_proportions(mu)), 2, 0.0)

    @property
    def kind(self) -> str:
        if self.start == 0.0:
            return f"canonical_{self.inside_class}"
        return "threshold"

    @property
    def end(self) -> float:
        """The end of the inside interval."""
        return min(1.0, self.start + self.mu[self.inside_class - 1])

    def label(self, xx: ArrayLike) -> ARRAY_FLOAT:
        """The class (1 or 2) of each position in [0, 1]."""
        xx = np.asarray(xx)
        inside = np.logical_and(xx >= self.start, xx < self.end)
        outside_class = 3 - self.inside_class

        return np.where(inside, self.inside_class, outside_class)

    def __str__(self) -> str:
        if self.kind == "threshold":
            return (
                f"threshold(start={self.start:.6g}, "
                f"inside={self.inside_class})"
            )
        return self.kind


def two_class_proportions(mu: Union[ClassCounts, ArrayLike]) -> ARRAY_FLOAT:
    """Validate two-class proportions."""
    proportions = as_proportions(mu)
    if len(proportions) != 2:
        raise DimensionError(
            f"Interval partitions have two classes! Got {len(proportions)}."
        )

    return proportions


def canonical_partitions(mu) -> List[IntervalPartition]:
    """The two canonical partitions for class proportions mu."""
    return [
        IntervalPartition.canonical_1(mu),
        IntervalPartition.canonical_2(mu),
    ]


def threshold_family(
    mu, grid_size: int = DEFAULT_THRESHOLD_GRID
) -> List[IntervalPartition]:
    """Enumerate interval partitions with starts on an evenly spaced grid.

    Parameters
    ----------
    mu : ClassCounts or ArrayLike
        The two class proportions.
    grid_size : int, optional
        The number of starts per orientation.

    Returns
    -------
    List[IntervalPartition]
        Both orientations; the first member of each orientation is a
        canonical partition.
    """
    if grid_size < 1:
        raise DomainError(f"Grid size must be positive! Got {grid_size}.")
    proportions = tuple(two_class_proportions(mu))
    family = []
    for inside_class in (1, 2):
        width = proportions[inside_class - 1]
        starts = np.linspace(0.0, max(0.0, 1.0 - width), grid_size)
        if width in (0.0, 1.0):
            starts = starts[:1]
        for start in starts:
            family.append(IntervalPartition(proportions, inside_class, start))

    return family


def family_block_masses(
    kernel: KernelABC,
    sigmas: Sequence[IntervalPartition],
    taus: Sequence[IntervalPartition],
) -> ARRAY_FLOAT:
    """Compute the block masses of every pair of row and column partitions.

    Parameters
    ----------
    kernel : KernelABC
        The kernel.
    sigmas : Sequence[IntervalPartition]
        P row partitions.
    taus : Sequence[IntervalPartition]
        Q column partitions.

    Returns
    -------
    ARRAY_FLOAT
        A P-by-Q-by-2-by-2 array; entry [p, q, a, b] is the mass of the
        kernel over sigma_p^{-1}(a + 1) x tau_q^{-1}(b + 1).
    """
    x_starts, x_ends, x_inside = _interval_arrays(sigmas)
    y_starts, y_ends, y_inside = _interval_arrays(taus)
    xs = np.unique(np.concatenate(([0.0, 1.0], x_starts, x_ends)))
    ys = np.unique(np.concatenate(([0.0, 1.0], y_starts, y_ends)))
    table = kernel.cumulative_mass(xs, ys)

    x0 = np.searchsorted(xs, x_starts)[:, np.newaxis]
    x1 = np.searchsorted(xs, x_ends)[:, np.newaxis]
    y0 = np.searchsorted(ys, y_starts)[np.newaxis, :]
    y1 = np.searchsorted(ys, y_ends)[np.newaxis, :]

    total = table[-1, -1]
    row_band = table[x1, -1] - table[x0, -1]
    col_band = table[-1, y1] - table[-1, y0]
    both = table[x1, y1] - table[x0, y1] - table[x1, y0] + table[x0, y0]

    # Masses indexed by (inside, outside) on each side
    sides = np.empty((len(sigmas), len(taus), 2, 2))
    sides[:, :, 0, 0] = both
    sides[:, :, 0, 1] = row_band - both
    sides[:, :, 1, 0] = col_band - both
    sides[:, :, 1, 1] = total - row_band - col_band + both

    rows = np.arange(len(sigmas))[:, np.newaxis]
    cols = np.arange(len(taus))[np.newaxis, :]
    masses = np.empty_like(sides)
    for a in range(2):
        row_side = np.where(x_inside == a + 1, 0, 1)[:, np.newaxis]
        for b in range(2):
            col_side = np.where(y_inside == b + 1, 0, 1)[np.newaxis, :]
            masses[:, :, a, b] = sides[rows, cols, row_side, col_side]

    return masses


def population_block_mass(
    kernel: KernelABC, sigma: IntervalPartition, tau: IntervalPartition
) -> BlockSummary:
    """Compute the population block summary of a kernel.

    Returns
    -------
    BlockSummary
        The 2-by-2 kernel masses over the class regions of sigma and tau.

    Raises
    ------
    NumericalError
        If a quadrature fallback does not converge.
    """
    masses = family_block_masses(kernel, [sigma], [tau])[0, 0]

    return BlockSummary(
        mass=masses,
        row_props=np.array(sigma.mu),
        col_props=np.array(tau.mu),
    )


def _interval_arrays(partitions: Sequence[IntervalPartition]):
    starts = np.array([partition.start for partition in partitions])
    ends = np.array([partition.end for partition in partitions])
    inside = np.array([partition.inside_class for partition in partitions])
    if len(partitions) == 0:
        raise DimensionError("At least one partition is required!")

    return starts, ends, inside
