"""
Module with block summaries and directions.

The block summary of an array A under a co-clustering (S, T) is the K-by-K
matrix of edge proportions

    (A/ST)[a, b] = (1 / mn) * sum_{S(i) = a, T(j) = b} A[i, j];

its population counterpart holds the mass of a kernel over the product of
two class regions. Support functions pair summaries with a direction
Gamma in [-1, 1]^{K x K} through the trace inner product.
"""

from __future__ import annotations

import numpy as np

from dataclasses import dataclass
from numpy.typing import ArrayLike
from typing import Optional, Union

from .labeling import LabelingLike, as_labeling, indicator_matrix
from ..core.exceptions import DimensionError, DomainError
from ..core.params import ClassCounts, as_proportions
from ..global_settings import ARRAY_FLOAT
from ..utils import make_rng

__all__ = [
    "Direction",
    "as_direction",
    "BlockSummary",
    "block_summary",
    "verify_array",
]


@dataclass(frozen=True, eq=False)
class Direction:
    """A K-by-K direction matrix with entries in [-1, 1].

    Parameters
    ----------
    gamma : ArrayLike
        The square direction matrix.
    """

    gamma: ArrayLike

    def __post_init__(self) -> None:
        gamma = np.array(self.gamma, dtype=np.float64)
        if gamma.ndim != 2 or gamma.shape[0] != gamma.shape[1]:
            raise DimensionError(
                f"Direction must be a square matrix! Got shape {gamma.shape}."
            )
        if not np.all(np.abs(gamma) <= 1.0):
            raise DomainError(
                f"Direction entries must be within [-1, 1]! Got {gamma}."
            )
        gamma.setflags(write=False)
        object.__setattr__(self, "gamma", gamma)

    @property
    def num_classes(self) -> int:
        return np.asarray(self.gamma).shape[0]

    @classmethod
    def identity(cls, num_classes: int) -> Direction:
        return cls(np.eye(num_classes))

    @classmethod
    def ones(cls, num_classes: int) -> Direction:
        return cls(np.ones((num_classes, num_classes)))

    @classmethod
    def random(cls, num_classes: int, seed: int, *keys: int) -> Direction:
        """A direction with i.i.d. uniform entries on [-1, 1]."""
        rng = make_rng(seed, *keys)
        return cls(rng.uniform(-1.0, 1.0, (num_classes, num_classes)))


def as_direction(value: Union[Direction, ArrayLike]) -> ARRAY_FLOAT:
    """Return the validated direction matrix of a Direction or an array."""
    if isinstance(value, Direction):
        return np.asarray(value.gamma)

    return np.asarray(Direction(value).gamma)


@dataclass(frozen=True, eq=False)
class BlockSummary:
    """The block masses of an array or a kernel under a co-clustering.

    Parameters
    ----------
    mass : ArrayLike
        The K-by-K matrix of block masses (fractions of the total).
    row_props : ArrayLike
        The row class proportions.
    col_props : ArrayLike
        The column class proportions.
    row_counts : ClassCounts, optional
        The row class counts (empirical summaries only).
    col_counts : ClassCounts, optional
        The column class counts (empirical summaries only).
    """

    mass: ArrayLike
    row_props: ArrayLike
    col_props: ArrayLike
    row_counts: Optional[ClassCounts] = None
    col_counts: Optional[ClassCounts] = None

    @property
    def means(self) -> ARRAY_FLOAT:
        """Block means mass[a, b] / (mu[a] nu[b]) with 0/0 taken as 0."""
        sizes = np.outer(self.row_props, self.col_props)
        mass = np.asarray(self.mass)
        means = np.zeros_like(mass)
        np.divide(mass, sizes, out=means, where=sizes > 0)

        return means

    @property
    def total(self) -> float:
        return float(np.sum(self.mass))

    def inner(self, gamma: Union[Direction, ArrayLike]) -> float:
        """The trace inner product with a direction."""
        return float(np.sum(as_direction(gamma) * np.asarray(self.mass)))


def verify_array(a: ArrayLike) -> ARRAY_FLOAT:
    """Return a non-empty two-dimensional array as floats."""
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.size == 0:
        raise DimensionError(
            f"Array must be a non-empty matrix! Got shape {a.shape}."
        )

    return a


def block_summary(
    a: ArrayLike, s: LabelingLike, t: LabelingLike
) -> BlockSummary:
    """Compute the block summary A/ST of an array.

    Parameters
    ----------
    a : ArrayLike
        The m-by-n array.
    s : LabelingLike
        The row labeling of length m.
    t : LabelingLike
        The column labeling of length n.

    Returns
    -------
    BlockSummary
        The block masses, class counts and proportions.

    Raises
    ------
    DimensionError
        If the labelings do not match the array or each other.
    """
    a = verify_array(a)
    s = as_labeling(s)
    t = as_labeling(t)
    num_classes = max(s.num_classes, t.num_classes)
    s = as_labeling(s, num_classes)
    t = as_labeling(t, num_classes)
    num_rows, num_cols = a.shape
    if len(s) != num_rows or len(t) != num_cols:
        raise DimensionError(
            f"Labelings of lengths ({len(s)}, {len(t)}) do not match "
            f"an array of shape {a.shape}!"
        )

    mass = indicator_matrix(s).T @ a @ indicator_matrix(t)
    mass /= num_rows * num_cols
    row_counts = s.counts
    col_counts = t.counts

    return BlockSummary(
        mass=mass,
        row_props=as_proportions(row_counts),
        col_props=as_proportions(col_counts),
        row_counts=row_counts,
        col_counts=col_counts,
    )
