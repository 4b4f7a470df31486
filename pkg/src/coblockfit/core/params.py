"""
This module contains the classes that store co-blockmodel parameters:
class counts (the quantized proportions mu, nu) and the triple
phi = (mu, nu, theta).
"""

from __future__ import annotations

import numpy as np

from dataclasses import dataclass, field
from numpy.typing import ArrayLike
from tabulate import tabulate
from typing import Sequence, Union

from .exceptions import DimensionError, DomainError, InfeasibleCountsError
from ..global_settings import ARRAY_FLOAT, ARRAY_INT

__all__ = ["ClassCounts", "CoBlockParams", "as_proportions"]

# Relative slack when proportions are converted back into integer counts
ROUNDING_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ClassCounts:
    """A class for the sizes of K classes partitioning a set of nodes.

    Parameters
    ----------
    counts : ArrayLike
        Non-negative integer class sizes.

    Attributes
    ----------
    total : int
        The number of nodes (the sum of the counts).
    """

    counts: ArrayLike
    total: int = field(init=False)

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts)
        if counts.ndim != 1 or counts.size == 0:
            raise DimensionError(
                f"Class counts must be a non-empty vector! "
                f"Got shape {counts.shape}."
            )
        if not np.all(np.equal(np.mod(counts, 1), 0)):
            raise DomainError(f"Class counts must be integers! Got {counts}.")
        counts = counts.astype(np.int64)
        if np.any(counts < 0):
            raise DomainError(
                f"Class counts must be non-negative! Got {counts}."
            )
        if counts.sum() < 1:
            raise DomainError("Class counts must sum to at least one!")
        counts.setflags(write=False)
        # Because frozen=True, post init must access self via setattr
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "total", int(counts.sum()))

    @property
    def num_classes(self) -> int:
        """The number of classes K."""
        return len(self.counts)  # type: ignore

    @property
    def proportions(self) -> ARRAY_FLOAT:
        """The class proportions, an element of the quantized simplex."""
        return np.asarray(self.counts) / self.total

    @classmethod
    def from_labels(cls, labels: ArrayLike, num_classes: int) -> ClassCounts:
        """Count the members of each class in a 1-based label vector."""
        labels = np.asarray(labels)
        counts = np.bincount(labels - 1, minlength=num_classes)

        return cls(counts[:num_classes])

    @classmethod
    def from_proportions(
        cls, proportions: ArrayLike, total: int
    ) -> ClassCounts:
        """Create class counts from proportions and a total.

        Raises
        ------
        InfeasibleCountsError
            If the proportions are not integer multiples of ``1 / total``.
        """
        proportions = as_proportions(proportions)
        raw = proportions * total
        counts = np.rint(raw)
        if np.any(np.abs(raw - counts) > ROUNDING_TOL * max(total, 1)):
            raise InfeasibleCountsError(
                f"Proportions {proportions} are not integer multiples "
                f"of 1/{total}!"
            )
        if counts.sum() != total:
            raise InfeasibleCountsError(
                f"Counts {counts} do not add up to {total}!"
            )

        return cls(counts.astype(np.int64))

    def rescale(self, total: int) -> ClassCounts:
        """Express the same proportions as counts over another total."""
        if total == self.total:
            return self
        return ClassCounts.from_proportions(self.proportions, total)

    def label_vector(self) -> ARRAY_INT:
        """The sorted 1-based label vector realizing these counts."""
        return np.repeat(np.arange(1, self.num_classes + 1), self.counts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassCounts):
            return False
        return bool(np.array_equal(self.counts, other.counts))

    def __hash__(self) -> int:
        return hash(tuple(np.asarray(self.counts).tolist()))

    def __str__(self) -> str:
        counts = " ".join(str(c) for c in np.asarray(self.counts))
        return f"{counts} (total {self.total})"


@dataclass(frozen=True, eq=False)
class CoBlockParams:
    """A class for the parameters phi = (mu, nu, theta) of a co-blockmodel.

    Parameters
    ----------
    mu : ClassCounts
        The class counts of the row nodes.
    nu : ClassCounts
        The class counts of the column nodes.
    theta : ArrayLike
        The K-by-K connectivity matrix with entries in [0, 1].
    """

    mu: ClassCounts
    nu: ClassCounts
    theta: ArrayLike

    def __post_init__(self) -> None:
        theta = np.array(self.theta, dtype=np.float64)
        num_classes = self.mu.num_classes
        if self.nu.num_classes != num_classes:
            raise DimensionError(
                f"Row and column class counts must have the same length! "
                f"Got {self.mu.num_classes} and {self.nu.num_classes}."
            )
        if theta.shape != (num_classes, num_classes):
            raise DimensionError(
                f"Connectivity matrix must be {num_classes}-by-"
                f"{num_classes}! Got {theta.shape}."
            )
        if np.any(theta < 0.0) or np.any(theta > 1.0) or np.any(
            np.isnan(theta)
        ):
            raise DomainError(
                f"Connectivity probabilities must be in [0, 1]! Got {theta}."
            )
        theta.setflags(write=False)
        object.__setattr__(self, "theta", theta)

    @property
    def num_classes(self) -> int:
        """The number of classes K."""
        return self.mu.num_classes

    @classmethod
    def from_proportions(
        cls,
        mu: ArrayLike,
        nu: ArrayLike,
        theta: ArrayLike,
        total: int = 100,
    ) -> CoBlockParams:
        """Create parameters from proportion vectors on a 1/total grid."""
        return cls(
            ClassCounts.from_proportions(mu, total),
            ClassCounts.from_proportions(nu, total),
            theta,
        )

    def permuted(
        self, row_order: Sequence[int], col_order: Sequence[int]
    ) -> CoBlockParams:
        """Relabel the classes; new class k is old class ``order[k]``."""
        row_order = list(row_order)
        col_order = list(col_order)
        theta = np.asarray(self.theta)[np.ix_(row_order, col_order)]

        return CoBlockParams(
            ClassCounts(np.asarray(self.mu.counts)[row_order]),
            ClassCounts(np.asarray(self.nu.counts)[col_order]),
            theta,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoBlockParams):
            return False
        return (
            self.mu == other.mu
            and self.nu == other.nu
            and bool(np.array_equal(self.theta, other.theta))
        )

    def __hash__(self) -> int:
        return hash((self.mu, self.nu, np.asarray(self.theta).tobytes()))

    def __str__(self) -> str:
        mu = self.mu.proportions
        nu = self.nu.proportions
        header = ["mu \\ nu"] + [f"{value:.4f}" for value in nu]
        rows = [
            [f"{mu[a]:.4f}"] + [f"{value:.6f}" for value in row]
            for a, row in enumerate(np.asarray(self.theta))
        ]
        table = f"Classes      : {self.num_classes}\n"
        table += f"Row counts   : {self.mu}\n"
        table += f"Column counts: {self.nu}\n\n"
        table += tabulate(rows, headers=header, stralign="center")

        return table


def as_proportions(value: Union[ClassCounts, ArrayLike]) -> ARRAY_FLOAT:
    """Convert class counts or a probability vector into proportions.

    Raises
    ------
    DomainError
        If the values are negative or do not sum to one.
    """
    if isinstance(value, ClassCounts):
        return value.proportions

    proportions = np.asarray(value, dtype=np.float64)
    if proportions.ndim != 1 or proportions.size == 0:
        raise DimensionError(
            f"Proportions must be a non-empty vector! "
            f"Got shape {proportions.shape}."
        )
    if np.any(proportions < 0.0) or abs(proportions.sum() - 1.0) > 1e-9:
        raise DomainError(
            f"Proportions must be non-negative and sum to one! "
            f"Got {proportions}."
        )

    return proportions
