"""
Module with node labelings and the sets of labelings with fixed counts.

Labels are 1-based class ids, S in {1, ..., K}^m; the 0-based codes are
available for indexing.
"""

from __future__ import annotations

import os

import numpy as np

from dataclasses import dataclass
from numpy.typing import ArrayLike
from typing import Iterator, List, Optional, Union

from ..core.exceptions import DimensionError, DomainError
from ..core.params import ClassCounts
from ..global_settings import ARRAY_FLOAT, ARRAY_INT

__all__ = [
    "Labeling",
    "as_labeling",
    "indicator_matrix",
    "hamming_normalized",
    "labelings_with_counts",
    "write_labeling",
    "read_labeling",
]

LabelingLike = Union["Labeling", ArrayLike]


@dataclass(frozen=True, eq=False)
class Labeling:
    """A class assignment of nodes.

    Parameters
    ----------
    labels : ArrayLike
        Class ids in {1, ..., num_classes}, one per node.
    num_classes : int, optional
        The number of classes K. If not given, the largest label is used.
    """

    labels: ArrayLike
    num_classes: Optional[int] = None

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels)
        if labels.ndim != 1 or labels.size == 0:
            raise DimensionError(
                f"Labels must be a non-empty vector! Got shape {labels.shape}."
            )
        if not np.all(np.equal(np.mod(labels, 1), 0)):
            raise DomainError("Labels must be integers!")
        labels = labels.astype(np.int64)
        num_classes = self.num_classes
        if num_classes is None:
            num_classes = int(labels.max())
        if np.any(labels < 1) or np.any(labels > num_classes):
            raise DomainError(
                f"Labels must be within {{1, ..., {num_classes}}}!"
            )
        labels.setflags(write=False)

        # Because frozen=True, post init must access self via setattr
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "num_classes", int(num_classes))

    @property
    def codes(self) -> ARRAY_INT:
        """The 0-based class indices."""
        return np.asarray(self.labels) - 1

    @property
    def counts(self) -> ClassCounts:
        """The class counts of the labeling."""
        return ClassCounts.from_labels(self.labels, self.num_classes)

    def relabel(self, order: ArrayLike) -> Labeling:
        """Map old class ``order[k]`` to new class k + 1."""
        new_codes = np.argsort(np.asarray(order))

        return Labeling(new_codes[self.codes] + 1, self.num_classes)

    def __len__(self) -> int:
        return len(self.labels)  # type: ignore

    def __eq__(self, other) -> bool:
        if not isinstance(other, Labeling):
            return False
        return self.num_classes == other.num_classes and bool(
            np.array_equal(self.labels, other.labels)
        )

    def __hash__(self) -> int:
        return hash((self.num_classes, np.asarray(self.labels).tobytes()))

    def __str__(self) -> str:
        return " ".join(str(label) for label in np.asarray(self.labels))


def as_labeling(
    value: LabelingLike, num_classes: Optional[int] = None
) -> Labeling:
    """Convert a label vector into a Labeling (Labelings pass through)."""
    if isinstance(value, Labeling):
        if num_classes is not None and value.num_classes != num_classes:
            return Labeling(value.labels, num_classes)
        return value

    return Labeling(value, num_classes)


def indicator_matrix(labeling: Labeling) -> ARRAY_FLOAT:
    """The m-by-K matrix Z with Z[i, a] = 1 iff node i is in class a + 1."""
    indicators = np.zeros((len(labeling), labeling.num_classes))
    indicators[np.arange(len(labeling)), labeling.codes] = 1.0

    return indicators


def hamming_normalized(s: LabelingLike, s2: LabelingLike) -> float:
    """Compute the fraction of nodes with different labels.

    Raises
    ------
    DimensionError
        If the labelings have different lengths.
    """
    labels = np.asarray(as_labeling(s).labels)
    labels_2 = np.asarray(as_labeling(s2).labels)
    if len(labels) != len(labels_2):
        raise DimensionError(
            f"Labelings must have the same length! "
            f"Got {len(labels)} and {len(labels_2)}."
        )

    return float(np.mean(labels != labels_2))


def labelings_with_counts(counts: ClassCounts) -> Iterator[Labeling]:
    """Enumerate all labelings with the given class counts.

    The labelings are generated in lexicographic order of the label
    vectors, starting from the sorted one.
    """
    remaining = [int(count) for count in np.asarray(counts.counts)]
    num_classes = len(remaining)
    prefix: List[int] = []

    def _extend(length: int) -> Iterator[Labeling]:
        if length == 0:
            yield Labeling(np.array(prefix), num_classes)
            return
        for a in range(num_classes):
            if remaining[a] == 0:
                continue
            remaining[a] -= 1
            prefix.append(a + 1)
            yield from _extend(length - 1)
            prefix.pop()
            remaining[a] += 1

    yield from _extend(counts.total)


def write_labeling(
    path: Union[str, os.PathLike], labelings: List[Labeling]
) -> None:
    """Write labelings as whitespace-separated integer lines."""
    with open(path, "w", newline="\n") as f:
        for labeling in labelings:
            f.write(f"{labeling}\n")


def read_labeling(
    path: Union[str, os.PathLike], num_classes: Optional[int] = None
) -> List[Labeling]:
    """Read labelings written by ``write_labeling``, one per line."""
    with open(path, "r") as f:
        return [
            Labeling(np.array(line.split(), dtype=np.int64), num_classes)
            for line in f
            if line.strip()
        ]
