"""
Test module for the count-constrained assignment of nodes to classes.

Notes
-----
- The exact solver is checked against brute-force enumeration of all
  labelings with the required counts.
"""

import numpy as np
import pytest

from coblockfit.coclust import assign_side, labelings_with_counts
from coblockfit.core import ClassCounts, DimensionError
from coblockfit.core import InfeasibleCountsError


def _brute_force(cost, counts):
    values = [
        np.sum(cost[np.arange(len(s)), s.codes])
        for s in labelings_with_counts(counts)
    ]
    return max(values)


@pytest.mark.parametrize(
    "counts", [[3, 4], [0, 5], [2, 2, 2], [1, 3, 2], [4, 0, 2]]
)
def test_against_brute_force(counts):
    rng = np.random.default_rng(sum(counts) * len(counts))
    class_counts = ClassCounts(counts)
    for _ in range(10):
        cost = rng.normal(size=(class_counts.total, len(counts)))
        labeling = assign_side(cost, class_counts)
        value = np.sum(cost[np.arange(len(labeling)), labeling.codes])

        assert labeling.counts == class_counts
        assert value == pytest.approx(_brute_force(cost, class_counts))


@pytest.mark.parametrize("counts", [[2, 2], [2, 1, 1], [3]])
def test_tie_break(counts):
    """Equal gains give lower classes to lower node indices."""
    class_counts = ClassCounts(counts)
    cost = np.zeros((class_counts.total, len(counts)))
    labeling = assign_side(cost, class_counts)

    assert labeling.labels.tolist() == class_counts.label_vector().tolist()


def test_partial_ties():
    """Ties between equal rows are resolved by index."""
    cost = np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]])
    labeling = assign_side(cost, ClassCounts([2, 1]))

    assert labeling.labels.tolist() == [1, 1, 2]


def test_infeasible_counts():
    with pytest.raises(InfeasibleCountsError):
        assign_side(np.zeros((3, 2)), ClassCounts([2, 2]))
    with pytest.raises(DimensionError):
        assign_side(np.zeros((3, 2)), ClassCounts([1, 1, 1]))


def test_unknown_tie_break():
    with pytest.raises(ValueError):
        assign_side(np.zeros((2, 2)), ClassCounts([1, 1]), "random")
