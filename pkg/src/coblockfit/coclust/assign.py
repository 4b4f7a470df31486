"""
Module with the exact per-side assignment under class-count constraints.

Given an m-by-K cost (gain) matrix, ``assign_side`` finds the labeling S
with prescribed class counts that maximizes sum_i cost[i, S(i)]. This is a
transportation problem; with two classes it reduces to sorting the cost
differences, and in general it is solved as a rectangular assignment
problem with each class replicated according to its count.

Ties are broken deterministically: among optimal labelings the one that
gives lower-indexed rows the lower class ids is returned.
"""

import numpy as np

from numpy.typing import ArrayLike
from scipy.optimize import linear_sum_assignment

from .labeling import Labeling
from ..core.exceptions import DimensionError, InfeasibleCountsError
from ..core.params import ClassCounts
from ..global_settings import ARRAY_FLOAT, ARRAY_INT

__all__ = ["assign_side", "TIE_BREAK_RULES"]

TIE_BREAK_RULES = ("lowest_index",)


def assign_side(
    cost: ArrayLike,
    counts: ClassCounts,
    tie_break: str = "lowest_index",
) -> Labeling:
    """Solve the count-constrained assignment of nodes to classes exactly.

    Parameters
    ----------
    cost : ArrayLike
        The m-by-K matrix; cost[i, a] is the gain of putting node i into
        class a + 1.
    counts : ClassCounts
        The required class counts; their total must equal m.
    tie_break : str, optional
        The tie-breaking rule; only "lowest_index" is available.

    Returns
    -------
    Labeling
        An optimal labeling with the required counts.

    Raises
    ------
    InfeasibleCountsError
        If the counts do not add up to the number of nodes.
    DimensionError
        If the number of classes does not match the cost matrix.
    """
    if tie_break not in TIE_BREAK_RULES:
        raise ValueError(
            f"Tie-break rule {tie_break!r} is not one of {TIE_BREAK_RULES}!"
        )
    cost = np.asarray(cost, dtype=np.float64)
    if cost.ndim != 2:
        raise DimensionError(f"Cost must be a matrix! Got {cost.shape}.")
    num_nodes, num_classes = cost.shape
    if counts.num_classes != num_classes:
        raise DimensionError(
            f"Expected {num_classes} class counts! Got {counts.num_classes}."
        )
    if counts.total != num_nodes:
        raise InfeasibleCountsError(
            f"Class counts add up to {counts.total}, "
            f"but there are {num_nodes} nodes!"
        )

    class_counts = np.asarray(counts.counts)
    if num_classes == 1:
        codes = np.zeros(num_nodes, dtype=np.int64)
    elif num_classes == 2:
        codes = _assign_two_classes(cost, int(class_counts[0]))
    else:
        codes = _assign_general(cost, class_counts)
        codes = _canonicalize_ties(cost, codes)

    return Labeling(codes + 1, num_classes)


def _assign_two_classes(cost: ARRAY_FLOAT, num_first: int) -> ARRAY_INT:
    """Give class 1 to the rows with the largest advantage for class 1."""
    advantage = cost[:, 0] - cost[:, 1]
    # A stable sort keeps lower row indices first among equal advantages
    order = np.argsort(-advantage, kind="stable")
    codes = np.ones(len(advantage), dtype=np.int64)
    codes[order[:num_first]] = 0

    return codes


def _assign_general(cost: ARRAY_FLOAT, class_counts: ARRAY_INT) -> ARRAY_INT:
    """Solve the transportation problem as a rectangular assignment."""
    slot_classes = np.repeat(np.arange(len(class_counts)), class_counts)
    rows, slots = linear_sum_assignment(cost[:, slot_classes], maximize=True)
    codes = np.empty(cost.shape[0], dtype=np.int64)
    codes[rows] = slot_classes[slots]

    return codes


def _canonicalize_ties(cost: ARRAY_FLOAT, codes: ARRAY_INT) -> ARRAY_INT:
    """Swap the classes of row pairs whenever the objective is unchanged.

    The sweep moves lower class ids towards lower row indices until no
    exchange of equal value remains.
    """
    codes = codes.copy()
    num_nodes = len(codes)
    changed = True
    while changed:
        changed = False
        for i in range(num_nodes):
            for j in range(i + 1, num_nodes):
                a, b = codes[i], codes[j]
                if a <= b:
                    continue
                current = cost[i, a] + cost[j, b]
                swapped = cost[i, b] + cost[j, a]
                if swapped == current:
                    codes[i], codes[j] = b, a
                    changed = True

    return codes
