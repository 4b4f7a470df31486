"""
Module with the support functions of co-clustering sets.

The empirical support function of an array A in direction Gamma is

    h^A(Gamma) = max_{(S, T)} <Gamma, A/ST>,

the maximum running over labelings with prescribed class counts. The
population support function replaces A/ST by the kernel masses over
measurable partitions with prescribed proportions; for monotone separable
kernels with two classes the maximum is attained among the four pairs of
canonical interval partitions.
"""

from __future__ import annotations

import logging
import warnings

import numpy as np

from dataclasses import dataclass
from numpy.typing import ArrayLike
from typing import Optional, Union

from .assign import assign_side
from .labeling import Labeling, indicator_matrix, labelings_with_counts
from .partition import (
    IntervalPartition,
    canonical_partitions,
    family_block_masses,
    threshold_family,
)
from .summary import Direction, as_direction, verify_array
from ..core.exceptions import (
    DimensionError,
    DomainError,
    SizeLimitError,
    UnsupportedKernelError,
)
from ..core.params import ClassCounts
from ..global_settings import (
    ARRAY_FLOAT,
    DEFAULT_SUPPORT_RESTARTS,
    DEFAULT_THRESHOLD_GRID,
    EXACT_ENUMERATION_CAP,
)
from ..kernels.kernel_abc import KernelABC
from ..utils import ROLE_SUPPORT, make_rng

__all__ = [
    "SupportResult",
    "OracleResult",
    "support_empirical",
    "support_oracle",
    "SUPPORT_METHODS",
]

logger = logging.getLogger(__name__)

SUPPORT_METHODS = ("exact", "alternating")

# Safety cap on alternating sweeps; each sweep strictly improves the value
MAX_ALTERNATING_SWEEPS = 1000


@dataclass(frozen=True)
class SupportResult:
    """The value of an empirical support function and a maximizer."""

    value: float
    s: Labeling
    t: Labeling
    method: str


@dataclass(frozen=True)
class OracleResult:
    """The value of a population support function and a maximizer."""

    value: float
    sigma: IntervalPartition
    tau: IntervalPartition
    approximate: bool


def support_empirical(
    a: ArrayLike,
    mu: ClassCounts,
    nu: ClassCounts,
    gamma: Union[Direction, ArrayLike],
    method: str = "alternating",
    restarts: int = DEFAULT_SUPPORT_RESTARTS,
    seed: int = 0,
) -> SupportResult:
    """Compute the empirical support function of a binary array.

    Parameters
    ----------
    a : ArrayLike
        The m-by-n array.
    mu : ClassCounts
        The row class counts (rescaled to m if given over another total).
    nu : ClassCounts
        The column class counts (rescaled to n if needed).
    gamma : Union[Direction, ArrayLike]
        The K-by-K direction.
    method : str, optional
        "exact" enumerates one side and solves the other exactly (m, n at
        most 10); "alternating" iterates exact per-side solves from random
        feasible labelings.
    restarts : int, optional
        The number of alternating restarts.
    seed : int, optional
        The seed of the alternating restarts.

    Returns
    -------
    SupportResult
        The value and a maximizing co-clustering.

    Raises
    ------
    SizeLimitError
        If the exact method is requested above the size cap.
    InfeasibleCountsError
        If the class counts cannot be realized on the array.
    """
    a = verify_array(a)
    gamma = as_direction(gamma)
    num_rows, num_cols = a.shape
    mu = mu.rescale(num_rows)
    nu = nu.rescale(num_cols)
    num_classes = gamma.shape[0]
    if mu.num_classes != num_classes or nu.num_classes != num_classes:
        raise DimensionError(
            f"Class counts must have {num_classes} entries to match "
            f"the direction!"
        )

    if method == "exact":
        s, t = _exact_maximizer(a, mu, nu, gamma)
    elif method == "alternating":
        if restarts < 1:
            raise DomainError(f"Restarts must be >= 1! Got {restarts}.")
        s, t = _alternating_maximizer(a, mu, nu, gamma, restarts, seed)
    else:
        raise DomainError(
            f"Support method {method!r} is not one of {SUPPORT_METHODS}!"
        )

    return SupportResult(_inner_value(a, s, t, gamma), s, t, method)


def support_oracle(
    kernel: KernelABC,
    mu,
    nu,
    gamma: Union[Direction, ArrayLike],
    exact: bool = False,
    grid_size: int = DEFAULT_THRESHOLD_GRID,
) -> OracleResult:
    """Compute the population support function of a kernel (two classes).

    Parameters
    ----------
    kernel : KernelABC
        The kernel.
    mu, nu : ClassCounts or ArrayLike
        The row and column class proportions.
    gamma : Union[Direction, ArrayLike]
        The 2-by-2 direction.
    exact : bool, optional
        If True, kernels without the four-case reduction raise instead of
        being approximated.
    grid_size : int, optional
        The number of interval starts per orientation of the approximation.

    Returns
    -------
    OracleResult
        The value, the maximizing partitions, and whether the value is a
        threshold-grid approximation.

    Raises
    ------
    UnsupportedKernelError
        If ``exact`` is requested for a kernel without the reduction.
    """
    gamma = as_direction(gamma)
    if gamma.shape != (2, 2):
        raise DimensionError(
            f"Population support functions need a 2-by-2 direction! "
            f"Got {gamma.shape}."
        )

    if kernel.supports_four_case:
        sigmas = canonical_partitions(mu)
        taus = canonical_partitions(nu)
        approximate = False
    elif exact:
        raise UnsupportedKernelError(
            f"{kernel.description} does not admit the closed-form "
            f"interval reduction!"
        )
    else:
        warnings.warn(
            f"{kernel.description} does not admit the closed-form interval "
            f"reduction; using a threshold-grid approximation "
            f"(grid size {grid_size}).",
            UserWarning,
        )
        sigmas = threshold_family(mu, grid_size)
        taus = threshold_family(nu, grid_size)
        approximate = True

    masses = family_block_masses(kernel, sigmas, taus)
    values = np.einsum("pqab,ab->pq", masses, gamma)
    p, q = np.unravel_index(np.argmax(values), values.shape)

    return OracleResult(float(values[p, q]), sigmas[p], taus[q], approximate)


def row_gains(a: ARRAY_FLOAT, t: Labeling, gamma: ARRAY_FLOAT) -> ARRAY_FLOAT:
    """The m-by-K gains of the rows given the column labeling."""
    num_rows, num_cols = a.shape
    return (a @ indicator_matrix(t)) @ gamma.T / (num_rows * num_cols)


def col_gains(a: ARRAY_FLOAT, s: Labeling, gamma: ARRAY_FLOAT) -> ARRAY_FLOAT:
    """The n-by-K gains of the columns given the row labeling."""
    num_rows, num_cols = a.shape
    return (indicator_matrix(s).T @ a).T @ gamma / (num_rows * num_cols)


def _inner_value(
    a: ARRAY_FLOAT, s: Labeling, t: Labeling, gamma: ARRAY_FLOAT
) -> float:
    mass = indicator_matrix(s).T @ a @ indicator_matrix(t)
    return float(np.sum(gamma * mass) / a.size)


def _exact_maximizer(a, mu, nu, gamma):
    num_rows, num_cols = a.shape
    if max(num_rows, num_cols) > EXACT_ENUMERATION_CAP:
        raise SizeLimitError(
            f"Exact support functions are limited to arrays of at most "
            f"{EXACT_ENUMERATION_CAP} rows and columns! "
            f"Got {a.shape}."
        )

    # Enumerate the rows; the columns are then solved exactly
    best_value: Optional[float] = None
    best = None
    for s in labelings_with_counts(mu):
        t = assign_side(col_gains(a, s, gamma), nu)
        value = _inner_value(a, s, t, gamma)
        if best_value is None or value > best_value:
            best_value = value
            best = (s, t)

    return best


def _alternating_maximizer(a, mu, nu, gamma, restarts, seed):
    best_value: Optional[float] = None
    best = None
    for restart in range(restarts):
        rng = make_rng(seed, ROLE_SUPPORT, restart)
        s = Labeling(rng.permutation(mu.label_vector()), mu.num_classes)
        t = Labeling(rng.permutation(nu.label_vector()), nu.num_classes)
        value = _inner_value(a, s, t, gamma)
        for _ in range(MAX_ALTERNATING_SWEEPS):
            t_new = assign_side(col_gains(a, s, gamma), nu)
            s_new = assign_side(row_gains(a, t_new, gamma), mu)
            new_value = _inner_value(a, s_new, t_new, gamma)
            if not new_value > value:
                break
            s, t, value = s_new, t_new, new_value
        logger.debug("Alternating restart %d reached %.12g", restart, value)
        if best_value is None or value > best_value:
            best_value = value
            best = (s, t)

    return best
