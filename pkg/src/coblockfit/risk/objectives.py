"""
Module with the least-squares and profile-likelihood objectives.

For a co-blockmodel phi = (mu, nu, theta) and a binary array A,

    R_A(phi) = min_{S, T} (1 / mn) sum_ij (A_ij - theta_{S(i) T(j)})^2,
    L_A(phi) = max_{S, T} (1 / mn) sum_ij [A_ij log theta_{S(i) T(j)}
                                           + (1 - A_ij) log(1 - theta_{..})],

with (S, T) restricted to labelings with the class counts of mu and nu.
Both are evaluated through support functions,

    R_A = sum mu nu theta^2 - 2 h^A(theta) + mean(A^2),
    L_A = B(theta) h^A(Gamma_theta) + sum mu nu log(1 - theta),

where Gamma_theta = logit(theta) / B(theta). The population risks replace
A by a kernel and the labelings by partitions of [0, 1].
"""

from __future__ import annotations

import logging
import warnings

import numpy as np

from dataclasses import dataclass
from numpy.typing import ArrayLike
from scipy.special import logit, xlogy
from typing import Optional, Tuple

from ..coclust.labeling import LabelingLike, as_labeling, indicator_matrix
from ..coclust.partition import (
    canonical_partitions,
    family_block_masses,
    threshold_family,
)
from ..coclust.summary import Direction, verify_array
from ..coclust.support import support_empirical
from ..core.exceptions import DimensionError, DomainError
from ..core.params import CoBlockParams
from ..global_settings import (
    ARRAY_FLOAT,
    DEFAULT_EPS,
    DEFAULT_SUPPORT_RESTARTS,
    DEFAULT_THRESHOLD_GRID,
)
from ..kernels.kernel_abc import KernelABC

__all__ = [
    "RiskReport",
    "KINDS",
    "b_and_gamma",
    "clamp_theta",
    "empirical_objective",
    "objective_at",
    "population_risk",
]

logger = logging.getLogger(__name__)

KINDS = ("ls", "pl")


@dataclass(frozen=True)
class RiskReport:
    """The value of an objective together with how it was attained.

    Parameters
    ----------
    value : float
        The objective value.
    kind : str
        "ls" (least squares) or "pl" (profile likelihood).
    b_value : float, optional
        The largest absolute log-odds B(theta) (profile likelihood only).
    witness : tuple, optional
        The optimal co-clustering (S, T) or partition pair (sigma, tau).
    approximate : bool
        True if the value comes from a heuristic or a grid search.
    """

    value: float
    kind: str
    b_value: Optional[float] = None
    witness: Optional[Tuple] = None
    approximate: bool = False


def verify_kind(kind: str) -> str:
    if kind not in KINDS:
        raise DomainError(f"Objective kind {kind!r} is not one of {KINDS}!")
    return kind


def clamp_theta(theta: ArrayLike, eps: float = DEFAULT_EPS) -> ARRAY_FLOAT:
    """Clamp connectivity probabilities into [eps, 1 - eps]."""
    if not 0.0 < eps < 0.5:
        raise DomainError(f"Clamp eps must be in (0, 1/2)! Got {eps}.")
    return np.clip(np.asarray(theta, dtype=np.float64), eps, 1.0 - eps)


def b_and_gamma(
    theta: ArrayLike, eps: float = DEFAULT_EPS
) -> Tuple[float, Direction]:
    """Compute B(theta) and the normalized log-odds direction Gamma_theta.

    Parameters
    ----------
    theta : ArrayLike
        The K-by-K connectivity matrix.
    eps : float, optional
        The clamp applied before taking log-odds.

    Returns
    -------
    Tuple[float, Direction]
        B = max |logit(theta)| and Gamma = logit(theta) / B (zero if B = 0).
    """
    log_odds = logit(clamp_theta(theta, eps))
    b_value = float(np.max(np.abs(log_odds)))
    if b_value == 0.0:
        return 0.0, Direction(np.zeros_like(log_odds))
    gamma = np.clip(log_odds / b_value, -1.0, 1.0)

    return b_value, Direction(gamma)


def objective_at(
    a: ArrayLike,
    s: LabelingLike,
    t: LabelingLike,
    theta: ArrayLike,
    kind: str,
    eps: float = DEFAULT_EPS,
) -> float:
    """Evaluate the objective at a fixed co-clustering.

    Returns
    -------
    float
        The mean squared error (ls, theta unclamped) or the mean Bernoulli
        log-likelihood (pl, theta clamped) of the array.
    """
    verify_kind(kind)
    a = verify_array(a)
    theta = np.asarray(theta, dtype=np.float64)
    num_classes = theta.shape[0]
    s = as_labeling(s, num_classes)
    t = as_labeling(t, num_classes)
    z_s = indicator_matrix(s)
    z_t = indicator_matrix(t)
    block_sums = z_s.T @ a @ z_t
    block_sizes = np.outer(z_s.sum(axis=0), z_t.sum(axis=0))

    if kind == "ls":
        square_sums = z_s.T @ (a**2) @ z_t
        total = np.sum(
            square_sums - 2.0 * theta * block_sums + theta**2 * block_sizes
        )
    else:
        theta = clamp_theta(theta, eps)
        total = np.sum(
            block_sums * np.log(theta)
            + (block_sizes - block_sums) * np.log(1.0 - theta)
        )

    return float(total / a.size)


def empirical_objective(
    a: ArrayLike,
    phi: CoBlockParams,
    kind: str,
    method: str = "alternating",
    restarts: int = DEFAULT_SUPPORT_RESTARTS,
    seed: int = 0,
    eps: float = DEFAULT_EPS,
) -> RiskReport:
    """Compute R_A(phi) or L_A(phi) through the support-function identity.

    Parameters
    ----------
    a : ArrayLike
        The m-by-n binary array.
    phi : CoBlockParams
        The co-blockmodel; its counts are rescaled to the array size.
    kind : str
        "ls" or "pl".
    method : str, optional
        The support-function method, "exact" or "alternating".
    restarts : int, optional
        The alternating restarts.
    seed : int, optional
        The seed of the alternating restarts.
    eps : float, optional
        The clamp on theta for the profile likelihood.

    Returns
    -------
    RiskReport
        The value and the optimal co-clustering (S, T).

    Raises
    ------
    InfeasibleCountsError
        If the proportions of phi cannot be realized on the array.
    """
    verify_kind(kind)
    a = verify_array(a)
    num_rows, num_cols = a.shape
    mu = phi.mu.rescale(num_rows)
    nu = phi.nu.rescale(num_cols)
    sizes = np.outer(mu.proportions, nu.proportions)
    theta = np.asarray(phi.theta)

    if kind == "ls":
        support = support_empirical(
            a, mu, nu, Direction(theta), method, restarts, seed
        )
        value = (
            np.sum(sizes * theta**2)
            - 2.0 * support.value
            + float(np.mean(a**2))
        )
        b_value = None
    else:
        b_value, gamma = b_and_gamma(theta, eps)
        support = support_empirical(a, mu, nu, gamma, method, restarts, seed)
        value = b_value * support.value + np.sum(
            sizes * np.log(1.0 - clamp_theta(theta, eps))
        )

    return RiskReport(
        value=float(value),
        kind=kind,
        b_value=b_value,
        witness=(support.s, support.t),
        approximate=method != "exact",
    )


def population_risk(
    kernel: KernelABC,
    phi: CoBlockParams,
    kind: str,
    eps: float = DEFAULT_EPS,
    grid_size: int = DEFAULT_THRESHOLD_GRID,
) -> RiskReport:
    """Compute the population risk R_omega(phi) or L_omega(phi).

    Parameters
    ----------
    kernel : KernelABC
        The kernel omega.
    phi : CoBlockParams
        A two-class co-blockmodel.
    kind : str
        "ls" or "pl".
    eps : float, optional
        The clamp on theta for the profile likelihood.
    grid_size : int, optional
        The number of interval starts per orientation, used when the kernel
        does not admit the four-case reduction.

    Returns
    -------
    RiskReport
        The value and the optimal partition pair (sigma, tau); the report is
        flagged approximate when the threshold grid was used.
    """
    verify_kind(kind)
    if phi.num_classes != 2:
        raise DimensionError(
            f"Population risks are available for two classes only! "
            f"Got {phi.num_classes}."
        )

    if kernel.supports_four_case:
        sigmas = canonical_partitions(phi.mu)
        taus = canonical_partitions(phi.nu)
        approximate = False
    else:
        warnings.warn(
            f"{kernel.description} does not admit the closed-form interval "
            f"reduction; the population risk is a threshold-grid "
            f"approximation (grid size {grid_size}).",
            UserWarning,
        )
        sigmas = threshold_family(phi.mu, grid_size)
        taus = threshold_family(phi.nu, grid_size)
        approximate = True

    masses = family_block_masses(kernel, sigmas, taus)
    sizes = np.outer(phi.mu.proportions, phi.nu.proportions)
    theta = np.asarray(phi.theta)

    if kind == "ls":
        values = (
            kernel.square_mass()
            - 2.0 * np.einsum("pqab,ab->pq", masses, theta)
            + np.sum(sizes * theta**2)
        )
        p, q = np.unravel_index(np.argmin(values), values.shape)
        b_value = None
    else:
        theta = clamp_theta(theta, eps)
        values = np.einsum("pqab,ab->pq", masses, logit(theta)) + np.sum(
            xlogy(sizes, 1.0 - theta)
        )
        p, q = np.unravel_index(np.argmax(values), values.shape)
        b_value = float(np.max(np.abs(logit(theta))))

    return RiskReport(
        value=float(values[p, q]),
        kind=kind,
        b_value=b_value,
        witness=(sigmas[p], taus[q]),
        approximate=approximate,
    )
