"""
Module with the best blockmodel approximation of a kernel and the
co-cluster fidelity of a fitted blockmodel.

For a monotone separable kernel and two classes, the best blockmodel with
row and column proportions (mu, nu) is induced by one of the four pairs of
canonical interval partitions, with theta set to the block means. The
search enumerates the proportions on a grid of resolution 1/R; all block
masses come from one table of cumulative kernel masses on {k / R}.
"""

from __future__ import annotations

import logging
import warnings

import numpy as np

from .divergence import bernoulli_kl
from .objectives import clamp_theta, verify_kind
from ..coclust.partition import family_block_masses, threshold_family
from ..core.exceptions import DimensionError, DomainError
from ..core.params import ClassCounts, CoBlockParams
from ..global_settings import (
    ARRAY_FLOAT,
    DEFAULT_EPS,
    DEFAULT_PHI_RESOLUTION,
    DEFAULT_THRESHOLD_GRID,
)
from ..kernels.kernel_abc import KernelABC

__all__ = ["phi_star_search", "cocluster_fidelity", "TIE_TOL"]

logger = logging.getLogger(__name__)

# Candidates within this distance of the best value count as ties
TIE_TOL = 1e-12


def phi_star_search(
    kernel: KernelABC,
    resolution: int = DEFAULT_PHI_RESOLUTION,
    kind: str = "pl",
    eps: float = DEFAULT_EPS,
) -> CoBlockParams:
    """Search the best two-class blockmodel approximation of a kernel.

    Parameters
    ----------
    kernel : KernelABC
        The kernel to approximate.
    resolution : int, optional
        The proportion grid is {0, 1/R, ..., 1} with R = resolution.
    kind : str, optional
        "pl" maximizes the population profile likelihood; "ls" minimizes
        the population squared risk.
    eps : float, optional
        The clamp on the block means inside the profile likelihood.

    Returns
    -------
    CoBlockParams
        The best blockmodel with counts over R; class 1 occupies the lower
        interval on both sides. Ties are resolved towards the first
        candidate in the order (mu_1, nu_1, row orientation, column
        orientation).
    """
    verify_kind(kind)
    if resolution < 1:
        raise DomainError(f"Resolution must be positive! Got {resolution}.")
    if not kernel.supports_four_case:
        warnings.warn(
            f"{kernel.description} does not admit the closed-form interval "
            f"reduction; the search covers canonical partitions only.",
            UserWarning,
        )

    grid = np.arange(resolution + 1)
    table = kernel.cumulative_mass(grid / resolution, grid / resolution)

    # Class 1 index intervals [lower, upper] for each orientation and size
    lower = np.stack([np.zeros_like(grid), resolution - grid])
    upper = np.stack([grid, np.full_like(grid, resolution)])
    r0 = lower[:, :, np.newaxis, np.newaxis]
    r1 = upper[:, :, np.newaxis, np.newaxis]
    c0 = lower[np.newaxis, np.newaxis, :, :]
    c1 = upper[np.newaxis, np.newaxis, :, :]

    total = table[-1, -1]
    row_band = table[r1, -1] - table[r0, -1]
    col_band = table[-1, c1] - table[-1, c0]
    mass_11 = table[r1, c1] - table[r0, c1] - table[r1, c0] + table[r0, c0]
    masses = np.stack(
        [
            np.stack([mass_11, row_band - mass_11], axis=-1),
            np.stack(
                [col_band - mass_11, total - row_band - col_band + mass_11],
                axis=-1,
            ),
        ],
        axis=-2,
    )

    mu_1 = (grid / resolution)[np.newaxis, :, np.newaxis, np.newaxis]
    nu_1 = (grid / resolution)[np.newaxis, np.newaxis, np.newaxis, :]
    mus = np.stack([mu_1, 1.0 - mu_1], axis=-1)[..., :, np.newaxis]
    nus = np.stack([nu_1, 1.0 - nu_1], axis=-1)[..., np.newaxis, :]
    sizes = mus * nus
    means = np.full_like(masses, 0.5)
    np.divide(masses, sizes, out=means, where=sizes > 0)
    means = np.clip(means, 0.0, 1.0)

    if kind == "pl":
        clamped = clamp_theta(means, eps)
        values = np.sum(
            masses * np.log(clamped) + (sizes - masses) * np.log(1 - clamped),
            axis=(-2, -1),
        )
    else:
        squares = np.zeros_like(masses)
        np.divide(masses**2, sizes, out=squares, where=sizes > 0)
        values = np.sum(squares, axis=(-2, -1))

    # Search order (mu_1, nu_1, row orientation, column orientation)
    ordered = values.transpose(1, 3, 0, 2)
    flat = ordered.ravel()
    first = int(np.flatnonzero(flat >= flat.max() - TIE_TOL)[0])
    k, l, i, j = np.unravel_index(first, ordered.shape)
    theta = means[i, k, j, l]
    row_counts = np.array([k, resolution - k])
    col_counts = np.array([l, resolution - l])

    # Orientation 2 puts class 1 on the upper interval; swap to canonical
    if i == 1:
        theta = theta[::-1, :]
        row_counts = row_counts[::-1]
    if j == 1:
        theta = theta[:, ::-1]
        col_counts = col_counts[::-1]
    phi_star = CoBlockParams(
        ClassCounts(row_counts), ClassCounts(col_counts), theta
    )
    logger.info(
        "Best %s blockmodel of %s found at mu=%s, nu=%s",
        kind,
        kernel.description,
        phi_star.mu.proportions,
        phi_star.nu.proportions,
    )

    return phi_star


def cocluster_fidelity(
    kernel: KernelABC,
    phi_hat: CoBlockParams,
    kind: str = "pl",
    eps: float = DEFAULT_EPS,
    grid_size: int = DEFAULT_THRESHOLD_GRID,
) -> float:
    """Measure how well population co-clusters match a fitted blockmodel.

    The discrepancy sum_ab mu_a nu_b D(m_ab / (mu_a nu_b) || theta_ab),
    with m the kernel block masses (or the squared difference for least
    squares), is minimized over the interval partition family with the
    fitted proportions.

    Returns
    -------
    float
        The smallest discrepancy, at least zero.
    """
    verify_kind(kind)
    if phi_hat.num_classes != 2:
        raise DimensionError(
            f"Co-cluster fidelity is available for two classes only! "
            f"Got {phi_hat.num_classes}."
        )
    sigmas = threshold_family(phi_hat.mu, grid_size)
    taus = threshold_family(phi_hat.nu, grid_size)
    masses = family_block_masses(kernel, sigmas, taus)
    sizes = np.outer(phi_hat.mu.proportions, phi_hat.nu.proportions)
    means = _block_means(masses, sizes)
    theta = np.asarray(phi_hat.theta)

    if kind == "pl":
        discrepancy = bernoulli_kl(means, theta, eps)
    else:
        discrepancy = (means - theta) ** 2
    values = np.sum(sizes * discrepancy, axis=(-2, -1))
    logger.debug("Co-cluster fidelity %.12g", values.min())

    return max(float(values.min()), 0.0)


def _block_means(masses: ARRAY_FLOAT, sizes: ARRAY_FLOAT) -> ARRAY_FLOAT:
    means = np.zeros_like(masses)
    np.divide(masses, sizes, out=means, where=sizes > 0)

    return np.clip(means, 0.0, 1.0)
