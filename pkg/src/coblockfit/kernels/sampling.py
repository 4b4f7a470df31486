"""
Module for sampling separately exchangeable bipartite arrays.

Row latents xi, column latents zeta, and the Bernoulli draws of the edges
each consume their own random stream derived from the seed, so keeping or
discarding the probability matrix never changes the sampled array.
"""

from __future__ import annotations

import logging
import os

import numpy as np

from dataclasses import dataclass
from numpy.typing import ArrayLike
from typing import Optional, Union

from .kernel_abc import KernelABC
from ..core.exceptions import DimensionError, DomainError
from ..global_settings import ARRAY_INT
from ..utils import ROLE_EDGES, ROLE_XI, ROLE_ZETA, make_rng

__all__ = [
    "LatentSample",
    "SampledArray",
    "sample_bipartite",
    "rho_schedule",
    "read_adjacency",
    "write_adjacency",
]

logger = logging.getLogger(__name__)

RHO_MODES = ("dense", "poly", "polylog")


@dataclass(frozen=True, eq=False)
class LatentSample:
    """Latent positions of the row and column nodes.

    Parameters
    ----------
    xi : ArrayLike
        The m row latents in [0, 1].
    zeta : ArrayLike
        The n column latents in [0, 1].
    seed : int, optional
        The seed the latents were drawn with, if any.
    """

    xi: ArrayLike
    zeta: ArrayLike
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        for name in ("xi", "zeta"):
            values = np.array(getattr(self, name), dtype=np.float64)
            if values.ndim != 1 or values.size == 0:
                raise DimensionError(
                    f"Latent vector {name!r} must be a non-empty vector! "
                    f"Got shape {values.shape}."
                )
            if not np.all(np.logical_and(values >= 0.0, values <= 1.0)):
                raise DomainError(f"Latent vector {name!r} is outside [0, 1]!")
            values.setflags(write=False)
            object.__setattr__(self, name, values)


@dataclass(frozen=True, eq=False)
class SampledArray:
    """A binary bipartite array with its latent positions.

    Parameters
    ----------
    a : ArrayLike
        The m-by-n binary array.
    latents : LatentSample, optional
        The latent positions that generated the array.
    w : ArrayLike, optional
        The m-by-n matrix of edge probabilities.
    """

    a: ArrayLike
    latents: Optional[LatentSample] = None
    w: Optional[ArrayLike] = None

    @property
    def shape(self):
        return np.asarray(self.a).shape


def sample_bipartite(
    kernel: KernelABC,
    m: int,
    n: int,
    seed: int,
    keep_w: bool = False,
) -> SampledArray:
    """Sample a separately exchangeable array from a kernel.

    Parameters
    ----------
    kernel : KernelABC
        The generating kernel.
    m : int
        The number of row nodes.
    n : int
        The number of column nodes.
    seed : int
        The seed; the sample is fully determined by it.
    keep_w : bool, optional
        If True, the probability matrix is stored with the sample.

    Returns
    -------
    SampledArray
        The sampled array (dtype int8) and its latents.

    Raises
    ------
    DimensionError
        If m or n is smaller than one.
    """
    if m < 1 or n < 1:
        raise DimensionError(
            f"Array dimensions must be positive! Got ({m}, {n})."
        )

    xi = make_rng(seed, ROLE_XI).random(m)
    zeta = make_rng(seed, ROLE_ZETA).random(n)
    w = kernel.evaluate(xi[:, np.newaxis], zeta[np.newaxis, :])
    uniforms = make_rng(seed, ROLE_EDGES).random((m, n))
    a = (uniforms < w).astype(np.int8)
    logger.debug(
        "Sampled %d-by-%d array with density %.6f (seed=%d)",
        m,
        n,
        a.mean(),
        seed,
    )

    return SampledArray(
        a=a,
        latents=LatentSample(xi, zeta, seed),
        w=w if keep_w else None,
    )


def rho_schedule(mode: str, n: int) -> float:
    """Compute the sparsity scale for a schedule and a size.

    Parameters
    ----------
    mode : str
        One of "dense" (1/2), "poly" (n^(-2/3)), or "polylog"
        (min(1, (ln n)^2 / n)).
    n : int
        The number of nodes, at least 2.

    Returns
    -------
    float
        The sparsity scale in (0, 1].
    """
    if n < 2:
        raise DomainError(f"Schedules require n >= 2! Got {n}.")
    if mode == "dense":
        return 0.5
    if mode == "poly":
        return float(n ** (-2.0 / 3.0))
    if mode == "polylog":
        return float(min(1.0, np.log(n) ** 2 / n))

    raise DomainError(
        f"Sparsity schedule {mode!r} is not one of {list(RHO_MODES)}!"
    )


def write_adjacency(
    path: Union[str, os.PathLike],
    a: ArrayLike,
    latents: Optional[LatentSample] = None,
) -> None:
    """Write a binary array (and optionally its latents) to a text file.

    The first line holds "m n", followed by m lines of n characters from
    {0, 1}; the latents, if given, follow as two lines of floats.
    """
    a = _verify_binary(np.asarray(a))
    lines = [f"{a.shape[0]} {a.shape[1]}"]
    lines.extend("".join("1" if v else "0" for v in row) for row in a)
    if latents is not None:
        lines.append(" ".join(f"{v:.17g}" for v in np.asarray(latents.xi)))
        lines.append(" ".join(f"{v:.17g}" for v in np.asarray(latents.zeta)))

    with open(path, "w", newline="\n") as f:
        f.write("\n".join(lines) + "\n")


def read_adjacency(path: Union[str, os.PathLike]) -> SampledArray:
    """Read a binary array written by ``write_adjacency``.

    Raises
    ------
    DimensionError
        If the header does not match the rows that follow.
    DomainError
        If a character other than 0 or 1 appears in the array.
    """
    with open(path, "r") as f:
        lines = [line.strip() for line in f if line.strip()]
    if not lines:
        raise DimensionError(f"Adjacency file {path} is empty!")

    header = lines[0].split()
    if len(header) != 2:
        raise DimensionError(f"Expected header 'm n'! Got {lines[0]!r}.")
    m, n = int(header[0]), int(header[1])

    rows = lines[1 : m + 1]
    if len(rows) != m or any(len(row) != n for row in rows):
        raise DimensionError(
            f"Expected {m} rows of {n} characters in {path}!"
        )
    if any(set(row) - {"0", "1"} for row in rows):
        raise DomainError("Adjacency rows must consist of 0 and 1 only!")
    a = np.array([[ch == "1" for ch in row] for row in rows], dtype=np.int8)

    latents = None
    extra = lines[m + 1 :]
    if extra:
        if len(extra) != 2:
            raise DimensionError(
                f"Expected two latent lines after the array! "
                f"Got {len(extra)}."
            )
        xi = np.array(extra[0].split(), dtype=np.float64)
        zeta = np.array(extra[1].split(), dtype=np.float64)
        if len(xi) != m or len(zeta) != n:
            raise DimensionError("Latent lines do not match the array shape!")
        latents = LatentSample(xi, zeta)

    return SampledArray(a=a, latents=latents)


def _verify_binary(a: ARRAY_INT) -> ARRAY_INT:
    if a.ndim != 2 or a.size == 0:
        raise DimensionError(
            f"Array must be a non-empty matrix! Got shape {a.shape}."
        )
    if not np.all(np.logical_or(a == 0, a == 1)):
        raise DomainError("Array entries must be 0 or 1!")

    return a
