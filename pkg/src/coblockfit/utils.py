"""
Utility module used across package.

Random streams are derived from a user seed and a tuple of integer keys
(a role, a cell index, a replicate index, ...) through NumPy's
``SeedSequence``; every stream drives its own counter-based ``Philox``
generator so that no two roles share random numbers.
"""

import csv
import os

import numpy as np

from numpy.random import Generator, Philox, SeedSequence
from typing import Any, Iterable, Sequence, Union

__all__ = [
    "make_rng",
    "derive_seed",
    "format_value",
    "write_csv",
    "ROLE_XI",
    "ROLE_ZETA",
    "ROLE_EDGES",
    "ROLE_INIT",
    "ROLE_ANNEAL",
    "ROLE_SUPPORT",
    "ROLE_REPLICATE",
    "ROLE_DIRECTIONS",
]

# Stream roles used by the array sampler
ROLE_XI = 1
ROLE_ZETA = 2
ROLE_EDGES = 3
# Stream roles used by the estimators and the harness
ROLE_INIT = 10
ROLE_ANNEAL = 11
ROLE_SUPPORT = 12
ROLE_REPLICATE = 20
ROLE_DIRECTIONS = 21


def _seed_sequence(seed: int, *keys: int) -> SeedSequence:
    if seed < 0:
        raise ValueError(f"Seed must be non-negative! Got {seed}.")
    spawn_key = tuple(int(key) for key in keys)

    return SeedSequence(entropy=int(seed), spawn_key=spawn_key)


def make_rng(seed: int, *keys: int) -> Generator:
    """Create an independent generator for a seed and a tuple of keys.

    Parameters
    ----------
    seed : int
        The user seed (non-negative, at most 64 bits in practice).
    *keys : int
        Integer keys that identify the stream (role, indices).

    Returns
    -------
    Generator
        A NumPy generator backed by the counter-based Philox bit generator.
    """
    return Generator(Philox(_seed_sequence(seed, *keys)))


def derive_seed(seed: int, *keys: int) -> int:
    """Derive a 63-bit child seed for a seed and a tuple of keys."""
    state = _seed_sequence(seed, *keys).generate_state(1, np.uint64)[0]

    return int(state >> np.uint64(1))


def format_value(value: Any) -> str:
    """Format a CSV cell; floats keep 17 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"

    return str(value)


def write_csv(
    path: Union[str, os.PathLike],
    columns: Sequence[str],
    rows: Iterable[Sequence[Any]],
) -> None:
    """Write rows with a header, '.' decimals and LF line endings."""
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(value) for value in row])
