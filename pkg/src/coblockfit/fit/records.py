"""
Module for reading and writing fit records.

A record is a plain-text file with one item per line: the number of
classes K, the objective kind, the objective value, the row proportions,
the column proportions, the K^2 entries of theta in row-major order, and
the row and column labelings.
"""

from __future__ import annotations

import os

import numpy as np

from typing import Union

from .anneal import FitResult
from ..coclust.labeling import Labeling
from ..core.exceptions import DimensionError, DomainError
from ..core.params import CoBlockParams

__all__ = ["write_fit_record", "read_fit_record"]

# Proportions in a record must agree with the labelings up to rounding
PROPORTION_TOL = 1e-12


def _format_floats(values) -> str:
    return " ".join(f"{value:.17g}" for value in np.ravel(values))


def write_fit_record(path: Union[str, os.PathLike], result: FitResult) -> None:
    """Write a fit result to a plain-text record."""
    phi = result.phi_hat
    lines = [
        str(phi.num_classes),
        result.kind,
        f"{result.objective:.17g}",
        _format_floats(phi.mu.proportions),
        _format_floats(phi.nu.proportions),
        _format_floats(phi.theta),
        str(result.s),
        str(result.t),
    ]
    with open(path, "w", newline="\n") as f:
        f.write("\n".join(lines) + "\n")


def read_fit_record(path: Union[str, os.PathLike]) -> FitResult:
    """Read a fit record written by ``write_fit_record``.

    Raises
    ------
    DimensionError
        If the record is incomplete or its parts have inconsistent sizes.
    DomainError
        If the proportions disagree with the labelings.
    """
    with open(path, "r") as f:
        lines = [line.strip() for line in f if line.strip()]
    if len(lines) != 8:
        raise DimensionError(
            f"A fit record has 8 lines! Got {len(lines)} in {path}."
        )

    num_classes = int(lines[0])
    kind = lines[1]
    objective = float(lines[2])
    mu = np.array(lines[3].split(), dtype=np.float64)
    nu = np.array(lines[4].split(), dtype=np.float64)
    theta = np.array(lines[5].split(), dtype=np.float64)
    if theta.size != num_classes**2:
        raise DimensionError(
            f"Expected {num_classes**2} connectivity entries! "
            f"Got {theta.size}."
        )
    s = Labeling(np.array(lines[6].split(), dtype=np.int64), num_classes)
    t = Labeling(np.array(lines[7].split(), dtype=np.int64), num_classes)

    phi_hat = CoBlockParams(s.counts, t.counts, theta.reshape(num_classes, -1))
    for written, labeling in ((mu, s), (nu, t)):
        proportions = labeling.counts.proportions
        if written.shape != proportions.shape or np.any(
            np.abs(written - proportions) > PROPORTION_TOL
        ):
            raise DomainError(
                f"Proportions {written} do not match the labeling "
                f"proportions {proportions}!"
            )

    return FitResult(
        phi_hat=phi_hat, s=s, t=t, objective=objective, kind=kind
    )
