"""
Module with the support-function rate experiment.

For arrays of growing size sampled from a sigmoid kernel, the empirical
support function h^A (alternating maximization) is compared with the
population support function h^omega (four-case reduction) along a set of
sampled directions. The supremum of the gap over the directions
approximates the distance between the block summary hulls; its median
should decay at least as fast as n^(-1/4).
"""

from __future__ import annotations

import logging
import os

import numpy as np

from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from .config import ExperimentConfig, worker_count
from .sweep import run_tasks
from ..coclust.summary import Direction
from ..coclust.support import support_empirical, support_oracle
from ..core.exceptions import ConfigError
from ..core.params import ClassCounts
from ..kernels.kernel_abc import KernelABC
from ..kernels.sampling import rho_schedule, sample_bipartite
from ..kernels.sigmoid import make_sigmoid_kernel
from ..utils import ROLE_DIRECTIONS, ROLE_REPLICATE, derive_seed, write_csv

__all__ = [
    "RateRow",
    "RateSummaryRow",
    "RATE_COLUMNS",
    "RATE_SUMMARY_COLUMNS",
    "run_rate_experiment",
    "rate_directions",
    "support_gap",
    "summarize_rate",
    "summary_path",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RateRow:
    """The largest support-function gap of one replicate."""

    beta: float
    rho_mode: str
    rho_value: float
    n: int
    m: int
    rep: int
    seed: int
    num_directions: int
    sup_gap: float
    worst_direction: int

    @property
    def sort_key(self):
        return (self.beta, self.rho_mode, self.n, self.rep)


@dataclass(frozen=True)
class RateSummaryRow:
    """The median gap of one size, with the slope of its (beta, rho) group."""

    beta: float
    rho_mode: str
    n: int
    median_gap: float
    iqr_gap: float
    slope: float


RATE_COLUMNS = [item.name for item in fields(RateRow)]
RATE_SUMMARY_COLUMNS = [item.name for item in fields(RateSummaryRow)]


@dataclass(frozen=True)
class _RateTask:
    kernel: KernelABC
    beta: float
    rho_mode: str
    num_rows: int
    num_cols: int
    rep: int
    seed: int
    num_directions: int
    restarts: int


def rate_directions(num_directions: int, seed: int) -> List[Direction]:
    """The identity, the all-ones, and d random 2-by-2 directions."""
    directions = [Direction.identity(2), Direction.ones(2)]
    directions.extend(
        Direction.random(2, seed, ROLE_DIRECTIONS, idx)
        for idx in range(num_directions)
    )

    return directions


def support_gap(
    a,
    kernel: KernelABC,
    directions: Sequence[Direction],
    restarts: int,
    seed: int,
) -> Tuple[float, int]:
    """The largest |h^A - h^omega| over directions and where it occurs.

    The rows and columns of A are split as (m // 2, m - m // 2) and
    (n // 2, n - n // 2). The population side uses the same proportions,
    so odd sizes compare like with like.
    """
    num_rows, num_cols = np.shape(a)
    mu = ClassCounts((num_rows // 2, num_rows - num_rows // 2))
    nu = ClassCounts((num_cols // 2, num_cols - num_cols // 2))

    gaps = []
    for gamma in directions:
        empirical = support_empirical(
            a, mu, nu, gamma, "alternating", restarts, seed
        )
        population = support_oracle(kernel, mu, nu, gamma, True)
        gaps.append(abs(empirical.value - population.value))
    worst = int(np.argmax(gaps))

    return gaps[worst], worst


def summary_path(out: Union[str, os.PathLike]) -> Path:
    """The companion summary file ``<stem>.summary.csv`` of an output."""
    out = Path(out)
    return out.with_name(f"{out.stem}.summary.csv")


def run_rate_experiment(
    config: ExperimentConfig,
    out: Optional[Union[str, os.PathLike]] = None,
) -> Tuple[List[RateRow], List[RateSummaryRow]]:
    """Run the support-function rate experiment.

    Parameters
    ----------
    config : ExperimentConfig
        The experiment settings; ``n_grid`` must be ascending and the
        kernels unclamped.
    out : Union[str, os.PathLike], optional
        The output path; ``config.output`` is used if not given. The
        summary is written next to it as ``<stem>.summary.csv``.

    Returns
    -------
    Tuple[List[RateRow], List[RateSummaryRow]]
        The per-replicate rows and the per-size summary.

    Raises
    ------
    ConfigError
        If the size grid is not strictly ascending.
    UnsupportedKernelError
        If a kernel of the grid is clamped.
    """
    n_grid = list(config.n_grid)
    if any(n0 >= n1 for n0, n1 in zip(n_grid, n_grid[1:])):
        raise ConfigError(
            f"The rate experiment needs an ascending n_grid! Got {n_grid}."
        )

    tasks = []
    for beta_idx, beta in enumerate(config.betas):
        for mode_idx, rho_mode in enumerate(config.rho_modes):
            for n_idx, num_cols in enumerate(n_grid):
                kernel = make_sigmoid_kernel(
                    beta, rho_schedule(rho_mode, num_cols)
                )
                for rep in range(config.reps):
                    seed = derive_seed(
                        config.seed,
                        ROLE_REPLICATE,
                        beta_idx,
                        mode_idx,
                        n_idx,
                        rep,
                    )
                    tasks.append(
                        _RateTask(
                            kernel=kernel,
                            beta=beta,
                            rho_mode=rho_mode,
                            num_rows=config.num_rows(num_cols),
                            num_cols=num_cols,
                            rep=rep,
                            seed=seed,
                            num_directions=config.directions,
                            restarts=config.support_restarts,
                        )
                    )

    rows = sorted(
        run_tasks(_run_replicate, tasks, worker_count()),
        key=lambda row: row.sort_key,
    )
    summary = summarize_rate(rows)

    out = out or config.output
    if out:
        write_csv(out, RATE_COLUMNS, (astuple(row) for row in rows))
        write_csv(
            summary_path(out),
            RATE_SUMMARY_COLUMNS,
            (astuple(row) for row in summary),
        )
        logger.info("Wrote %d rate rows to %s", len(rows), out)

    return rows, summary


def summarize_rate(rows: Sequence[RateRow]) -> List[RateSummaryRow]:
    """Medians per size and the log-log slope of the medians per group."""
    groups = {}
    for row in rows:
        key = (row.beta, row.rho_mode)
        groups.setdefault(key, {}).setdefault(row.n, []).append(row.sup_gap)

    summary = []
    for (beta, rho_mode), by_size in sorted(groups.items()):
        sizes = sorted(by_size)
        medians = [float(np.median(by_size[n])) for n in sizes]
        slope = _loglog_slope(sizes, medians)
        logger.info(
            "Rate slope for beta=%s, %s: %.4g", beta, rho_mode, slope
        )
        for n, median in zip(sizes, medians):
            q1, q3 = np.percentile(by_size[n], [25, 75])
            summary.append(
                RateSummaryRow(
                    beta=beta,
                    rho_mode=rho_mode,
                    n=n,
                    median_gap=median,
                    iqr_gap=float(q3 - q1),
                    slope=slope,
                )
            )

    return summary


def _loglog_slope(sizes: Sequence[int], medians: Sequence[float]) -> float:
    """Least-squares slope of log(median) against log(n); NaN if undefined."""
    if len(sizes) < 2 or min(medians) <= 0.0:
        return float("nan")
    slope, _ = np.polyfit(np.log(sizes), np.log(medians), 1)

    return float(slope)


def _run_replicate(task: _RateTask) -> RateRow:
    sample = sample_bipartite(
        task.kernel, task.num_rows, task.num_cols, task.seed
    )
    directions = rate_directions(task.num_directions, task.seed)
    gap, worst = support_gap(
        sample.a, task.kernel, directions, task.restarts, task.seed
    )

    return RateRow(
        beta=task.beta,
        rho_mode=task.rho_mode,
        rho_value=float(task.kernel.rho),
        n=task.num_cols,
        m=task.num_rows,
        rep=task.rep,
        seed=task.seed,
        num_directions=len(directions),
        sup_gap=gap,
        worst_direction=worst,
    )
