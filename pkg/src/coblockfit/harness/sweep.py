"""
Module with the simulation sweep over sigmoid kernels.

For every grid cell (beta, sparsity schedule, n) and replicate, an array is
sampled from the sigmoid kernel, a two-class co-blockmodel is fitted, and
the fit is compared with the best blockmodel approximation phi* of the
kernel: relative excess risk, average divergence normalized by the sparsity
scale, and co-cluster fidelity. Replicates may run in worker processes;
rows are sorted before writing so that the output does not depend on the
scheduling.
"""

from __future__ import annotations

import logging
import os
import time

from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from typing import Callable, Dict, List, Optional, Sequence, TypeVar, Union

from .config import ExperimentConfig, worker_count
from ..core.params import CoBlockParams
from ..fit.anneal import fit_coblockmodel
from ..fit.config import FitConfig
from ..kernels.block import BlockKernel
from ..kernels.sampling import rho_schedule, sample_bipartite
from ..kernels.sigmoid import SigmoidSeparableKernel, make_sigmoid_kernel
from ..risk.divergence import avg_kl, kl_small_rho_limit
from ..risk.objectives import population_risk
from ..risk.oracle import cocluster_fidelity, phi_star_search
from ..utils import ROLE_REPLICATE, derive_seed, write_csv

__all__ = ["SweepRow", "SWEEP_COLUMNS", "run_sweep", "kl_limit", "run_tasks"]

logger = logging.getLogger(__name__)

NUM_CLASSES = 2

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class SweepRow:
    """One record of a simulation sweep."""

    beta: float
    rho_mode: str
    rho_value: float
    n: int
    m: int
    rep: int
    seed: int
    kind: str
    objective: float
    l_star: float
    excess_risk_rel: float
    kl_normalized: float
    kl_limit: float
    fidelity: float
    runtime_ms: int

    @property
    def sort_key(self):
        return (self.beta, self.rho_mode, self.n, self.rep, self.kind)


SWEEP_COLUMNS = [item.name for item in fields(SweepRow)]


@dataclass(frozen=True)
class _CellTask:
    """Everything a worker needs to run one replicate of a cell."""

    kernel: SigmoidSeparableKernel
    rho_mode: str
    num_rows: int
    num_cols: int
    rep: int
    seed: int
    kinds: Sequence[str]
    fit_config: FitConfig
    phi_stars: Dict[str, CoBlockParams]
    l_stars: Dict[str, float]
    kl_limit: float
    oracle_grid: int
    timing: bool


def run_tasks(
    func: Callable[[T], R], tasks: Sequence[T], workers: int
) -> List[R]:
    """Map a function over tasks, in worker processes if workers > 1."""
    if workers <= 1 or len(tasks) <= 1:
        return [func(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        return list(pool.map(func, tasks))


def kl_limit(beta: float, resolution: int, eps: float) -> float:
    """The small-sparsity divergence limit of phi* for a shape exponent."""
    base = make_sigmoid_kernel(beta, 1.0)
    phi_star = phi_star_search(base, resolution, "pl", eps)

    return kl_small_rho_limit(base, BlockKernel(phi_star))


def run_sweep(
    config: ExperimentConfig,
    out: Optional[Union[str, os.PathLike]] = None,
) -> List[SweepRow]:
    """Run a simulation sweep and write its rows to a CSV file.

    Parameters
    ----------
    config : ExperimentConfig
        The experiment settings.
    out : Union[str, os.PathLike], optional
        The output path; ``config.output`` is used if not given, and
        nothing is written if both are empty.

    Returns
    -------
    List[SweepRow]
        The rows, sorted by (beta, rho_mode, n, rep, kind).
    """
    limits = {
        beta: kl_limit(beta, config.phi_grid, config.eps)
        for beta in config.betas
    }

    tasks = []
    for beta_idx, beta in enumerate(config.betas):
        for mode_idx, rho_mode in enumerate(config.rho_modes):
            for n_idx, num_cols in enumerate(config.n_grid):
                rho = rho_schedule(rho_mode, num_cols)
                kernel = make_sigmoid_kernel(beta, rho)
                phi_stars = {
                    kind: phi_star_search(
                        kernel, config.phi_grid, kind, config.eps
                    )
                    for kind in config.kinds
                }
                l_stars = {
                    kind: population_risk(
                        kernel,
                        phi_stars[kind],
                        kind,
                        config.eps,
                        config.oracle_grid,
                    ).value
                    for kind in config.kinds
                }
                logger.info(
                    "Cell beta=%s, %s (rho=%.6g), n=%d: L*=%s",
                    beta,
                    rho_mode,
                    rho,
                    num_cols,
                    l_stars,
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
                        _CellTask(
                            kernel=kernel,
                            rho_mode=rho_mode,
                            num_rows=config.num_rows(num_cols),
                            num_cols=num_cols,
                            rep=rep,
                            seed=seed,
                            kinds=config.kinds,
                            fit_config=config.fit_config(seed),
                            phi_stars=phi_stars,
                            l_stars=l_stars,
                            kl_limit=limits[beta],
                            oracle_grid=config.oracle_grid,
                            timing=config.timing,
                        )
                    )

    results = run_tasks(_run_replicate, tasks, worker_count())
    rows = sorted(
        (row for result in results for row in result),
        key=lambda row: row.sort_key,
    )

    out = out or config.output
    if out:
        write_csv(out, SWEEP_COLUMNS, (astuple(row) for row in rows))
        logger.info("Wrote %d sweep rows to %s", len(rows), out)

    return rows


def _run_replicate(task: _CellTask) -> List[SweepRow]:
    """Sample one array and fit every estimator kind to it."""
    kernel = task.kernel
    sample = sample_bipartite(kernel, task.num_rows, task.num_cols, task.seed)
    eps = task.fit_config.eps

    rows = []
    for kind in task.kinds:
        start = time.perf_counter()
        fit = fit_coblockmodel(
            sample.a,
            NUM_CLASSES,
            kind,  # type: ignore
            task.fit_config,
            latents=sample.latents,
        )
        runtime_ms = int(round(1000 * (time.perf_counter() - start)))

        l_star = task.l_stars[kind]
        l_hat = population_risk(
            kernel, fit.phi_hat, kind, eps, task.oracle_grid
        ).value
        if kind == "pl":
            excess = (l_star - l_hat) / abs(l_star)
        else:
            excess = (l_hat - l_star) / l_star
        kl_normalized = avg_kl(
            kernel, fit.phi_hat, eps, task.oracle_grid
        ) / kernel.rho
        fidelity = cocluster_fidelity(
            kernel, fit.phi_hat, kind, eps, task.oracle_grid
        )

        rows.append(
            SweepRow(
                beta=kernel.beta,
                rho_mode=task.rho_mode,
                rho_value=kernel.rho,
                n=task.num_cols,
                m=task.num_rows,
                rep=task.rep,
                seed=task.seed,
                kind=kind,
                objective=fit.objective,
                l_star=l_star,
                excess_risk_rel=excess,
                kl_normalized=kl_normalized,
                kl_limit=task.kl_limit,
                fidelity=fidelity,
                runtime_ms=runtime_ms if task.timing else 0,
            )
        )

    return rows
