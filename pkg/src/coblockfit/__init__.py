"""
This is the package init for coblockfit.
"""

import logging
import sys

from .core import ClassCounts, CoBlockParams

from . import kernels
from .kernels import (
    KernelABC,
    SigmoidSeparableKernel,
    BlockKernel,
    GridKernel,
    make_sigmoid_kernel,
    constant_kernel,
    sample_bipartite,
    rho_schedule,
)

from . import coclust
from .coclust import (
    Labeling,
    Direction,
    BlockSummary,
    block_summary,
    assign_side,
    IntervalPartition,
    support_empirical,
    support_oracle,
)

from . import risk
from .risk import (
    empirical_objective,
    population_risk,
    avg_kl,
    phi_star_search,
    cocluster_fidelity,
)

from . import fit
from .fit import FitConfig, FitResult, fit_coblockmodel

from . import harness
from .harness import ExperimentConfig, run_sweep, run_rate_experiment

if sys.version_info >= (3, 8):
    from importlib import metadata
else:  # pragma: no cover
    import importlib_metadata as metadata

__version__ = metadata.version("coblockfit")

logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = [
    "ClassCounts",
    "CoBlockParams",
    "kernels",
    "KernelABC",
    "SigmoidSeparableKernel",
    "BlockKernel",
    "GridKernel",
    "make_sigmoid_kernel",
    "constant_kernel",
    "sample_bipartite",
    "rho_schedule",
    "coclust",
    "Labeling",
    "Direction",
    "BlockSummary",
    "block_summary",
    "assign_side",
    "IntervalPartition",
    "support_empirical",
    "support_oracle",
    "risk",
    "empirical_objective",
    "population_risk",
    "avg_kl",
    "phi_star_search",
    "cocluster_fidelity",
    "fit",
    "FitConfig",
    "FitResult",
    "fit_coblockmodel",
    "harness",
    "ExperimentConfig",
    "run_sweep",
    "run_rate_experiment",
]
