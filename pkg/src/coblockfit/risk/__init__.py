"""
The risk subpackage: empirical objectives, population risks, divergences,
and the best blockmodel approximation of a kernel.
"""

from ..core.params import CoBlockParams
from .objectives import (
    RiskReport,
    b_and_gamma,
    clamp_theta,
    empirical_objective,
    objective_at,
    population_risk,
)
from .divergence import bernoulli_kl, avg_kl, kl_small_rho_limit
from .oracle import phi_star_search, cocluster_fidelity

__all__ = [
    "CoBlockParams",
    "RiskReport",
    "b_and_gamma",
    "clamp_theta",
    "empirical_objective",
    "objective_at",
    "population_risk",
    "bernoulli_kl",
    "avg_kl",
    "kl_small_rho_limit",
    "phi_star_search",
    "cocluster_fidelity",
]
