"""
Module with the configuration of the co-blockmodel fitting routine.

The annealing schedule is geometric: the temperature starts at
``initial_temperature`` and is multiplied by ``cooling_rate`` after every
proposed move. Temperatures are in units of the summed objective (the
log-likelihood, or the negative sum of squared errors, of the whole
array).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Tuple

from ..core.exceptions import DomainError
from ..global_settings import DEFAULT_EPS

__all__ = ["FitConfig", "MOVES", "INIT_STRATEGIES"]

MOVES = ("single_relabel", "pair_swap")

INIT_STRATEGIES = ("random", "oracle_latent", "provided")

# Proposed moves per restart and node when anneal_steps is not given
STEPS_PER_NODE = 50


@dataclass(frozen=True)
class FitConfig:
    """The settings of the annealing search over co-clusterings.

    Parameters
    ----------
    restarts : int
        The number of independent annealing runs.
    anneal_steps : int, optional
        The number of proposed moves per restart; 50 (m + n) if not given.
    initial_temperature : float
        The starting temperature.
    cooling_rate : float
        The geometric cooling factor in (0, 1).
    moves : Tuple[str, ...]
        The move types, a non-empty subset of "single_relabel" and
        "pair_swap".
    eps : float
        The clamp on the block means.
    seed : int
        The seed; restarts use streams derived from it.
    init : str
        The initialization, one of "random", "oracle_latent", "provided".
    """

    restarts: int = 8
    anneal_steps: Optional[int] = None
    initial_temperature: float = 1.0
    cooling_rate: float = 0.995
    moves: Tuple[str, ...] = MOVES
    eps: float = DEFAULT_EPS
    seed: int = 0
    init: str = "random"

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise DomainError(f"Restarts must be >= 1! Got {self.restarts}.")
        if self.anneal_steps is not None and self.anneal_steps < 1:
            raise DomainError(
                f"Annealing steps must be >= 1! Got {self.anneal_steps}."
            )
        if not self.initial_temperature > 0.0:
            raise DomainError(
                f"Initial temperature must be positive! "
                f"Got {self.initial_temperature}."
            )
        if not 0.0 < self.cooling_rate < 1.0:
            raise DomainError(
                f"Cooling rate must be in (0, 1)! Got {self.cooling_rate}."
            )
        moves = tuple(self.moves)
        if not moves or any(move not in MOVES for move in moves):
            raise DomainError(
                f"Moves must be a non-empty subset of {MOVES}! Got {moves}."
            )
        if not 0.0 < self.eps < 0.5:
            raise DomainError(
                f"Clamp eps must be in (0, 1/2)! Got {self.eps}."
            )
        if self.seed < 0:
            raise DomainError(f"Seed must be non-negative! Got {self.seed}.")
        if self.init not in INIT_STRATEGIES:
            raise DomainError(
                f"Initialization {self.init!r} is not one of "
                f"{INIT_STRATEGIES}!"
            )
        # Because frozen=True, post init must access self via setattr
        object.__setattr__(self, "moves", moves)

    def steps_for(self, num_rows: int, num_cols: int) -> int:
        """The number of proposed moves per restart for an array size."""
        if self.anneal_steps is not None:
            return self.anneal_steps
        return STEPS_PER_NODE * (num_rows + num_cols)

    def replace(self, **changes) -> FitConfig:
        """A copy with some settings changed."""
        return replace(self, **changes)
