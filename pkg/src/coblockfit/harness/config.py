"""
Module with the configuration of the simulation experiments.

Experiment files are line-oriented ``key = value`` text; ``#`` starts a
comment and list values are comma-separated. The recognized keys are
declared below with their default value, type, and description; the type
of a list is taken from its default elements.
"""

from __future__ import annotations

import os

from dataclasses import dataclass, fields
from tabulate import tabulate
from typing import Any, Dict, Optional, Tuple, Union

from ..core.custom_typing import DeclaredKeys
from ..core.exceptions import ConfigError
from ..fit.config import INIT_STRATEGIES, MOVES, FitConfig
from ..kernels.sampling import RHO_MODES
from ..risk.objectives import KINDS

__all__ = [
    "DECLARED_KEYS",
    "ExperimentConfig",
    "parse_config_text",
    "load_experiment_config",
    "worker_count",
]

FIELD_NAMES = ["Keyword", "Value", "Type", "Description"]

THREADS_VARIABLE = "COCLUST_THREADS"

DECLARED_KEYS: DeclaredKeys = [
    {
        "keyword": "betas",
        "value": [3.0],
        "type": list,
        "description": "Shape exponents of the sigmoid kernels",
    },
    {
        "keyword": "rho_modes",
        "value": ["dense"],
        "type": list,
        "description": "Sparsity schedules (dense, poly, polylog)",
    },
    {
        "keyword": "n_grid",
        "value": [100],
        "type": list,
        "description": "Numbers of column nodes n",
    },
    {
        "keyword": "aspect",
        "value": 1.0,
        "type": float,
        "description": "Ratio m/n of row to column nodes",
    },
    {
        "keyword": "reps",
        "value": 50,
        "type": int,
        "description": "Replicates per grid cell",
    },
    {
        "keyword": "seed",
        "value": 0,
        "type": int,
        "description": "Master seed of the experiment",
    },
    {
        "keyword": "kinds",
        "value": ["pl"],
        "type": list,
        "description": "Estimators (ls, pl)",
    },
    {
        "keyword": "restarts",
        "value": 1,
        "type": int,
        "description": "Annealing restarts per fit",
    },
    {
        "keyword": "anneal_steps",
        "value": 0,
        "type": int,
        "description": "Proposed moves per restart (0: 50 (m + n))",
    },
    {
        "keyword": "initial_temperature",
        "value": 1.0,
        "type": float,
        "description": "Starting temperature of the annealing",
    },
    {
        "keyword": "cooling_rate",
        "value": 0.995,
        "type": float,
        "description": "Geometric cooling factor",
    },
    {
        "keyword": "moves",
        "value": list(MOVES),
        "type": list,
        "description": "Annealing moves (single_relabel, pair_swap)",
    },
    {
        "keyword": "init",
        "value": "oracle_latent",
        "type": str,
        "description": "Initialization (random, oracle_latent)",
    },
    {
        "keyword": "eps",
        "value": 1e-6,
        "type": float,
        "description": "Clamp on connectivity probabilities",
    },
    {
        "keyword": "phi_grid",
        "value": 100,
        "type": int,
        "description": "Resolution of the best-approximation search",
    },
    {
        "keyword": "oracle_grid",
        "value": 256,
        "type": int,
        "description": "Interval starts per orientation in grid searches",
    },
    {
        "keyword": "directions",
        "value": 20,
        "type": int,
        "description": "Random directions per replicate (rate experiment)",
    },
    {
        "keyword": "support_restarts",
        "value": 32,
        "type": int,
        "description": "Alternating restarts per support function",
    },
    {
        "keyword": "timing",
        "value": False,
        "type": bool,
        "description": "Record wall-clock runtimes (breaks byte determinism)",
    },
    {
        "keyword": "output",
        "value": "",
        "type": str,
        "description": "Output CSV path (the command line may override)",
    },
]

_DECLARED = {key["keyword"]: key for key in DECLARED_KEYS}

_TRUE = ("true", "yes", "on", "1")
_FALSE = ("false", "no", "off", "0")


@dataclass(frozen=True)
class ExperimentConfig:
    """The settings of a simulation sweep or a rate experiment.

    The fields and their defaults mirror ``DECLARED_KEYS``.
    """

    betas: Tuple[float, ...] = (3.0,)
    rho_modes: Tuple[str, ...] = ("dense",)
    n_grid: Tuple[int, ...] = (100,)
    aspect: float = 1.0
    reps: int = 50
    seed: int = 0
    kinds: Tuple[str, ...] = ("pl",)
    restarts: int = 1
    anneal_steps: int = 0
    initial_temperature: float = 1.0
    cooling_rate: float = 0.995
    moves: Tuple[str, ...] = MOVES
    init: str = "oracle_latent"
    eps: float = 1e-6
    phi_grid: int = 100
    oracle_grid: int = 256
    directions: int = 20
    support_restarts: int = 32
    timing: bool = False
    output: str = ""

    def __post_init__(self) -> None:
        for name in ("betas", "rho_modes", "n_grid", "kinds", "moves"):
            values = tuple(getattr(self, name))
            if not values:
                raise ConfigError(f"Key {name!r} must not be empty!")
            # Because frozen=True, post init must access self via setattr
            object.__setattr__(self, name, values)

        _check(all(beta >= 1.0 for beta in self.betas), "betas", ">= 1")
        _check(
            all(mode in RHO_MODES for mode in self.rho_modes),
            "rho_modes",
            f"in {RHO_MODES}",
        )
        _check(all(n >= 2 for n in self.n_grid), "n_grid", ">= 2")
        _check(
            all(kind in KINDS for kind in self.kinds), "kinds", f"in {KINDS}"
        )
        _check(self.aspect > 0.0, "aspect", "> 0")
        _check(self.reps >= 1, "reps", ">= 1")
        _check(self.seed >= 0, "seed", ">= 0")
        _check(self.phi_grid >= 1, "phi_grid", ">= 1")
        _check(self.oracle_grid >= 1, "oracle_grid", ">= 1")
        _check(self.directions >= 0, "directions", ">= 0")
        _check(self.support_restarts >= 1, "support_restarts", ">= 1")
        _check(self.anneal_steps >= 0, "anneal_steps", ">= 0")
        _check(self.init in INIT_STRATEGIES, "init", f"in {INIT_STRATEGIES}")
        _check(self.init != "provided", "init", "random or oracle_latent")
        # Validate the fit settings once, with the error type of this module
        try:
            self.fit_config()
        except ValueError as err:
            raise ConfigError(str(err)) from err

    def fit_config(self, seed: Optional[int] = None) -> FitConfig:
        """The fit settings, optionally with another seed."""
        return FitConfig(
            restarts=self.restarts,
            anneal_steps=self.anneal_steps or None,
            initial_temperature=self.initial_temperature,
            cooling_rate=self.cooling_rate,
            moves=self.moves,
            eps=self.eps,
            seed=self.seed if seed is None else seed,
            init=self.init,
        )

    def num_rows(self, num_cols: int) -> int:
        """The number of row nodes m for n column nodes."""
        return max(1, int(round(self.aspect * num_cols)))

    def as_dict(self) -> Dict[str, Any]:
        return {item.name: getattr(self, item.name) for item in fields(self)}

    def describe(self) -> str:
        """Tabulate the declared keys with their current values."""
        header_names = ["No."] + FIELD_NAMES
        values = self.as_dict()
        rows = []
        for idx, key in enumerate(DECLARED_KEYS):
            value = values[key["keyword"]]
            if isinstance(value, tuple):
                value = ", ".join(str(element) for element in value)
            rows.append(
                [
                    idx + 1,
                    key["keyword"],
                    value,
                    key["type"].__name__,
                    key["description"],
                ]
            )

        return tabulate(
            rows,
            headers=header_names,
            stralign="center",
            disable_numparse=True,
        )


def parse_config_text(text: str, source: str = "<string>") -> ExperimentConfig:
    """Parse the text of an experiment file.

    Raises
    ------
    ConfigError
        If a key is not declared, appears twice, or has an invalid value.
    """
    values: Dict[str, Any] = {}
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(
                f"{source}, line {line_number}: expected 'key = value'! "
                f"Got {raw_line.strip()!r}."
            )
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _DECLARED:
            raise ConfigError(
                f"{source}, line {line_number}: unknown key {key!r}!"
            )
        if key in values:
            raise ConfigError(
                f"{source}, line {line_number}: duplicate key {key!r}!"
            )
        try:
            values[key] = _convert(_DECLARED[key]["value"], value)
        except ValueError as err:
            raise ConfigError(
                f"{source}, line {line_number}: invalid value for "
                f"{key!r} ({err})"
            ) from err

    return ExperimentConfig(**values)


def load_experiment_config(
    path: Union[str, os.PathLike]
) -> ExperimentConfig:
    """Read an experiment file."""
    with open(path, "r") as f:
        text = f.read()

    return parse_config_text(text, source=str(path))


def worker_count() -> int:
    """The worker cap from the environment; 1 means serial execution."""
    value = os.environ.get(THREADS_VARIABLE, "").strip()
    if not value:
        return 1
    try:
        count = int(value)
    except ValueError as err:
        raise ConfigError(
            f"{THREADS_VARIABLE} must be a positive integer! Got {value!r}."
        ) from err
    if count < 1:
        raise ConfigError(
            f"{THREADS_VARIABLE} must be a positive integer! Got {value!r}."
        )

    return count


def _convert(default: Any, text: str) -> Any:
    """Convert a value to the type of the declared default."""
    if isinstance(default, list):
        element_type = type(default[0])
        items = [item.strip() for item in text.split(",") if item.strip()]
        return tuple(_convert_scalar(element_type, item) for item in items)

    return _convert_scalar(type(default), text)


def _convert_scalar(type_: type, text: str) -> Any:
    if type_ is bool:
        lowered = text.lower()
        if lowered in _TRUE:
            return True
        if lowered in _FALSE:
            return False
        raise ValueError(f"expected a boolean, got {text!r}")
    if type_ is int:
        return int(text)
    if type_ is float:
        return float(text)

    return text


def _check(condition: bool, key: str, requirement: str) -> None:
    if not condition:
        raise ConfigError(f"Values of key {key!r} must be {requirement}!")
