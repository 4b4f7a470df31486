"""
The harness subpackage: experiment configuration, simulation sweeps, the
support-function rate experiment, summaries and the command line.
"""

from .config import (
    DECLARED_KEYS,
    ExperimentConfig,
    parse_config_text,
    load_experiment_config,
    worker_count,
)
from .sweep import SweepRow, SWEEP_COLUMNS, run_sweep, kl_limit
from .rate import (
    RateRow,
    RateSummaryRow,
    run_rate_experiment,
    rate_directions,
    support_gap,
)
from .summary import summarize, format_summary

__all__ = [
    "DECLARED_KEYS",
    "ExperimentConfig",
    "parse_config_text",
    "load_experiment_config",
    "worker_count",
    "SweepRow",
    "SWEEP_COLUMNS",
    "run_sweep",
    "kl_limit",
    "RateRow",
    "RateSummaryRow",
    "run_rate_experiment",
    "rate_directions",
    "support_gap",
    "summarize",
    "format_summary",
]
