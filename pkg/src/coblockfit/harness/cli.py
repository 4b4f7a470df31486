"""
Module with the command-line interface of the package.

Results go to files or stdout; logging goes to stderr. Domain,
configuration and numerical errors exit with status 2, I/O errors with
status 1.
"""

from __future__ import annotations

import argparse
import logging
import sys

from tabulate import tabulate
from typing import List, Optional

from .config import load_experiment_config
from .rate import run_rate_experiment
from .summary import format_summary, summarize
from .sweep import kl_limit, run_sweep
from ..fit.anneal import fit_coblockmodel
from ..fit.config import FitConfig
from ..fit.records import write_fit_record
from ..global_settings import DEFAULT_EPS, DEFAULT_PHI_RESOLUTION
from ..kernels.sampling import read_adjacency
from ..kernels.sigmoid import make_sigmoid_kernel
from ..risk.objectives import KINDS, population_risk
from ..risk.oracle import phi_star_search

__all__ = ["build_parser", "main"]

logger = logging.getLogger(__name__)

EXIT_USAGE = 2
EXIT_IO = 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coblockfit",
        description=(
            "Fit stochastic co-blockmodels to bipartite networks and run "
            "the simulation experiments."
        ),
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log progress to stderr (-v for INFO, -vv for DEBUG)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="Run a simulation sweep")
    p_sweep.add_argument("--config", required=True, help="Config file")
    p_sweep.add_argument("--out", help="Output CSV (overrides the config)")

    p_rate = sub.add_parser(
        "rate", help="Run the support-function rate experiment"
    )
    p_rate.add_argument("--config", required=True, help="Config file")
    p_rate.add_argument("--out", help="Output CSV (overrides the config)")

    p_fit = sub.add_parser("fit", help="Fit a co-blockmodel to an array")
    p_fit.add_argument("--input", required=True, help="Adjacency file")
    p_fit.add_argument("--k", type=int, default=2, help="Number of classes")
    p_fit.add_argument("--kind", choices=KINDS, default="pl")
    p_fit.add_argument("--seed", type=int, default=0)
    p_fit.add_argument("--restarts", type=int, default=8)
    p_fit.add_argument("--out", required=True, help="Output fit record")

    p_oracle = sub.add_parser(
        "oracle", help="Print phi*, its population risk and the KL limit"
    )
    p_oracle.add_argument("--beta", type=float, required=True)
    p_oracle.add_argument("--rho", type=float, required=True)
    p_oracle.add_argument(
        "--grid",
        type=int,
        default=DEFAULT_PHI_RESOLUTION,
        help="Proportion grid resolution",
    )
    p_oracle.add_argument("--kind", choices=KINDS, default="pl")

    p_summary = sub.add_parser(
        "summarize", help="Summarize a result CSV by groups"
    )
    p_summary.add_argument("--in", dest="csv_path", required=True)
    p_summary.add_argument(
        "--by",
        required=True,
        help="Comma-separated grouping columns",
    )
    p_summary.add_argument(
        "--values",
        default="excess_risk_rel,kl_normalized",
        help="Comma-separated summarized columns",
    )
    p_summary.add_argument("--out", help="Also write the summary as CSV")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)

    try:
        COMMANDS[args.command](args)
    except OSError as err:
        print(f"coblockfit: {err}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ArithmeticError, NotImplementedError) as err:
        print(f"coblockfit: {err}", file=sys.stderr)
        return EXIT_USAGE

    return 0


def _configure_logging(verbosity: int) -> None:
    if verbosity <= 0:
        return
    level = logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )


def _run_sweep(args: argparse.Namespace) -> None:
    config = load_experiment_config(args.config)
    logger.info("Sweep configuration:\n%s", config.describe())
    rows = run_sweep(config, args.out)
    out = args.out or config.output
    print(f"{len(rows)} sweep rows" + (f" written to {out}" if out else ""))


def _run_rate(args: argparse.Namespace) -> None:
    config = load_experiment_config(args.config)
    logger.info("Rate configuration:\n%s", config.describe())
    _, summary = run_rate_experiment(config, args.out)
    print(
        tabulate(
            [
                [row.beta, row.rho_mode, row.n, row.median_gap, row.slope]
                for row in summary
            ],
            headers=["beta", "rho_mode", "n", "median_gap", "slope"],
            floatfmt=".4g",
        )
    )


def _run_fit(args: argparse.Namespace) -> None:
    sample = read_adjacency(args.input)
    config = FitConfig(restarts=args.restarts, seed=args.seed)
    result = fit_coblockmodel(sample.a, args.k, args.kind, config)
    write_fit_record(args.out, result)
    print(result.phi_hat)
    print(f"objective ({result.kind}): {result.objective:.10g}")


def _run_oracle(args: argparse.Namespace) -> None:
    kernel = make_sigmoid_kernel(args.beta, args.rho)
    phi_star = phi_star_search(kernel, args.grid, args.kind)
    risk = population_risk(kernel, phi_star, args.kind)
    limit = kl_limit(args.beta, args.grid, DEFAULT_EPS)
    print(kernel)
    print(phi_star)
    print(
        tabulate(
            [
                [f"population risk ({args.kind})", risk.value],
                ["small-sparsity KL limit", limit],
            ],
            floatfmt=".10g",
        )
    )


def _run_summarize(args: argparse.Namespace) -> None:
    keys = [key.strip() for key in args.by.split(",") if key.strip()]
    values = [v.strip() for v in args.values.split(",") if v.strip()]
    columns, rows = summarize(args.csv_path, keys, values, args.out)
    print(format_summary(columns, rows))


COMMANDS = {
    "sweep": _run_sweep,
    "rate": _run_rate,
    "fit": _run_fit,
    "oracle": _run_oracle,
    "summarize": _run_summarize,
}
