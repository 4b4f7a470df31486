"""
Module with the group summaries of harness CSV files.
"""

from __future__ import annotations

import csv
import math
import os
import warnings

import numpy as np

from tabulate import tabulate
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..core.exceptions import SchemaError
from ..utils import write_csv

__all__ = ["summarize", "format_summary", "DEFAULT_SUMMARY_VALUES"]

DEFAULT_SUMMARY_VALUES = ("excess_risk_rel", "kl_normalized")

SUMMARY_STATISTICS = ("median", "iqr")


def summarize(
    csv_path: Union[str, os.PathLike],
    keys: Sequence[str],
    values: Sequence[str] = DEFAULT_SUMMARY_VALUES,
    out: Optional[Union[str, os.PathLike]] = None,
) -> Tuple[List[str], List[list]]:
    """Compute per-group medians and interquartile ranges of a CSV file.

    Parameters
    ----------
    csv_path : Union[str, os.PathLike]
        A CSV file written by the harness.
    keys : Sequence[str]
        The grouping columns.
    values : Sequence[str], optional
        The summarized columns.
    out : Union[str, os.PathLike], optional
        If given, the summary is written there as CSV.

    Returns
    -------
    Tuple[List[str], List[list]]
        The summary header and rows; rows are sorted by the group keys.

    Raises
    ------
    SchemaError
        If a grouping or value column is missing from the file.
    """
    with open(csv_path, newline="") as f:
        reader = csv.DictReader(f)
        header = reader.fieldnames or []
        for column in list(keys) + list(values):
            if column not in header:
                raise SchemaError(
                    f"Column {column!r} is not in {str(csv_path)!r}! "
                    f"Available columns: {header}."
                )
        groups: Dict[tuple, Dict[str, List[float]]] = {}
        for record in reader:
            group = tuple(record[key] for key in keys)
            samples = groups.setdefault(group, {value: [] for value in values})
            for value in values:
                number = _to_float(record[value], value)
                if not math.isnan(number):
                    samples[value].append(number)

    columns = list(keys)
    for value in values:
        columns.extend(f"{value}_{stat}" for stat in SUMMARY_STATISTICS)
    columns.append("count")

    rows = []
    for group in sorted(groups, key=_group_order):
        samples = groups[group]
        if not any(samples[value] for value in values):
            warnings.warn(
                f"Group {dict(zip(keys, group))} has no values; omitted.",
                UserWarning,
            )
            continue
        row: list = list(group)
        for value in values:
            row.extend(_median_iqr(samples[value]))
        row.append(max(len(samples[value]) for value in values))
        rows.append(row)

    if out:
        write_csv(out, columns, rows)

    return columns, rows


def format_summary(columns: Sequence[str], rows: Sequence[list]) -> str:
    """Render a summary as a text table."""
    return tabulate(rows, headers=columns, floatfmt=".4g")


def _median_iqr(samples: List[float]) -> Tuple[float, float]:
    if not samples:
        return float("nan"), float("nan")
    q1, median, q3 = np.percentile(samples, [25, 50, 75])

    return float(median), float(q3 - q1)


def _group_order(group: tuple) -> tuple:
    """Numeric group keys sort as numbers, the others as text."""
    order = []
    for text in group:
        try:
            order.append((0, float(text), text))
        except ValueError:
            order.append((1, 0.0, text))

    return tuple(order)


def _to_float(text: str, column: str) -> float:
    if text == "":
        return float("nan")
    try:
        return float(text)
    except ValueError as err:
        raise SchemaError(
            f"Column {column!r} must hold numbers! Got {text!r}."
        ) from err
