# Copyright 2025 Joe Bears
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import json
import logging
from math import inf, isclose, nan
from os import PathLike
from pathlib import Path
from typing import Sequence

import pandas as pd

from lateraltools.simulation import Metrics
from lateraltools.utils import check_ratio, Result


pd.options.mode.copy_on_write = True
logger = logging.getLogger(__name__)

# Metrics compared across runs, everything but the status
NUMERIC_METRICS = tuple(name for name in Metrics._fields if name != "status")


def read_run(directory: str | PathLike) -> dict[str, any]:
    """Read the metrics.json of a run directory

    Parameters
    ==========

    directory : str | PathLike
        Run directory"""
    path = Path(directory)/"metrics.json"
    if not path.is_file():
        raise FileNotFoundError(f"{directory} has no metrics.json")
    with open(path, encoding="utf-8") as file:
        record = json.load(file)
    for key in ("name", "status", "dt", "horizon", "metrics"):
        if key not in record:
            raise ValueError(f"{path} is missing {key}")
    return record

def ratio(value: float | None, reference: float | None) -> float:
    if value is None or reference is None:
        return nan
    if value == reference:
        return 1.0
    if reference == 0:
        return inf
    return value/reference

def _labels(records: list[dict[str, any]]) -> list[str]:
    """Run names, suffixed with their position where names repeat"""
    names = [record["name"] for record in records]
    return [
        name if names.count(name) == 1 else f"{name}#{position}"
        for position, name in enumerate(names)
    ]

def compare_runs(records: list[dict[str, any]], allow_mismatch: bool = False) -> pd.DataFrame:
    """Side by side metrics of runs with the ratio of every run to the first.
    Rows are metrics, columns are the runs followed by ratio:<run> columns.

    Parameters
    ==========

    records : list[dict[str, any]]
        metrics.json contents of the runs, the first being the reference

    allow_mismatch : bool
        Whether to compare runs with different steps or horizons"""
    if len(records) < 2:
        raise ValueError(f"A report needs at least two runs, got {len(records)}")
    reference = records[0]
    for record in records[1:]:
        for key in ("dt", "horizon"):
            if not isclose(record[key], reference[key], rel_tol=1e-12):
                message = (
                    f"{record["name"]} has {key} = {record[key]:g} s but {reference["name"]} has "
                    f"{key} = {reference[key]:g} s")
                if not allow_mismatch:
                    raise ValueError(f"{message}, pass --allow-mismatch to compare them anyway")
                logger.warning(message)
    for record in records:
        if record["status"] != "completed":
            logger.warning("%s is %s, its metrics cover %s s", record["name"], record["status"],
                record["metrics"].get("duration"))

    labels = _labels(records)
    table = pd.DataFrame(
        {label: [record["metrics"].get(name) for name in NUMERIC_METRICS]
            for label, record in zip(labels, records)},
        index=pd.Index(NUMERIC_METRICS, name="metric"),
        dtype=float)
    first = labels[0]
    for label, record in zip(labels[1:], records[1:]):
        table[f"ratio:{label}"] = [
            ratio(record["metrics"].get(name), reference["metrics"].get(name))
            for name in NUMERIC_METRICS
        ]
    logger.debug("Compared %s against %s", ", ".join(labels[1:]), first)
    return table

def check_metric_ratio(records: list[dict[str, any]], metric: str, max_ratio: float,
        **string_options) -> list[Result[float]]:
    """Check that a metric of every run stays within max_ratio times the
    metric of the first run

    Parameters
    ==========

    records : list[dict[str, any]]
        metrics.json contents of the runs, the first being the reference

    metric : str
        Metric to compare

    max_ratio : float
        Largest acceptable ratio"""
    if metric not in NUMERIC_METRICS:
        raise ValueError(f"{metric} is not a numeric metric")
    reference = records[0]["metrics"].get(metric)
    labels = _labels(records)
    results = []
    for label, record in zip(labels[1:], records[1:]):
        value = record["metrics"].get(metric)
        if value is None or reference is None:
            raise ValueError(f"{metric} is missing for {label if value is None else labels[0]}")
        if reference == 0:
            raise ValueError(f"{metric} of {labels[0]} is zero, ratios against it are undefined")
        try:
            results.append(check_ratio(value, reference, max_ratio,
                value_sym=_symbol(metric, label),
                reference_sym=_symbol(metric, labels[0]),
                **string_options))
        except ValueError as error:
            raise ValueError(f"{metric} of {label} against {labels[0]}: {error}") from None
    return results

def _symbol(metric: str, label: str) -> str:
    metric, label = (text.replace("_", "\\_") for text in (metric, label))
    return f"\\textrm{{{metric}}}_{{\\textrm{{{label}}}}}"

def _markdown_table(table: pd.DataFrame) -> list[str]:
    header = [table.index.name or "", *table.columns]
    lines = [f"| {" | ".join(map(str, header))} |", f"|{"---|"*len(header)}"]
    for name, row in table.iterrows():
        lines.append(f"| {name} | {" | ".join(f"{value:.6g}" for value in row)} |")
    return lines

def write_report(table: pd.DataFrame, records: list[dict[str, any]], directory: str | PathLike,
        ratio_checks: list[Result[float]] = (), ratio_failures: Sequence[str] = ()) -> list[Path]:
    """Write report.csv and report.md

    Parameters
    ==========

    table : pd.DataFrame
        Comparison table from compare_runs

    records : list[dict[str, any]]
        metrics.json contents of the compared runs

    directory : str | PathLike
        Directory to write the report to

    ratio_checks : list[Result[float]]
        Passed ratio checks to include in report.md

    ratio_failures : Sequence[str]
        Descriptions of failed ratio checks to include in report.md"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    table.to_csv(directory/"report.csv")
    lines = ["# Run comparison", ""]
    lines += [
        f"- {label}: {record["status"]}, v_x = {record.get("v_x", nan):g} m/s, "
        f"dt = {record["dt"]:g} s, horizon = {record["horizon"]:g} s"
        for label, record in zip(_labels(records), records)
    ]
    lines += ["", *_markdown_table(table), ""]
    if ratio_checks or ratio_failures:
        lines += ["## Ratio checks", ""]
        for failure in ratio_failures:
            lines += [f"**Failed:** {failure}", ""]
        for result in ratio_checks:
            lines += [result.string, ""]
    (directory/"report.md").write_text("\n".join(lines), encoding="utf-8")
    return [directory/"report.csv", directory/"report.md"]
