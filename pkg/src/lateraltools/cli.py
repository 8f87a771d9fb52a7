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


import argparse
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
import json
import logging
import os
from pathlib import Path
import re
from typing import NamedTuple, Optional, Sequence

import numpy as np
import pandas as pd
import yaml

from lateraltools.analysis import closed_loop_poles
from lateraltools.control import UncertaintySpec
from lateraltools.io import (check_metric_ratio, compare_runs, load_scenario, preset_names,
    read_run, RunRecord, write_report, write_run)
from lateraltools.simulation import run_scenario, Scenario


pd.options.mode.copy_on_write = True
logger = logging.getLogger(__name__)

EXIT_SUCCESS = 0
EXIT_ABORTED = 1
EXIT_INVALID = 2
EXIT_CHECK_FAILED = 3

OUTPUT_ENV = "LATERALTOOLS_OUTPUT"


class SweepAxis(NamedTuple):
    key: str
    values: tuple[any, ...]


def parse_axis(text: str) -> SweepAxis:
    """Parse a sweep axis written as key=v1,v2,... Values are read as YAML
    scalars, so numbers stay numbers and quantity strings stay strings.

    Parameters
    ==========

    text : str
        Axis definition"""
    key, separator, values = text.partition("=")
    key = key.strip()
    if not separator or not key:
        raise ValueError(f"Sweep axis must look like key=v1,v2, got {text!r}")
    parsed = tuple(yaml.safe_load(value) for value in values.split(",") if value.strip())
    if not parsed:
        raise ValueError(f"Sweep axis {key} has no values")
    return SweepAxis(key, parsed)


@dataclass(frozen=True)
class RunManifest:
    """Everything a batch of runs needs: the scenarios, where the artifacts
    go and the sweep axes expanded as a product"""
    scenarios: tuple[str, ...]
    output: Path
    axes: tuple[SweepAxis, ...] = ()
    uncertainty_band: float | None = None
    plots: bool = True
    seed: int | None = None
    workers: int = 1

    def __post_init__(self):
        if not self.scenarios:
            raise ValueError("No scenario given")
        presets = preset_names()
        for source in self.scenarios:
            if not (Path(source).is_file() or str(source) in presets):
                raise ValueError(f"No scenario file or preset named {source}")
        for axis in self.axes:
            if not axis.values:
                raise ValueError(f"Sweep axis {axis.key} has no values")
        if self.uncertainty_band is not None and not 0 <= self.uncertainty_band < 1:
            raise ValueError(f"Uncertainty band must be in [0, 1), got {self.uncertainty_band}")
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")
        try:
            self.output.mkdir(parents=True, exist_ok=True)
        except OSError as error:
            raise ValueError(f"Cannot create output directory {self.output}: {error}") from None
        if not os.access(self.output, os.W_OK):
            raise ValueError(f"Output directory {self.output} is not writable")

    @property
    def is_sweep(self) -> bool:
        return bool(self.axes) or self.uncertainty_band is not None

    def points(self) -> list[dict[str, any]]:
        """Override mappings of every sweep point, one empty mapping for a
        plain run"""
        axes = [[{axis.key: value} for value in axis.values] for axis in self.axes]
        if self.uncertainty_band is not None:
            axes.append([
                {f"uncertainty.{name}": factor for name, factor in spec.to_dict().items()}
                for spec in UncertaintySpec.corners(self.uncertainty_band)
            ])
        points = []
        for combination in product(*axes):
            point = {}
            for entry in combination:
                point.update(entry)
            points.append(point)
        return points

    def overrides(self, point: dict[str, any]) -> dict[str, any]:
        if self.seed is None:
            return point
        return point | {"noise.seed": self.seed}


def point_label(index: int, point: dict[str, any]) -> str:
    """Directory name of a sweep point, stable across runs"""
    label = "_".join(f"{key.rsplit(".", 1)[-1]}={value}" for key, value in point.items())
    label = re.sub(r"[^\w.=+-]+", "_", label)
    return f"{index:03d}_{label}" if label else f"{index:03d}"

def execute(scenario: Scenario, directory: str, plots: bool) -> RunRecord:
    """Run one scenario and write its artifacts"""
    log = run_scenario(scenario)
    return write_run(scenario, log, directory, plots)

def _execute_all(jobs: list[tuple[Scenario, str, bool]], workers: int) -> list[RunRecord]:
    if workers == 1 or len(jobs) == 1:
        return [execute(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as executor:
        futures = [executor.submit(execute, *job) for job in jobs]
        return [future.result() for future in futures]

def exit_status(records: list[RunRecord]) -> int:
    if any(record.aborted for record in records):
        return EXIT_ABORTED
    if not all(record.passed for record in records):
        return EXIT_CHECK_FAILED
    return EXIT_SUCCESS

def run_command(manifest: RunManifest) -> int:
    """Run every scenario of a manifest, and every sweep point if axes are
    given, writing one artifact directory per run. Every scenario is loaded
    and validated before the first run starts, and scenario names must be
    unique since they name the artifact directories.

    Parameters
    ==========

    manifest : RunManifest
        What to run and where to write it"""
    points = manifest.points()
    jobs = []
    sweeps = {}
    owners = {}
    for position, source in enumerate(manifest.scenarios):
        sweep = None
        for index, point in enumerate(points):
            scenario = load_scenario(source, manifest.overrides(point))
            owner = owners.setdefault(scenario.name, position)
            if owner != position:
                raise ValueError(
                    f"Scenarios {manifest.scenarios[owner]} and {source} are both named "
                    f"{scenario.name}, their artifact directories would collide")
            if not manifest.is_sweep:
                directory = manifest.output/scenario.name
            else:
                if sweep is None:
                    sweep = manifest.output/f"{scenario.name}_sweep"
                    sweeps[sweep] = []
                label = point_label(index, point)
                directory = sweep/label
                sweeps[sweep].append((len(jobs), label, point))
            jobs.append((scenario, str(directory), manifest.plots))
    logger.info("Running %d scenario(s) with %d worker(s)", len(jobs), manifest.workers)

    records = _execute_all(jobs, manifest.workers)
    for sweep, entries in sweeps.items():
        rows = [
            {
                "point": label,
                **point,
                "status": records[job].status,
                "checks_passed": records[job].passed,
                **records[job].metrics,
            }
            for job, label, point in entries
        ]
        write_sweep_summary(rows, sweep)

    for record in records:
        logger.info("%s: %s%s", record.name, record.status,
            "" if record.passed else ", checks failed")
    return exit_status(records)

def write_sweep_summary(rows: list[dict[str, any]], directory: Path) -> None:
    """Write sweep.csv and sweep.json, one row per sweep point"""
    directory.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(rows).to_csv(directory/"sweep.csv", index=False)
    with open(directory/"sweep.json", mode="w", encoding="utf-8") as file:
        json.dump(rows, file, indent=4, default=str)

def report_command(directories: Sequence[str], output: Path, allow_mismatch: bool = False,
        metric: str | None = None, max_ratio: float | None = None) -> int:
    """Compare finished runs and write report.csv and report.md to the output
    directory

    Parameters
    ==========

    directories : Sequence[str]
        Run directories, the first being the reference

    output : Path
        Directory to write the report to

    allow_mismatch : bool
        Whether to compare runs with different steps or horizons

    metric : str | None
        Metric whose ratio to the reference is bounded

    max_ratio : float | None
        Bound on the ratio of metric"""
    if len(directories) < 2:
        raise ValueError(f"report needs at least two run directories, got {len(directories)}")
    if (metric is None) != (max_ratio is None):
        raise ValueError("--metric and --max-ratio must be given together")
    records = [read_run(directory) for directory in directories]
    table = compare_runs(records, allow_mismatch)

    checks = []
    failures = []
    status = EXIT_SUCCESS
    if metric is not None:
        try:
            checks = check_metric_ratio(records, metric, max_ratio)
        except ValueError as error:
            logger.error("Ratio check on %s failed: %s", metric, error)
            failures.append(str(error))
            status = EXIT_CHECK_FAILED
    paths = write_report(table, records, output, checks, failures)
    logger.info("Wrote %s", ", ".join(map(str, paths)))
    return status

def validate_command(sources: Sequence[str]) -> int:
    """Load and validate scenarios without running them"""
    for source in sources:
        scenario = load_scenario(source)
        poles = closed_loop_poles(scenario.coefficients(), scenario.controller)
        print(
            f"{source}: {scenario.name} is valid, v_x = {scenario.v_x:g} m/s, "
            f"dt = {scenario.dt:g} s, {scenario.steps} steps, "
            f"slowest nominal pole {np.max(poles.real):.4g} 1/s")
    return EXIT_SUCCESS

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="Log at debug level")
    common.add_argument("-o", "--output", type=Path,
        default=Path(os.environ.get(OUTPUT_ENV, "runs")),
        help=f"Output directory (default: ${OUTPUT_ENV} or runs)")

    batch = argparse.ArgumentParser(add_help=False)
    batch.add_argument("--seed", type=int, help="Noise seed replacing the one in the scenario")
    batch.add_argument("--no-plots", action="store_true", help="Do not write SVG plots")
    batch.add_argument("--workers", type=int, default=1, help="Parallel runs (default: 1)")

    parser = argparse.ArgumentParser(prog="lateraltools",
        description="Closed-loop simulation of robust lateral path following")
    subparsers = parser.add_subparsers(dest="command", required=True)

    run = subparsers.add_parser("run", parents=[common, batch],
        help="Run scenario files or presets")
    run.add_argument("scenarios", nargs="+", help="Scenario files or preset names")

    sweep = subparsers.add_parser("sweep", parents=[common, batch],
        help="Run a scenario over the product of parameter values")
    sweep.add_argument("scenario", help="Scenario file or preset name")
    sweep.add_argument("--axis", action="append", default=[], type=parse_axis,
        metavar="KEY=V1,V2", help="Dotted scenario key and its values, repeatable")
    sweep.add_argument("--uncertainty-band", type=float,
        help="Add the mass and stiffness corners at 1 -/+ band as an axis")

    report = subparsers.add_parser("report", parents=[common],
        help="Compare the metrics of finished runs")
    report.add_argument("runs", nargs="*", help="Run directories, the first is the reference")
    report.add_argument("--allow-mismatch", action="store_true",
        help="Compare runs with different dt or horizon")
    report.add_argument("--metric", help="Metric to bound relative to the reference run")
    report.add_argument("--max-ratio", type=float, help="Largest acceptable ratio of --metric")

    validate = subparsers.add_parser("validate", parents=[common],
        help="Check scenarios without running them")
    validate.add_argument("scenarios", nargs="+", help="Scenario files or preset names")
    return parser

def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return error.code if isinstance(error.code, int) else EXIT_INVALID
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    logging.captureWarnings(True)

    try:
        match args.command:
            case "run":
                manifest = RunManifest(tuple(args.scenarios), args.output, plots=not args.no_plots,
                    seed=args.seed, workers=args.workers)
                return run_command(manifest)
            case "sweep":
                if not args.axis and args.uncertainty_band is None:
                    raise ValueError("sweep needs at least one --axis or --uncertainty-band")
                manifest = RunManifest((args.scenario,), args.output, tuple(args.axis),
                    args.uncertainty_band, not args.no_plots, args.seed, args.workers)
                return run_command(manifest)
            case "report":
                return report_command(args.runs, args.output, args.allow_mismatch, args.metric,
                    args.max_ratio)
            case "validate":
                return validate_command(args.scenarios)
    except (ValueError, FileNotFoundError) as error:
        logger.error("%s", error)
        return EXIT_INVALID
    return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
