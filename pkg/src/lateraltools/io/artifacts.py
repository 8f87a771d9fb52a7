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
from os import PathLike
from pathlib import Path
from typing import NamedTuple

from matplotlib.figure import Figure
import numpy as np

from lateraltools.analysis import closed_loop_poles
from lateraltools.control import hurwitz_check, nominal_coefficients
from lateraltools.io.scenario_file import write_scenario
from lateraltools.simulation import Check, metrics, Metrics, Scenario, SimLog


logger = logging.getLogger(__name__)

PLOT_NAMES = ("trajectory", "e_h1", "e_h3", "steering")


class CheckResult(NamedTuple):
    metric: str
    value: float | None
    min: float | None
    max: float | None
    passed: bool


class RunRecord(NamedTuple):
    """What a finished run left behind, small enough to pass between
    processes"""
    name: str
    directory: str
    status: str
    reason: str
    metrics: dict[str, any]
    checks: list[CheckResult]

    @property
    def aborted(self) -> bool:
        return self.status == "aborted"

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


def evaluate_checks(checks: tuple[Check, ...], result: Metrics) -> list[CheckResult]:
    """Compare metrics against their bounds. A metric that is absent from the
    run fails its check.

    Parameters
    ==========

    checks : tuple[Check, ...]
        Bounds to check

    result : Metrics
        Metrics of the run"""
    results = []
    for check in checks:
        value = getattr(result, check.metric)
        passed = (
            value is not None
            and (check.min is None or value >= check.min)
            and (check.max is None or value <= check.max))
        results.append(CheckResult(check.metric, value, check.min, check.max, passed))
    return results

def metrics_record(scenario: Scenario, log: SimLog, result: Metrics | None,
        checks: list[CheckResult]) -> dict[str, any]:
    """Content of metrics.json"""
    return {
        "name": scenario.name,
        "status": log.status,
        "reason": log.reason,
        "abort_time": log.abort_time,
        "dt": scenario.dt,
        "horizon": scenario.horizon,
        "v_x": scenario.v_x,
        "epsilon": scenario.observer.epsilon,
        "metrics": {} if result is None else result._asdict(),
        "checks": [check._asdict() for check in checks],
    }

def summary_markdown(scenario: Scenario, result: Metrics | None, checks: list[CheckResult],
        log: SimLog) -> str:
    """Run summary with the calculation sheets of the nominal model and the
    observer gains, the nominal closed-loop poles and the check results"""
    coefficients = nominal_coefficients(scenario.vehicle, scenario.v_x, precision=6)
    gains = scenario.observer
    poles = closed_loop_poles(coefficients.value, scenario.controller)
    lines = [
        f"# {scenario.name}",
        "",
        f"Status: {log.status}" + (f" at t = {log.abort_time:g} s ({log.reason})" if log.aborted else ""),
        "",
        f"v_x = {scenario.v_x:g} m/s, dt = {scenario.dt:g} s, horizon = {scenario.horizon:g} s, "
        f"feedback = {scenario.feedback}",
        "",
        "## Nominal error dynamics",
        "",
        coefficients.string,
        "",
        "## Observer gains",
        "",
        hurwitz_check(gains.h1, gains.h2, gains.h3, symbol="h").string,
        "",
        hurwitz_check(gains.g1, gains.g2, gains.g3, symbol="g").string,
        "",
        "## Nominal closed-loop poles",
        "",
        *(f"- {pole.real:.6g} {"+" if pole.imag >= 0 else "-"} {abs(pole.imag):.6g}j" for pole in poles),
        "",
    ]
    if result is not None:
        lines += ["## Metrics", "", "| metric | value |", "|---|---|"]
        lines += [f"| {name} | {value} |" for name, value in result._asdict().items()]
        lines.append("")
    if checks:
        lines += ["## Checks", "", "| metric | value | min | max | result |", "|---|---|---|---|---|"]
        lines += [
            f"| {check.metric} | {check.value} | {check.min} | {check.max} | "
            f"{"pass" if check.passed else "FAIL"} |"
            for check in checks
        ]
        lines.append("")
    return "\n".join(lines)

def plot_run(scenario: Scenario, log: SimLog, directory: str | PathLike) -> list[Path]:
    """Write the trajectory, estimation error and steering plots of a run as
    SVG files

    Parameters
    ==========

    scenario : Scenario
        Scenario of the run

    log : SimLog
        Log of the run

    directory : str | PathLike
        Directory to write the plots to"""
    directory = Path(directory)
    data = log.data
    t = data["t"].to_numpy()
    paths = []

    figure = Figure(figsize=(6, 6))
    axes = figure.subplots()
    axes.plot(data["X_des"], data["Y_des"], "k--", linewidth=1, label="reference")
    axes.plot(data["X"], data["Y"], "b-", linewidth=1, label="vehicle")
    axes.set_xlabel("X (m)")
    axes.set_ylabel("Y (m)")
    axes.set_aspect("equal", adjustable="datalim")
    axes.set_title(f"{scenario.name}: trajectory")
    axes.legend()
    axes.grid(True, alpha=0.3)
    paths.append(directory/"trajectory.svg")
    figure.savefig(paths[-1], format="svg", bbox_inches="tight")

    for column, label, units in (("e_h1", "e_{h1} = z_1 - \\hat{z}_1", "m"),
            ("e_h3", "e_{h3} = z_3 - \\hat{z}_3", "rad")):
        figure = Figure(figsize=(6, 4))
        axes = figure.subplots()
        axes.plot(t, data[column], "b-", linewidth=1)
        axes.set_xlabel("t (s)")
        axes.set_ylabel(f"${label}$ ({units})")
        axes.set_title(f"{scenario.name}: {column}")
        axes.grid(True, alpha=0.3)
        paths.append(directory/f"{column}.svg")
        figure.savefig(paths[-1], format="svg", bbox_inches="tight")

    limit = scenario.controller.delta_limit
    figure = Figure(figsize=(6, 4))
    axes = figure.subplots()
    axes.plot(t, data["delta"], "b-", linewidth=1, label="$\\delta$")
    axes.plot(t, np.full_like(t, limit), "r:", linewidth=1, label="limit")
    axes.plot(t, np.full_like(t, -limit), "r:", linewidth=1)
    axes.set_xlabel("t (s)")
    axes.set_ylabel("$\\delta$ (rad)")
    axes.set_title(f"{scenario.name}: steering")
    axes.legend()
    axes.grid(True, alpha=0.3)
    paths.append(directory/"steering.svg")
    figure.savefig(paths[-1], format="svg", bbox_inches="tight")
    return paths

def write_run(scenario: Scenario, log: SimLog, directory: str | PathLike, plots: bool = True
        ) -> RunRecord:
    """Write every artifact of a run to its directory: scenario.yaml,
    log.csv, metrics.json, summary.md and, if enabled, the plots

    Parameters
    ==========

    scenario : Scenario
        Scenario of the run

    log : SimLog
        Log of the run

    directory : str | PathLike
        Run directory, created if missing

    plots : bool
        Whether to write the SVG plots"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_scenario(scenario, directory/"scenario.yaml")
    log.data.to_csv(directory/"log.csv", index=False)

    result = metrics(log) if not log.data.empty else None
    if result is None:
        checks = [CheckResult(check.metric, None, check.min, check.max, False)
            for check in scenario.checks]
    else:
        checks = evaluate_checks(scenario.checks, result)
    record = metrics_record(scenario, log, result, checks)
    with open(directory/"metrics.json", mode="w", encoding="utf-8") as file:
        json.dump(record, file, indent=4)
    (directory/"summary.md").write_text(summary_markdown(scenario, result, checks, log),
        encoding="utf-8")
    if plots and not log.data.empty:
        plot_run(scenario, log, directory)

    for check in checks:
        if not check.passed:
            logger.warning("%s: check on %s failed (value %s, min %s, max %s)", scenario.name,
                check.metric, check.value, check.min, check.max)
    logger.info("Wrote %s artifacts to %s", scenario.name, directory)
    return RunRecord(scenario.name, str(directory), log.status, log.reason, record["metrics"],
        checks)
