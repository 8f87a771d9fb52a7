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


import copy
from dataclasses import fields
import importlib.resources
import logging
from os import PathLike
from pathlib import Path

import yaml

from lateraltools.control import ControllerParams, ObserverGains, ObserverState, UncertaintySpec
from lateraltools.path import Profile
from lateraltools.simulation import (Check, default_step, fit_step, InitialConditions, Metrics,
    NoiseConfig, Scenario)
from lateraltools.unit import to_base
from lateraltools.utils import convert_to_unit
from lateraltools.vehicle import VehicleParams


logger = logging.getLogger(__name__)
presets = importlib.resources.files("lateraltools.io.resources.presets")

DEFAULT_HORIZON = 60.0
DEFAULT_PROFILE = "paper"

SECTIONS = (
    "name", "vehicle", "uncertainty", "road", "path", "banking", "initial", "observer",
    "controller", "integration", "noise", "feedback", "checks"
)

_road_kinds = {"v_x": "velocity", "beta_x": "dimensionless", "a_lat_max": "acceleration"}
_initial_kinds = {"z1": "length", "z3": "angle", "z4": "angular_velocity", "y_dot": "velocity"}
_estimate_kinds = {
    "z1_hat": "length",
    "z2_hat": "velocity",
    "D_l_hat": "acceleration",
    "z3_hat": "angle",
    "z4_hat": "angular_velocity",
    "D_psi_hat": "angular_acceleration",
}
_observer_kinds = dict.fromkeys(("h1", "h2", "h3", "g1", "g2", "g3", "epsilon"), "dimensionless")
_controller_kinds = {
    "eta1": "dimensionless",
    "eta2": "dimensionless",
    "tau": "dimensionless",
    "k3": "dimensionless",
    "k4": "dimensionless",
    "delta_max": "angle",
    "steering_ratio": "dimensionless",
}
_integration_kinds = {
    "dt": "time",
    "horizon": "time",
    "control_rate": "frequency",
    "measurement_rate": "frequency",
    "log_interval": "time",
    "slip_limit": "angle",
}
_noise_kinds = {"z1_std": "length", "z3_std": "angle"}
_uncertainty_kinds = {field.name: "dimensionless" for field in fields(UncertaintySpec)}
_segment_kinds = {"duration": "time", "period": "time", "phase": "angle"}


def preset_names() -> list[str]:
    """Names of the packaged scenario presets"""
    return sorted(
        entry.name.removesuffix(".yaml") for entry in presets.iterdir()
        if entry.name.endswith(".yaml"))

def read_scenario_file(source: str | PathLike) -> tuple[dict[str, any], str]:
    """Read a scenario file, or a preset if no file of that name exists, into
    its raw mapping. Returns the mapping and the default scenario name.

    Parameters
    ==========

    source : str | PathLike
        Path to a YAML scenario file or the name of a preset"""
    path = Path(source)
    if path.is_file():
        text = path.read_text(encoding="utf-8")
        name = path.stem
    elif str(source) in preset_names():
        text = presets.joinpath(f"{source}.yaml").read_text(encoding="utf-8")
        name = str(source)
    else:
        raise FileNotFoundError(f"No scenario file or preset named {source}")

    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as error:
        mark = getattr(error, "problem_mark", None)
        location = f" at line {mark.line+1}, column {mark.column+1}" if mark else ""
        problem = getattr(error, "problem", None) or error
        raise ValueError(f"Could not parse {source}{location}: {problem}") from None
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ValueError(f"Scenario {source} must be a mapping of sections")
    return data, name

def apply_overrides(data: dict[str, any], overrides: dict[str, any]) -> dict[str, any]:
    """Copy of a raw scenario mapping with values replaced at dotted keys such
    as "observer.epsilon" or "path.2.end". Missing sections are created and
    integer parts index into segment lists.

    Parameters
    ==========

    data : dict[str, any]
        Raw scenario mapping

    overrides : dict[str, any]
        Replacement values keyed by dotted path"""
    data = copy.deepcopy(data)
    for key, value in overrides.items():
        *parents, last = key.split(".")
        node = data
        for part in parents:
            if isinstance(node, list):
                node = node[_index(node, part, key)]
            elif isinstance(node, dict):
                if node.get(part) is None:
                    node[part] = {}
                node = node[part]
            else:
                raise ValueError(f"Override {key}: {part} is not inside a section")
        if isinstance(node, list):
            node[_index(node, last, key)] = value
        elif isinstance(node, dict):
            node[last] = value
        else:
            raise ValueError(f"Override {key}: {last} is not inside a section")
    return data

def _index(node: list, part: str, key: str) -> int:
    try:
        index = int(part)
        node[index]
    except (ValueError, IndexError):
        raise ValueError(f"Override {key}: {part} is not a valid segment index") from None
    return index

def _section(data: dict[str, any], name: str) -> dict[str, any]:
    section = data.get(name)
    if section is None:
        return {}
    if not isinstance(section, dict):
        raise ValueError(f"Section {name} must be a mapping, got {section!r}")
    return dict(section)

def _quantities(section: dict[str, any], kinds: dict[str, str], name: str) -> dict[str, float]:
    """Reduce the entries of a section to SI floats, rejecting unknown keys"""
    unknown = set(section) - set(kinds)
    if unknown:
        raise ValueError(f"Unknown keys in {name}: {", ".join(sorted(map(str, unknown)))}")
    values = {}
    for key, kind in kinds.items():
        value = section.get(key)
        if value is None:
            continue
        try:
            values[key] = to_base(convert_to_unit(value), kind)
        except ValueError as error:
            raise ValueError(f"{name}.{key}: {error}") from None
    return values

def _covered(records: any) -> float | None:
    """Total duration of a segment list when every segment states one"""
    if not isinstance(records, list) or not records:
        return None
    total = 0.0
    for position, record in enumerate(records):
        if not isinstance(record, dict) or record.get("duration") is None:
            return None
        try:
            total += to_base(convert_to_unit(record["duration"]), "time")
        except ValueError as error:
            raise ValueError(f"path.{position}.duration: {error}") from None
    return total

def _profile(records: any, kind: str, horizon: float, name: str) -> Profile | None:
    """Build a Profile from a segment list, or from a single value held over
    the horizon. A last segment without a duration extends to the horizon."""
    if records is None:
        return None
    if not isinstance(records, list):
        records = [{"kind": "constant", "value": records}]
    if not records:
        raise ValueError(f"{name} needs at least one segment")

    converted = []
    elapsed = 0.0
    for position, record in enumerate(records):
        if not isinstance(record, dict):
            raise ValueError(f"{name}.{position} must be a mapping, got {record!r}")
        segment = {}
        for key, value in record.items():
            if key == "kind":
                segment[key] = value
                continue
            try:
                segment[key] = to_base(convert_to_unit(value), _segment_kinds.get(key, kind))
            except ValueError as error:
                raise ValueError(f"{name}.{position}.{key}: {error}") from None
        if "duration" not in segment:
            if position != len(records)-1:
                raise ValueError(f"{name}.{position} needs a duration, only the last segment may omit it")
            segment["duration"] = horizon-elapsed
            if segment["duration"] <= 0:
                raise ValueError(
                    f"The segments of {name} before the last one already cover the horizon "
                    f"({horizon:g} s)")
        elapsed += segment["duration"]
        converted.append(segment)
    try:
        return Profile.from_records(converted)
    except ValueError as error:
        raise ValueError(f"{name}: {error}") from None

def _checks(section: any) -> tuple[Check, ...]:
    if section is None:
        return ()
    if not isinstance(section, dict):
        raise ValueError(f"Section checks must map metric names to bounds, got {section!r}")
    checks = []
    for metric, bounds in section.items():
        if metric not in Metrics._fields:
            raise ValueError(f"checks.{metric} is not a metric")
        bounds = bounds or {}
        if not isinstance(bounds, dict) or set(bounds) - {"min", "max"}:
            raise ValueError(f"checks.{metric} must be a mapping with min and/or max")
        limits = {}
        for key in ("min", "max"):
            value = bounds.get(key)
            if value is not None:
                try:
                    limits[key] = float(value)
                except (TypeError, ValueError):
                    raise ValueError(f"checks.{metric}.{key} must be a number, got {value!r}") from None
        checks.append(Check(metric, **limits))
    return tuple(checks)

def scenario_from_dict(data: dict[str, any], name: str = "scenario") -> Scenario:
    """Resolve a raw scenario mapping into a validated Scenario. Every scalar
    may be a number in SI units or a quantity string such as "10 mph".

    Parameters
    ==========

    data : dict[str, any]
        Raw scenario mapping

    name : str
        Scenario name used when the mapping does not set one"""
    unknown = set(data) - set(SECTIONS)
    if unknown:
        raise ValueError(f"Unknown scenario sections: {", ".join(sorted(map(str, unknown)))}")

    try:
        vehicle = VehicleParams.from_dict(
            {key: convert_to_unit(value) for key, value in _section(data, "vehicle").items()})
    except ValueError as error:
        raise ValueError(f"vehicle: {error}") from None
    uncertainty = UncertaintySpec(**_quantities(
        _section(data, "uncertainty"), _uncertainty_kinds, "uncertainty"))

    road = _quantities(_section(data, "road"), _road_kinds, "road")
    if "v_x" not in road:
        raise ValueError("road.v_x is required")

    observer_section = _section(data, "observer")
    observer_profile = observer_section.pop("profile", DEFAULT_PROFILE)
    observer = ObserverGains.from_profile(
        observer_profile, **_quantities(observer_section, _observer_kinds, "observer"))
    controller_section = _section(data, "controller")
    controller_profile = controller_section.pop("profile", DEFAULT_PROFILE)
    controller = ControllerParams.from_profile(
        controller_profile, **_quantities(controller_section, _controller_kinds, "controller"))

    integration_section = _section(data, "integration")
    exact = integration_section.pop("exact_errors", False)
    if not isinstance(exact, bool):
        raise ValueError(f"integration.exact_errors must be true or false, got {exact!r}")
    integration = _quantities(integration_section, _integration_kinds, "integration")
    horizon = integration.pop("horizon", None)
    if horizon is None:
        horizon = _covered(data.get("path")) or DEFAULT_HORIZON
    dt = integration.pop("dt", None)
    if dt is None:
        dt = fit_step(default_step(observer, controller), horizon)
        logger.debug("Resolved dt = %g s from the observer and controller time scales", dt)

    curvature = _profile(data.get("path", 0.0), "curvature", horizon, "path")
    banking = _profile(data.get("banking"), "angle", horizon, "banking")

    initial_section = _section(data, "initial")
    estimates = initial_section.pop("observer", None) or {}
    if not isinstance(estimates, dict):
        raise ValueError(f"initial.observer must be a mapping, got {estimates!r}")
    initial = InitialConditions(
        **_quantities(initial_section, _initial_kinds, "initial"),
        observer=ObserverState(**_quantities(estimates, _estimate_kinds, "initial.observer")))

    noise_section = _section(data, "noise")
    seed = noise_section.pop("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ValueError(f"noise.seed must be an integer, got {seed!r}")
    noise = NoiseConfig(**_quantities(noise_section, _noise_kinds, "noise"), seed=seed)

    return Scenario(
        v_x=road["v_x"],
        curvature=curvature,
        dt=dt,
        horizon=horizon,
        controller=controller,
        observer=observer,
        name=str(data.get("name") or name),
        vehicle=vehicle,
        uncertainty=uncertainty,
        banking=banking,
        beta_x=road.get("beta_x", 0.0),
        initial=initial,
        feedback=data.get("feedback", "estimated"),
        noise=noise,
        exact_errors=exact,
        checks=_checks(data.get("checks")),
        **integration,
        **({"a_lat_max": road["a_lat_max"]} if "a_lat_max" in road else {}))

def scenario_to_dict(scenario: Scenario) -> dict[str, any]:
    """Fully resolved mapping of a scenario in SI units. Loading it gives back
    an identical Scenario.

    Parameters
    ==========

    scenario : Scenario
        Scenario to serialize"""
    initial = scenario.initial
    return {
        "name": scenario.name,
        "vehicle": scenario.vehicle.to_dict(),
        "uncertainty": scenario.uncertainty.to_dict(),
        "road": {
            "v_x": scenario.v_x,
            "beta_x": scenario.beta_x,
            "a_lat_max": scenario.a_lat_max,
        },
        "path": scenario.curvature.to_records(),
        "banking": scenario.banking.to_records(),
        "initial": {
            "z1": initial.z1,
            "z3": initial.z3,
            "z4": initial.z4,
            "y_dot": initial.y_dot,
            "observer": dict(initial.observer._asdict()),
        },
        "observer": scenario.observer.to_dict(),
        "controller": scenario.controller.to_dict(),
        "integration": {
            "dt": scenario.dt,
            "horizon": scenario.horizon,
            "control_rate": scenario.control_rate,
            "measurement_rate": scenario.measurement_rate,
            "log_interval": scenario.log_interval,
            "exact_errors": scenario.exact_errors,
            "slip_limit": scenario.slip_limit,
        },
        "noise": dict(scenario.noise._asdict()),
        "feedback": scenario.feedback,
        "checks": {check.metric: {"min": check.min, "max": check.max} for check in scenario.checks},
    }

def write_scenario(scenario: Scenario, path: str | PathLike) -> Path:
    """Write the resolved form of a scenario as YAML

    Parameters
    ==========

    scenario : Scenario
        Scenario to write

    path : str | PathLike
        Destination file"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, mode="w", encoding="utf-8") as file:
        yaml.safe_dump(scenario_to_dict(scenario), file, sort_keys=False)
    return path

def load_scenario(
        source: str | PathLike,
        overrides: dict[str, any] | None = None,
        echo: str | PathLike | None = None) -> Scenario:
    """Load, resolve and validate a scenario file or preset

    Parameters
    ==========

    source : str | PathLike
        Path to a YAML scenario file or the name of a preset

    overrides : dict[str, any] | None
        Values replacing entries of the file at dotted keys

    echo : str | PathLike | None
        File to write the resolved scenario to"""
    data, name = read_scenario_file(source)
    if overrides:
        data = apply_overrides(data, overrides)
    scenario = scenario_from_dict(data, name)
    logger.debug("Loaded %s from %s", scenario.name, source)
    if echo is not None:
        write_scenario(scenario, echo)
    return scenario
