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



from numpy import isclose
import pytest

from lateraltools.io import (apply_overrides, load_scenario, preset_names, read_scenario_file,
    scenario_from_dict, scenario_to_dict, write_scenario)
from lateraltools.path import Constant, Ramp


def write_file(tmp_path, text: str, name: str = "case.yaml"):
    path = tmp_path/name
    path.write_text(text, encoding="utf-8")
    return path


def test_preset_names():
    assert preset_names() == ["banked_speedway", "flat_lot", "inclined_road"]

def test_missing_source():
    with pytest.raises(FileNotFoundError, match="No scenario file or preset named nowhere"):
        read_scenario_file("nowhere")

def test_parse_error(tmp_path):
    path = write_file(tmp_path, "road: v_x: 10\n")
    with pytest.raises(ValueError) as error:
        read_scenario_file(path)
    assert str(error.value).startswith(f"Could not parse {path} at line")

def test_not_a_mapping(tmp_path):
    path = write_file(tmp_path, "- 1\n- 2\n")
    with pytest.raises(ValueError, match="must be a mapping of sections"):
        read_scenario_file(path)

def test_file_name_is_default_name(tmp_path):
    path = write_file(tmp_path, "road: {v_x: 10}\n", "unnamed.yaml")
    assert load_scenario(path).name == "unnamed"


class TestMinimalScenario:
    def setup_method(self, method):
        self.scenario = scenario_from_dict({"road": {"v_x": 10}})

    def test_defaults(self):
        assert self.scenario.name == "scenario"
        assert self.scenario.horizon == 60
        assert self.scenario.curvature.segments == (Constant(60, 0.0),)
        assert self.scenario.banking.max_abs() == 0
        assert self.scenario.feedback == "estimated"
        assert not self.scenario.exact_errors
        assert self.scenario.checks == ()

    def test_paper_profile(self):
        assert self.scenario.observer.epsilon == 0.005
        assert self.scenario.controller.k4 == 250000
        assert self.scenario.controller.steering_ratio == 1

    def test_resolved_step(self):
        assert isclose(self.scenario.dt, 4e-6)
        assert self.scenario.steps == 15000000


class TestScenarioFromDict:
    def test_quantity_strings(self):
        scenario = scenario_from_dict({
            "road": {"v_x": "36 km/hr"},
            "path": "0.01 / m",
            "banking": "3 deg",
            "initial": {"z1": "50 cm", "z3": "2 deg"},
            "observer": {"profile": "simulation"},
            "controller": {"profile": "simulation"},
            "integration": {"dt": "1 ms", "horizon": "10 s"}})
        assert isclose(scenario.v_x, 10)
        assert isclose(scenario.curvature.value(5.0), 0.01)
        assert isclose(scenario.banking.value(5.0), 0.05235987756)
        assert isclose(scenario.initial.z1, 0.5)
        assert isclose(scenario.initial.z3, 0.03490658504)
        assert isclose(scenario.dt, 0.001)

    def test_horizon_from_path(self):
        scenario = scenario_from_dict({
            "road": {"v_x": 10},
            "path": [{"duration": 4, "value": 0}, {"kind": "ramp", "duration": 6, "start": 0, "end": 0.01}],
            "controller": {"profile": "simulation"},
            "integration": {"dt": 0.001}})
        assert scenario.horizon == 10

    def test_last_segment_fills_horizon(self):
        scenario = scenario_from_dict({
            "road": {"v_x": 10},
            "path": [{"kind": "ramp", "duration": 2, "start": 0, "end": 0.01}, {"value": 0.01}],
            "controller": {"profile": "simulation"},
            "integration": {"dt": 0.001, "horizon": 10}})
        assert scenario.curvature.segments == (Ramp(2, 0, 0.01), Constant(8, 0.01))

    def test_only_last_segment_may_omit_duration(self):
        with pytest.raises(ValueError, match="path.0 needs a duration"):
            scenario_from_dict({
                "road": {"v_x": 10},
                "path": [{"value": 0}, {"duration": 2, "value": 0.01}],
                "integration": {"horizon": 10}})

    def test_requires_speed(self):
        with pytest.raises(ValueError, match="road.v_x is required"):
            scenario_from_dict({"name": "slow"})

    def test_speed_below_minimum(self):
        with pytest.raises(ValueError, match="v_min"):
            scenario_from_dict({"road": {"v_x": 0.1}})

    def test_unknown_section(self):
        with pytest.raises(ValueError) as error:
            scenario_from_dict({"road": {"v_x": 10}, "tires": {}, "driver": {}})
        assert str(error.value) == "Unknown scenario sections: driver, tires"

    def test_unknown_key(self):
        with pytest.raises(ValueError) as error:
            scenario_from_dict({"road": {"v_x": 10, "speed": 3}})
        assert str(error.value) == "Unknown keys in road: speed"

    def test_wrong_dimension(self):
        with pytest.raises(ValueError) as error:
            scenario_from_dict({"road": {"v_x": "10 kg"}})
        assert str(error.value).startswith("road.v_x: ")

    def test_vehicle_error_prefix(self):
        with pytest.raises(ValueError) as error:
            scenario_from_dict({"road": {"v_x": 10}, "vehicle": {"m": -1}})
        assert str(error.value).startswith("vehicle: ")

    def test_unknown_gain_profile(self):
        with pytest.raises(ValueError, match="Unknown gain profile: fast"):
            scenario_from_dict({"road": {"v_x": 10}, "observer": {"profile": "fast"}})

    def test_exact_errors_flag(self):
        with pytest.raises(ValueError, match="integration.exact_errors must be true or false"):
            scenario_from_dict({"road": {"v_x": 10}, "integration": {"exact_errors": "yes"}})

    def test_seed(self):
        scenario = scenario_from_dict({"road": {"v_x": 10}, "noise": {"z1_std": "1 cm", "seed": 7}})
        assert scenario.noise.seed == 7
        assert isclose(scenario.noise.z1_std, 0.01)
        with pytest.raises(ValueError, match="noise.seed must be an integer"):
            scenario_from_dict({"road": {"v_x": 10}, "noise": {"seed": 1.5}})

    def test_checks(self):
        scenario = scenario_from_dict({
            "road": {"v_x": 10},
            "checks": {"rms_z1": {"max": 0.1}, "decay_rate": {"min": -5, "max": 0}}})
        assert [(check.metric, check.min, check.max) for check in scenario.checks] == [
            ("rms_z1", None, 0.1), ("decay_rate", -5.0, 0.0)]
        with pytest.raises(ValueError, match="checks.speed is not a metric"):
            scenario_from_dict({"road": {"v_x": 10}, "checks": {"speed": {"max": 1}}})
        with pytest.raises(ValueError, match="checks.rms_z1 must be a mapping"):
            scenario_from_dict({"road": {"v_x": 10}, "checks": {"rms_z1": {"below": 1}}})


class TestOverrides:
    def setup_method(self, method):
        self.data = {
            "road": {"v_x": 10},
            "path": [{"duration": 2, "value": 0}, {"kind": "ramp", "duration": 3, "start": 0, "end": 0.01}]}

    def test_nested(self):
        data = apply_overrides(self.data, {"observer.epsilon": 0.01, "road.v_x": 12})
        assert data["observer"] == {"epsilon": 0.01}
        assert data["road"]["v_x"] == 12
        assert self.data["road"]["v_x"] == 10

    def test_segment_index(self):
        data = apply_overrides(self.data, {"path.1.end": 0.02})
        assert data["path"][1]["end"] == 0.02
        assert self.data["path"][1]["end"] == 0.01

    def test_bad_index(self):
        with pytest.raises(ValueError) as error:
            apply_overrides(self.data, {"path.5.end": 0.02})
        assert str(error.value) == "Override path.5.end: 5 is not a valid segment index"

    def test_load_with_overrides(self):
        scenario = load_scenario("flat_lot", {"observer.epsilon": 0.01, "noise.seed": 3})
        assert scenario.observer.epsilon == 0.01
        assert scenario.noise.seed == 3
        assert scenario.name == "flat_lot"


class TestRoundTrip:
    @pytest.mark.parametrize("preset", ["banked_speedway", "flat_lot", "inclined_road"])
    def test_presets(self, tmp_path, preset):
        scenario = load_scenario(preset, echo=tmp_path/"echo.yaml")
        assert load_scenario(tmp_path/"echo.yaml") == scenario
        assert scenario.exact_errors

    def test_everything_set(self, tmp_path):
        scenario = scenario_from_dict({
            "name": "full",
            "vehicle": {"m": "1500 kg", "mu_r": 0.7},
            "uncertainty": {"mass": 1.1, "friction": 0.9},
            "road": {"v_x": "15 mph", "beta_x": 0.05, "a_lat_max": 3},
            "path": [{"kind": "sinusoid", "duration": 20, "amplitude": 0.01, "period": 10, "phase": "30 deg"}],
            "banking": [{"kind": "ramp", "duration": 20, "start": 0, "end": "2 deg"}],
            "initial": {"z1": 0.2, "z4": 0.01, "observer": {"z1_hat": 0.1}},
            "observer": {"profile": "simulation", "epsilon": 0.01},
            "controller": {"profile": "simulation", "k3": 300},
            "integration": {"dt": 0.001, "control_rate": 100, "measurement_rate": 200,
                "log_interval": 0.01, "exact_errors": True},
            "noise": {"z1_std": 0.01, "z3_std": 0.001, "seed": 11},
            "feedback": "exact",
            "checks": {"rms_z1": {"max": 0.2}}})
        path = write_scenario(scenario, tmp_path/"nested"/"full.yaml")
        assert path.is_file()
        assert load_scenario(path) == scenario
        assert scenario_from_dict(scenario_to_dict(scenario)) == scenario
