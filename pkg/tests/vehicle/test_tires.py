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


from math import atan, radians, sqrt, tan

from numpy import isclose, linspace
import pytest

from lateraltools.vehicle import (dugoff_gamma, dugoff_shaping, PlantState, RoadConditions,
    slip_angles, SlipAngleError, tire_lateral_forces, VehicleParams)


def dugoff_oracle(theta_bar, Ct, Ct_y, C_x, mu_r, f_z, beta_x):
    gamma = mu_r*(1+beta_x)*f_z/(2*sqrt((C_x*beta_x)**2+(Ct_y*tan(theta_bar))**2))
    shaping = (2-gamma)*gamma if gamma < 1 else 1
    return Ct*tan(theta_bar)*shaping/(1+beta_x)


class TestSlipAngles:
    def setup_method(self, method):
        self.params = VehicleParams()

    def test_zero(self):
        angles = slip_angles(PlantState(0, 0, 0, 10), 0, self.params)
        assert angles == (0, 0, 0, 0)

    def test_rear_lateral_velocity(self):
        angles = slip_angles(PlantState(1, 0, 0, 10), 0, self.params)
        assert isclose(angles.theta_r, -0.1)
        assert isclose(angles.theta_bar_r, -atan(0.1))

    def test_linearization_residual(self):
        angles = slip_angles(PlantState(1, 0, 0, 10), 0, self.params)
        assert isclose(angles.theta_f-angles.theta_bar_f, -3.3131e-4, rtol=1e-3)

    def test_low_speed(self):
        with pytest.raises(ValueError) as error:
            slip_angles(PlantState(0, 0, 0, 0.1), 0, self.params)
        assert "v_min" in error.value.args[0]

    def test_slip_angle_error_is_value_error(self):
        assert issubclass(SlipAngleError, ValueError)


class TestDugoffShaping:
    def test_continuity(self):
        assert dugoff_shaping(1) == 1
        assert isclose(dugoff_shaping(1-1e-12), 1, rtol=0, atol=1e-15)

    def test_partial(self):
        assert dugoff_shaping(0.5) == 0.75

    def test_saturated(self):
        assert dugoff_shaping(2) == 1

    def test_negative(self):
        with pytest.raises(ValueError):
            dugoff_shaping(-0.1)

    def test_monotone_within_unit_range(self):
        values = [dugoff_shaping(gamma) for gamma in linspace(0, 3, 301)]
        assert values[0] == 0
        assert all(0 <= value <= 1 for value in values)
        assert all(later >= earlier for earlier, later in zip(values, values[1:]))

    def test_gamma_zero_slip(self):
        assert dugoff_gamma(0, RoadConditions(), VehicleParams()) == float("inf")


class TestTireLateralForces:
    def setup_method(self, method):
        self.params = VehicleParams()
        self.road = RoadConditions()

    def test_zero_slip(self):
        tires = tire_lateral_forces(PlantState(0, 0, 0, 10), 0, self.road, self.params)
        assert tires[4:] == (0, 0, 0, 0, 0, 0)

    def test_nominal_front_force(self):
        tires = tire_lateral_forces(PlantState(0, 0, 0, 10), 0.01, self.road, self.params)
        assert isclose(tires.f_bar_yf, 1200)

    def test_saturated_matches_oracle(self):
        params = VehicleParams(mu_r=0.3, f_z=4000)
        tires = tire_lateral_forces(PlantState(0, 0, 0, 10), 0.15, self.road, params)
        expected = dugoff_oracle(0.15, params.Ct_f, params.Ct_f+params.Ct_r, params.C_x, 0.3, 4000, 0)
        assert isclose(tires.f_yf, expected, rtol=1e-12, atol=0)
        assert tires.f_yr == 0

    @pytest.mark.parametrize("beta_x", [0, 0.05, -0.1])
    def test_oracle_grid(self, beta_x):
        road = RoadConditions(beta_x=beta_x)
        for delta in linspace(-0.6, 0.6, 100):
            tires = tire_lateral_forces(PlantState(0, 0, 0, 10), delta, road, self.params)
            expected = dugoff_oracle(delta, self.params.Ct_f, self.params.Ct_f+self.params.Ct_r,
                self.params.C_x, self.params.mu_r, self.params.f_z, beta_x)
            assert isclose(tires.f_yf, expected, rtol=1e-12, atol=1e-12)

    def test_decomposition(self):
        tires = tire_lateral_forces(PlantState(0.8, 0, 0.3, 10), 0.12, self.road, self.params)
        assert isclose(tires.f_bar_yf+tires.f_tilde_yf, tires.f_yf, rtol=1e-14, atol=1e-9)
        assert isclose(tires.f_bar_yr+tires.f_tilde_yr, tires.f_yr, rtol=1e-14, atol=1e-9)

    def test_small_slip_linear_agreement(self):
        params = VehicleParams(mu_r=1.5, f_z=50000)
        for theta in linspace(-radians(1.9), radians(1.9), 20):
            steered = tire_lateral_forces(PlantState(0, 0, 0, 10), theta, self.road, params)
            assert abs(steered.f_yf-steered.f_bar_yf) <= 0.05*abs(steered.f_bar_yf)
            sliding = tire_lateral_forces(PlantState(-10*tan(theta), 0, 0, 10), 0, self.road, params)
            assert abs(sliding.f_yf-sliding.f_bar_yf) <= 0.05*abs(sliding.f_bar_yf)
            assert abs(sliding.f_yr-sliding.f_bar_yr) <= 0.05*abs(sliding.f_bar_yr)

    def test_odd_symmetry(self):
        left = tire_lateral_forces(PlantState(0.5, 0, 0.2, 10), 0.1, self.road, self.params)
        right = tire_lateral_forces(PlantState(-0.5, 0, -0.2, 10), -0.1, self.road, self.params)
        assert all(isclose(a, -b, rtol=1e-14, atol=0) for a, b in zip(left, right))

    def test_slip_limit(self):
        with pytest.raises(SlipAngleError):
            tire_lateral_forces(PlantState(0, 0, 0, 10), 0.3, self.road, self.params,
                slip_limit=0.2)
