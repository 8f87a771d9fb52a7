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



from math import sin

from numpy import isclose
import pytest

from lateraltools.control import (disturbance_residual, nominal_coefficients,
    UncertaintySpec)
from lateraltools.path import error_rates, Profile, reference_state, tracking_errors
from lateraltools.vehicle import plant_derivative, PlantState, RoadConditions, VehicleParams


class TestNominalCoefficients:
    def setup_method(self, method):
        self.result = nominal_coefficients(VehicleParams(), 10)
        self.coeffs = self.result.value

    def test_a22(self):
        assert isclose(self.coeffs.a22, -240000/18000)

    def test_a23(self):
        assert isclose(self.coeffs.a23, -10*self.coeffs.a22)
        assert isclose(self.coeffs.a23, 133.3333333)

    def test_b21(self):
        assert isclose(self.coeffs.b21, 2*60000/1800)

    def test_alphas(self):
        coeffs = self.coeffs
        assert isclose(coeffs.ratio, coeffs.b41/coeffs.b21)
        assert isclose(coeffs.alpha2, coeffs.a42-coeffs.a22*coeffs.ratio)
        assert isclose(coeffs.alpha3, coeffs.a43-coeffs.a23*coeffs.ratio)
        assert isclose(coeffs.alpha4, coeffs.a44-coeffs.a24*coeffs.ratio)
        assert isclose(coeffs.alpha, 10+coeffs.a24)

    def test_string(self):
        assert self.result.string.startswith("$$\n\\begin{aligned}\n")
        assert "&= -13.33\n" in self.result.string
        assert "&= 66.67\n" in self.result.string

    def test_no_string(self):
        assert nominal_coefficients(VehicleParams(), 10, return_string=False).string == ""

    def test_low_speed(self):
        with pytest.raises(ValueError) as error:
            nominal_coefficients(VehicleParams(), 0.1)
        assert "v_min" in error.value.args[0]


class TestDisturbanceResidual:
    def setup_method(self, method):
        self.params = VehicleParams(mu_r=1.5, f_z=100000)
        self.coeffs = nominal_coefficients(self.params, 10, return_string=False).value

    def residual(self, state, delta, road, profile, t=1.0):
        ref = reference_state(profile, t, 10)
        derivative = plant_derivative(state, delta, road, self.params)
        errors = tracking_errors(state, ref)
        rates = error_rates(state, derivative, ref)
        return disturbance_residual(errors, rates, delta, self.coeffs), derivative, ref

    def test_nominal_model_is_exact(self):
        state = PlantState(0.3, 0.02, 0.05, 10, 10, 0.1)
        (D_l, D_psi), _, _ = self.residual(state, 0, RoadConditions(), Profile.constant(0, 10))
        assert isclose(D_l, 0, atol=1e-9)
        assert isclose(D_psi, 0, atol=1e-9)

    def test_banking_only(self):
        state = PlantState(0, 0, 0, 10, 10, 0)
        (D_l, D_psi), _, _ = self.residual(state, 0, RoadConditions(phi=0.05),
            Profile.constant(0, 10))
        assert isclose(D_l, 9.81*sin(0.05))
        assert isclose(D_l, 0.4894, rtol=1e-3)
        assert isclose(D_psi, 0, atol=1e-12)

    def test_analytic_form(self):
        state = PlantState(0.2, 0.15, 0.12, 10, 9, 1.2)
        (D_l, D_psi), derivative, ref = self.residual(state, 0.03, RoadConditions(phi=0.04),
            Profile.constant(0.01, 10))
        tires = derivative.tires
        expected_l = (9.81*sin(0.04)+(tires.f_tilde_yf+tires.f_tilde_yr)/self.params.m
            +(self.coeffs.a24-10)*ref.psi_dot_des)
        expected_psi = ((self.params.l_f*tires.f_tilde_yf-self.params.l_r*tires.f_tilde_yr)
            /self.params.I_z+self.coeffs.a44*ref.psi_dot_des-ref.psi_ddot_des)
        assert isclose(D_l, expected_l, rtol=1e-9, atol=1e-12)
        assert isclose(D_psi, expected_psi, rtol=1e-9, atol=1e-12)


class TestUncertaintySpec:
    def test_nominal(self):
        spec = UncertaintySpec()
        assert spec.is_nominal
        assert spec.apply(VehicleParams()) == VehicleParams()
        assert all(delta == 0 for delta in spec.coefficient_deltas(VehicleParams(), 10))

    def test_apply(self):
        plant = UncertaintySpec(mass=1.1, front_stiffness=0.9).apply(VehicleParams())
        assert isclose(plant.m, 1980)
        assert isclose(plant.f_z, 1800*9.81/4*1.1)
        assert isclose(plant.C_f, 54000)
        assert isclose(plant.Ct_f, 108000)
        assert plant.C_r == 60000

    def test_coefficient_deltas(self):
        deltas = UncertaintySpec(front_stiffness=1.2).coefficient_deltas(VehicleParams(), 10)
        assert isclose(deltas.b21, 0.2*2*60000/1800)
        assert isclose(deltas.a22, -0.2*2*60000/18000)

    def test_corners(self):
        corners = UncertaintySpec.corners(0.1)
        assert len(corners) == 8
        assert UncertaintySpec(mass=0.9, front_stiffness=1.1, rear_stiffness=0.9) in corners

    def test_bad_band(self):
        with pytest.raises(ValueError):
            UncertaintySpec.corners(1)

    def test_non_positive(self):
        with pytest.raises(ValueError):
            UncertaintySpec(mass=0)
