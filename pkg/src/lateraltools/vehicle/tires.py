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


from math import atan, pi, radians, sqrt, tan
from typing import NamedTuple

from lateraltools.vehicle.params import (PlantState, RoadConditions, SlipAngleError,
    TireOutput, V_MIN, VehicleParams)


DEFAULT_SLIP_LIMIT = radians(85)


class SlipAngles(NamedTuple):
    theta_bar_f: float
    theta_bar_r: float
    theta_f: float
    theta_r: float


def slip_angles(state: PlantState, delta: float, params: VehicleParams) -> SlipAngles:
    """Front and rear tire slip angles, both exact (arctangent) and linearized

    Parameters
    ==========

    state : PlantState
        Plant state

    delta : float
        Road wheel steering angle in rad

    params : VehicleParams
        Vehicle parameters"""
    if not state.v_x >= V_MIN:
        raise ValueError(f"Longitudinal velocity {state.v_x} m/s is below v_min = {V_MIN} m/s")
    ratio_f = (state.y_dot+params.l_f*state.psi_dot)/state.v_x
    ratio_r = (state.y_dot-params.l_r*state.psi_dot)/state.v_x
    theta_bar_f = delta-atan(ratio_f)
    theta_bar_r = -atan(ratio_r)
    if abs(theta_bar_f) >= pi/2 or abs(theta_bar_r) >= pi/2:
        raise SlipAngleError(
            f"Slip angles ({theta_bar_f:.6g}, {theta_bar_r:.6g}) rad are outside (-pi/2, pi/2)")
    return SlipAngles(theta_bar_f, theta_bar_r, delta-ratio_f, -ratio_r)

def dugoff_shaping(gamma: float) -> float:
    """Dugoff force shaping function, (2-gamma)*gamma below one and one above

    Parameters
    ==========

    gamma : float
        Non-negative Dugoff friction parameter"""
    if gamma < 0:
        raise ValueError(f"Dugoff parameter must be non-negative, got {gamma}")
    if gamma < 1:
        return (2-gamma)*gamma
    return 1.0

def dugoff_gamma(tan_theta: float, road: RoadConditions, params: VehicleParams) -> float:
    """Dugoff friction parameter of one axle. The lateral term uses the summed
    axle stiffness Ct_f + Ct_r for both axles.

    Parameters
    ==========

    tan_theta : float
        Tangent of the exact slip angle

    road : RoadConditions
        Road state

    params : VehicleParams
        Vehicle parameters"""
    Ct_y = params.Ct_f+params.Ct_r
    denominator = 2*sqrt((params.C_x*road.beta_x)**2+(Ct_y*tan_theta)**2)
    if denominator == 0:
        return float("inf")
    return params.mu_r*(1+road.beta_x)*params.f_z/denominator

def tire_lateral_forces(
        state: PlantState,
        delta: float,
        road: RoadConditions,
        params: VehicleParams,
        slip_limit: float = DEFAULT_SLIP_LIMIT) -> TireOutput:
    """Dugoff lateral tire forces split into the nominal linear forces and the
    perturbation forces

    Parameters
    ==========

    state : PlantState
        Plant state

    delta : float
        Road wheel steering angle in rad

    road : RoadConditions
        Road state

    params : VehicleParams
        Vehicle parameters

    slip_limit : float
        Largest exact slip angle magnitude in rad the tire model accepts"""
    angles = slip_angles(state, delta, params)
    if abs(angles.theta_bar_f) >= slip_limit or abs(angles.theta_bar_r) >= slip_limit:
        raise SlipAngleError(
            f"Slip angles ({angles.theta_bar_f:.6g}, {angles.theta_bar_r:.6g}) rad exceed the "
            f"tire model limit of {slip_limit:.6g} rad")
    tan_f = tan(angles.theta_bar_f)
    tan_r = tan(angles.theta_bar_r)
    shaping_f = dugoff_shaping(dugoff_gamma(tan_f, road, params))
    shaping_r = dugoff_shaping(dugoff_gamma(tan_r, road, params))
    f_yf = params.Ct_f*tan_f*shaping_f/(1+road.beta_x)
    f_yr = params.Ct_r*tan_r*shaping_r/(1+road.beta_x)
    f_bar_yf = 2*params.C_f*angles.theta_f
    f_bar_yr = 2*params.C_r*angles.theta_r
    return TireOutput(
        theta_bar_f=angles.theta_bar_f,
        theta_bar_r=angles.theta_bar_r,
        theta_f=angles.theta_f,
        theta_r=angles.theta_r,
        f_yf=f_yf,
        f_yr=f_yr,
        f_bar_yf=f_bar_yf,
        f_bar_yr=f_bar_yr,
        f_tilde_yf=f_yf-f_bar_yf,
        f_tilde_yr=f_yr-f_bar_yr)
