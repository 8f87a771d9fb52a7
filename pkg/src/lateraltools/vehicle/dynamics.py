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


from math import cos, isfinite, sin
from typing import NamedTuple

from lateraltools.vehicle.params import PlantState, RoadConditions, TireOutput, VehicleParams
from lateraltools.vehicle.tires import DEFAULT_SLIP_LIMIT, tire_lateral_forces


class PlantDerivative(NamedTuple):
    """Time derivative of a PlantState together with the tire forces and
    lateral acceleration it was computed from"""
    y_ddot: float
    psi_dot: float
    psi_ddot: float
    v_x_dot: float
    X_dot: float
    Y_dot: float
    tires: TireOutput
    a_y: float


def plant_derivative(
        state: PlantState,
        delta: float,
        road: RoadConditions,
        params: VehicleParams,
        slip_limit: float = DEFAULT_SLIP_LIMIT) -> PlantDerivative:
    """Bicycle model lateral and yaw dynamics with Dugoff tires and road
    banking. Banking enters the lateral equation as the acceleration g*sin(phi).

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
    if not isfinite(delta):
        raise ValueError(f"Steering angle must be finite, got {delta}")
    tires = tire_lateral_forces(state, delta, road, params, slip_limit)
    a_y = (tires.f_yf+tires.f_yr)/params.m+params.g*sin(road.phi)
    y_ddot = a_y-state.v_x*state.psi_dot
    psi_ddot = (params.l_f*tires.f_yf-params.l_r*tires.f_yr)/params.I_z
    X_dot = state.v_x*cos(state.psi)-state.y_dot*sin(state.psi)
    Y_dot = state.v_x*sin(state.psi)+state.y_dot*cos(state.psi)
    return PlantDerivative(
        y_ddot=y_ddot,
        psi_dot=state.psi_dot,
        psi_ddot=psi_ddot,
        v_x_dot=0.0,
        X_dot=X_dot,
        Y_dot=Y_dot,
        tires=tires,
        a_y=a_y)
