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


from math import ceil, cos, isfinite, sin
from typing import NamedTuple

import numpy as np
from scipy.integrate import simpson

from lateraltools.path.profiles import Profile
from lateraltools.utils import wrap_angle
from lateraltools.vehicle import PlantDerivative, PlantState


class ReferenceState(NamedTuple):
    t: float
    kappa: float
    psi_des: float
    psi_dot_des: float
    psi_ddot_des: float
    a_y_des: float
    X_des: float
    Y_des: float


class PoseErrors(NamedTuple):
    """Lateral offset z1, along-track offset s and heading error z3 of a pose
    relative to the reference pose at the same instant"""
    z1: float
    s: float
    z3: float


class ErrorState(NamedTuple):
    z1: float
    z2: float
    z3: float
    z4: float


class ErrorRates(NamedTuple):
    z2_dot: float
    z4_dot: float


def _check_speed(v_x: float) -> None:
    if not (isfinite(v_x) and v_x > 0):
        raise ValueError(f"Longitudinal velocity must be positive and finite, got {v_x}")

def reference_state(profile: Profile, t: float, v_x: float, max_step: float = 1e-3
        ) -> ReferenceState:
    """Desired yaw, yaw rate, yaw acceleration, lateral acceleration and pose
    at time t for a vehicle following the curvature profile at constant speed.
    The pose is integrated from the origin with composite Simpson quadrature.

    Parameters
    ==========

    profile : Profile
        Curvature profile in 1/m

    t : float
        Time in s

    v_x : float
        Longitudinal velocity in m/s

    max_step : float
        Largest quadrature step in s"""
    _check_speed(v_x)
    kappa = profile.value(t)
    psi_des = v_x*profile.integral(t)
    if t > 0:
        times = np.linspace(0, t, 2*max(1, ceil(t/max_step))+1)
        psi = v_x*profile.integral(times)
        X_des = float(simpson(v_x*np.cos(psi), x=times))
        Y_des = float(simpson(v_x*np.sin(psi), x=times))
    else:
        X_des = Y_des = 0.0
    return ReferenceState(
        t=t,
        kappa=kappa,
        psi_des=psi_des,
        psi_dot_des=kappa*v_x,
        psi_ddot_des=profile.rate(t)*v_x,
        a_y_des=kappa*v_x**2,
        X_des=X_des,
        Y_des=Y_des)


class ReferencePath:
    """Reference trajectory precomputed on a half-step grid, t_i = i*dt/2, so
    every stage of a fourth order Runge-Kutta step lands on a grid point. The
    pose is integrated with Simpson's rule over each half step."""
    def __init__(self, curvature: Profile, v_x: float, dt: float, horizon: float | None = None):
        """Create a new reference path

        Parameters
        ==========

        curvature : Profile
            Curvature profile in 1/m

        v_x : float
            Longitudinal velocity in m/s

        dt : float
            Simulation step in s

        horizon : float | None
            Length of the path in s, defaults to the profile horizon"""
        _check_speed(v_x)
        horizon = curvature.horizon if horizon is None else horizon
        if horizon > curvature.horizon*(1+1e-9):
            raise ValueError(
                f"Curvature profile ({curvature.horizon:g} s) is shorter than the horizon ({horizon:g} s)")
        steps = round(horizon/dt)
        if steps < 1 or abs(steps*dt-horizon) > 1e-9*horizon:
            raise ValueError(f"Horizon ({horizon:g} s) is not a multiple of the step ({dt:g} s)")
        self.curvature = curvature
        self.v_x = v_x
        self.dt = dt
        self.steps = steps
        quarter = np.arange(4*steps+1)*(dt/4)
        psi_quarter = v_x*curvature.integral(quarter)
        cos_quarter = np.cos(psi_quarter)
        sin_quarter = np.sin(psi_quarter)
        weight = v_x*dt/12
        X_steps = weight*(cos_quarter[0:-2:2]+4*cos_quarter[1::2]+cos_quarter[2::2])
        Y_steps = weight*(sin_quarter[0:-2:2]+4*sin_quarter[1::2]+sin_quarter[2::2])
        self.t = quarter[::2]
        self.kappa = curvature.value(self.t)
        self.psi_des = psi_quarter[::2]
        self.psi_dot_des = self.kappa*v_x
        self.psi_ddot_des = curvature.rate(self.t)*v_x
        self.a_y_des = self.kappa*v_x**2
        self.X_des = np.concatenate(([0.0], np.cumsum(X_steps)))
        self.Y_des = np.concatenate(([0.0], np.cumsum(Y_steps)))

    def __len__(self) -> int:
        return len(self.t)

    def sample(self, index: int) -> ReferenceState:
        """Reference state at a half-step grid index

        Parameters
        ==========

        index : int
            Grid index, 2*k at the start of step k"""
        return ReferenceState(
            t=float(self.t[index]),
            kappa=float(self.kappa[index]),
            psi_des=float(self.psi_des[index]),
            psi_dot_des=float(self.psi_dot_des[index]),
            psi_ddot_des=float(self.psi_ddot_des[index]),
            a_y_des=float(self.a_y_des[index]),
            X_des=float(self.X_des[index]),
            Y_des=float(self.Y_des[index]))

    def at(self, t: float) -> ReferenceState:
        """Reference state at any time within the path

        Parameters
        ==========

        t : float
            Time in s"""
        horizon = self.t[-1]
        if not -1e-9*horizon <= t <= horizon*(1+1e-9):
            raise ValueError(f"Time {t:g} s is outside the reference path [0, {horizon:g}] s")
        half = self.dt/2
        index = min(max(int(t/half), 0), len(self.t)-2)
        if t == self.t[index]:
            return self.sample(index)
        t_index = self.t[index]
        psi_index, psi_mid, psi_t = self.v_x*self.curvature.integral(
            np.array([t_index, (t_index+t)/2, t]))
        weight = self.v_x*(t-t_index)/6
        kappa = self.curvature.value(t)
        return ReferenceState(
            t=t,
            kappa=kappa,
            psi_des=float(psi_t),
            psi_dot_des=kappa*self.v_x,
            psi_ddot_des=self.curvature.rate(t)*self.v_x,
            a_y_des=kappa*self.v_x**2,
            X_des=float(self.X_des[index]+weight*(cos(psi_index)+4*cos(psi_mid)+cos(psi_t))),
            Y_des=float(self.Y_des[index]+weight*(sin(psi_index)+4*sin(psi_mid)+sin(psi_t))))


def pose_errors(
        X: float,
        Y: float,
        psi: float,
        X_des: float,
        Y_des: float,
        psi_des: float) -> PoseErrors:
    """Offsets of a pose in the frame of the reference pose. z1 is positive to
    the left of the reference heading.

    Parameters
    ==========

    X, Y : float
        World position in m

    psi : float
        Yaw angle in rad

    X_des, Y_des : float
        Reference world position in m

    psi_des : float
        Reference yaw angle in rad"""
    dx = X-X_des
    dy = Y-Y_des
    cos_des = cos(psi_des)
    sin_des = sin(psi_des)
    return PoseErrors(
        z1=-dx*sin_des+dy*cos_des,
        s=dx*cos_des+dy*sin_des,
        z3=wrap_angle(psi-psi_des))

def tracking_errors(state: PlantState, ref: ReferenceState, exact: bool = False
        ) -> ErrorState:
    """Path-relative tracking errors of the plant with z2 = y_dot + v_x*z3.
    With exact set, z2 is instead the exact time derivative of z1,
    v_x*sin(z3) + y_dot*cos(z3) - psi_dot_des*s with s the along-track offset.

    Parameters
    ==========

    state : PlantState
        Plant state including its world pose

    ref : ReferenceState
        Reference state at the same instant

    exact : bool
        Whether z2 is the exact time derivative of z1"""
    offsets = pose_errors(state.X, state.Y, state.psi, ref.X_des, ref.Y_des, ref.psi_des)
    if exact:
        z2 = (state.v_x*sin(offsets.z3)+state.y_dot*cos(offsets.z3)
            -ref.psi_dot_des*offsets.s)
    else:
        z2 = state.y_dot+state.v_x*offsets.z3
    errors = ErrorState(offsets.z1, z2, offsets.z3, state.psi_dot-ref.psi_dot_des)
    if not all(isfinite(value) for value in errors):
        raise ValueError(f"Non-finite tracking errors: {errors}")
    return errors

def error_rates(
        state: PlantState,
        derivative: PlantDerivative,
        ref: ReferenceState,
        exact: bool = False) -> ErrorRates:
    """Time derivatives of z2 and z4 matching tracking_errors

    Parameters
    ==========

    state : PlantState
        Plant state including its world pose

    derivative : PlantDerivative
        Plant derivative at the same state

    ref : ReferenceState
        Reference state at the same instant

    exact : bool
        Whether z2 is the exact time derivative of z1"""
    z4 = state.psi_dot-ref.psi_dot_des
    z4_dot = derivative.psi_ddot-ref.psi_ddot_des
    offsets = pose_errors(state.X, state.Y, state.psi, ref.X_des, ref.Y_des, ref.psi_des)
    if not exact:
        return ErrorRates(derivative.y_ddot+state.v_x*z4, z4_dot)
    cos_z3 = cos(offsets.z3)
    sin_z3 = sin(offsets.z3)
    s_dot = state.v_x*cos_z3-state.y_dot*sin_z3-state.v_x+ref.psi_dot_des*offsets.z1
    z2_dot = (state.v_x*cos_z3*z4+derivative.y_ddot*cos_z3-state.y_dot*sin_z3*z4
        -ref.psi_ddot_des*offsets.s-ref.psi_dot_des*s_dot)
    return ErrorRates(z2_dot, z4_dot)
