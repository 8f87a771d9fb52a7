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


from dataclasses import asdict, dataclass
from math import isfinite, pi
from typing import NamedTuple

from lateraltools.control.error_model import NominalCoefficients
from lateraltools.control.gains import gain_profile
from lateraltools.control.observer import ObserverState
from lateraltools.utils import clamp


@dataclass(frozen=True, slots=True)
class ControllerParams:
    """Gains of the cascaded controller. delta_max is the steering
    saturation and steering_ratio converts it to the road wheel limit that
    is actually applied."""
    eta1: float
    eta2: float
    tau: float
    k3: float
    k4: float
    delta_max: float = 2.7*pi
    steering_ratio: float = 1.0

    def __post_init__(self):
        for name in ("eta1", "eta2", "k3", "k4", "delta_max", "steering_ratio"):
            value = getattr(self, name)
            if not (isfinite(value) and value > 0):
                raise ValueError(f"Controller parameter {name} must be positive and finite, got {value}")
        if not 0 < self.tau <= 1:
            raise ValueError(f"Controller parameter tau must be in (0, 1], got {self.tau}")

    @classmethod
    def from_profile(cls, name: str = "paper", **overrides) -> "ControllerParams":
        """Controller parameters from a named gain profile

        Parameters
        ==========

        name : str
            Gain profile name

        overrides : float
            Parameters replacing the profile values"""
        return cls(**(gain_profile(name, "controller") | overrides))

    @property
    def delta_limit(self) -> float:
        return self.delta_max/self.steering_ratio

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


class VirtualControls(NamedTuple):
    nu_h: float
    z3_des: float


class AuxiliaryControls(NamedTuple):
    u_d: float
    u: float


class SteeringCommand(NamedTuple):
    delta_raw: float
    delta: float
    saturated: bool


class ControlTrace(NamedTuple):
    nu_h: float
    z3_des: float
    u_d: float
    u: float
    delta_raw: float
    delta: float
    saturated: bool


def virtual_controls(estimates: ObserverState, coeffs: NominalCoefficients, cp: ControllerParams
        ) -> VirtualControls:
    """Virtual lateral control nu_h and the heading reference z3_des that
    makes the lateral subsystem follow it once the yaw loop has converged

    Parameters
    ==========

    estimates : ObserverState
        Estimated errors and disturbances

    coeffs : NominalCoefficients
        Nominal error dynamics coefficients

    cp : ControllerParams
        Controller parameters"""
    if coeffs.alpha3 == 0:
        raise ValueError("alpha_3 is zero, the heading reference is undefined")
    nu_h = -cp.tau**2*cp.eta1*estimates.z1_hat-cp.tau*cp.eta2*estimates.z2_hat
    z3_des = (
        -coeffs.alpha2*estimates.z2_hat
        -coeffs.alpha4*estimates.z4_hat
        +coeffs.ratio*estimates.D_l_hat
        -estimates.D_psi_hat
        -coeffs.ratio*nu_h)/coeffs.alpha3
    return VirtualControls(nu_h, z3_des)

def auxiliary_controls(
        estimates: ObserverState,
        z3_des: float,
        coeffs: NominalCoefficients,
        cp: ControllerParams) -> AuxiliaryControls:
    """Yaw tracking control u_d and the lateral auxiliary input u that
    cancels the yaw coupling

    Parameters
    ==========

    estimates : ObserverState
        Estimated errors and disturbances

    z3_des : float
        Heading reference in rad

    coeffs : NominalCoefficients
        Nominal error dynamics coefficients

    cp : ControllerParams
        Controller parameters"""
    u_d = -cp.k3*(estimates.z3_hat-z3_des)-cp.k4*estimates.z4_hat
    u = coeffs.b21/coeffs.b41*(
        -coeffs.alpha2*estimates.z2_hat
        -coeffs.alpha3*estimates.z3_hat
        -coeffs.alpha4*estimates.z4_hat
        +coeffs.ratio*estimates.D_l_hat
        -estimates.D_psi_hat
        +u_d)
    return AuxiliaryControls(u_d, u)

def steering_command(
        estimates: ObserverState,
        u: float,
        coeffs: NominalCoefficients,
        cp: ControllerParams) -> SteeringCommand:
    """Steering angle that cancels the nominal lateral error dynamics and the
    estimated lateral disturbance, clamped to the road wheel limit

    Parameters
    ==========

    estimates : ObserverState
        Estimated errors and disturbances

    u : float
        Lateral auxiliary input

    coeffs : NominalCoefficients
        Nominal error dynamics coefficients

    cp : ControllerParams
        Controller parameters"""
    if coeffs.b21 == 0:
        raise ValueError("b_21 is zero, the steering angle is undefined")
    delta_raw = (
        -coeffs.a22*estimates.z2_hat
        -coeffs.a23*estimates.z3_hat
        -coeffs.a24*estimates.z4_hat
        -estimates.D_l_hat
        +u)/coeffs.b21
    limit = cp.delta_limit
    return SteeringCommand(delta_raw, clamp(delta_raw, limit), abs(delta_raw) > limit)

def compute_control(estimates: ObserverState, coeffs: NominalCoefficients, cp: ControllerParams
        ) -> ControlTrace:
    """Full control law from one set of estimates

    Parameters
    ==========

    estimates : ObserverState
        Estimated errors and disturbances, or the true values for exact
        feedback

    coeffs : NominalCoefficients
        Nominal error dynamics coefficients

    cp : ControllerParams
        Controller parameters"""
    nu_h, z3_des = virtual_controls(estimates, coeffs, cp)
    u_d, u = auxiliary_controls(estimates, z3_des, coeffs, cp)
    command = steering_command(estimates, u, coeffs, cp)
    return ControlTrace(nu_h, z3_des, u_d, u, *command)
