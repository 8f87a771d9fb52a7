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
import importlib.resources
import json
from math import isfinite
from typing import NamedTuple

from lateraltools.control.error_model import NominalCoefficients
from lateraltools.control.gains import gain_profile
from lateraltools.utils import fill_template, Result


resources = importlib.resources.files("lateraltools.control.resources")
with open(resources.joinpath("observer_templates_processed.json")) as file:
    templates = json.load(file)


class ObserverState(NamedTuple):
    """Estimates of the lateral observer (z1, z2, D_l) and the yaw observer
    (z3, z4, D_psi)"""
    z1_hat: float = 0.0
    z2_hat: float = 0.0
    D_l_hat: float = 0.0
    z3_hat: float = 0.0
    z4_hat: float = 0.0
    D_psi_hat: float = 0.0


def hurwitz_check(c1: float, c2: float, c3: float, symbol: str = "c", **string_options
        ) -> Result[bool]:
    """Routh-Hurwitz test of s^3 + c1*s^2 + c2*s + c3

    Parameters
    ==========

    c1, c2, c3 : float
        Polynomial coefficients

    symbol : str
        Symbol to use for the coefficients"""
    product = c1*c2
    hurwitz = c1 > 0 and c2 > 0 and c3 > 0 and product > c3
    relation = ">" if product > c3 else "\\leq"
    verdict = "Hurwitz" if hurwitz else "not Hurwitz"
    return fill_template(hurwitz, templates["hurwitz_check"], locals(), **string_options)


@dataclass(frozen=True, slots=True)
class ObserverGains:
    h1: float
    h2: float
    h3: float
    g1: float
    g2: float
    g3: float
    epsilon: float

    def __post_init__(self):
        if not hurwitz_check(self.h1, self.h2, self.h3, return_string=False).value:
            raise ValueError(
                f"Lateral observer gains ({self.h1}, {self.h2}, {self.h3}) are not Hurwitz")
        if not hurwitz_check(self.g1, self.g2, self.g3, return_string=False).value:
            raise ValueError(
                f"Yaw observer gains ({self.g1}, {self.g2}, {self.g3}) are not Hurwitz")
        if not (isfinite(self.epsilon) and 0 < self.epsilon <= 1):
            raise ValueError(f"Observer epsilon must be in (0, 1], got {self.epsilon}")

    @classmethod
    def from_profile(cls, name: str = "paper", **overrides) -> "ObserverGains":
        """Observer gains from a named gain profile

        Parameters
        ==========

        name : str
            Gain profile name

        overrides : float
            Gains replacing the profile values"""
        return cls(**(gain_profile(name, "observer") | overrides))

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


def ehgo_derivative(
        obs: ObserverState,
        measured: tuple[float, float],
        delta: float,
        coeffs: NominalCoefficients,
        gains: ObserverGains) -> ObserverState:
    """Time derivative of both extended high-gain observers. Each observer
    copies the nominal error model and is corrected by the innovation of its
    measured channel scaled by 1/epsilon, 1/epsilon^2 and 1/epsilon^3.

    Parameters
    ==========

    obs : ObserverState
        Current estimates

    measured : tuple[float, float]
        Measured z1 and z3

    delta : float
        Applied steering angle in rad

    coeffs : NominalCoefficients
        Nominal error dynamics coefficients

    gains : ObserverGains
        Observer gains"""
    z1, z3 = measured
    epsilon = gains.epsilon
    e_1 = z1-obs.z1_hat
    e_3 = z3-obs.z3_hat
    return ObserverState(
        z1_hat=obs.z2_hat+gains.h1/epsilon*e_1,
        z2_hat=(coeffs.a22*obs.z2_hat+coeffs.a23*obs.z3_hat+coeffs.a24*obs.z4_hat
            +coeffs.b21*delta+obs.D_l_hat+gains.h2/epsilon**2*e_1),
        D_l_hat=gains.h3/epsilon**3*e_1,
        z3_hat=obs.z4_hat+gains.g1/epsilon*e_3,
        z4_hat=(coeffs.a42*obs.z2_hat+coeffs.a43*obs.z3_hat+coeffs.a44*obs.z4_hat
            +coeffs.b41*delta+obs.D_psi_hat+gains.g2/epsilon**2*e_3),
        D_psi_hat=gains.g3/epsilon**3*e_3)
