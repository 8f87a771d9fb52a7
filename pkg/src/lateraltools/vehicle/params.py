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


from dataclasses import asdict, dataclass, field
from math import isfinite, pi
from typing import NamedTuple

from lateraltools.unit import Numeric, to_base


V_MIN = 0.5  # m/s, slip angles divide by v_x
STANDARD_GRAVITY = 9.81

_field_kinds = {
    "m": "mass",
    "I_z": "moment_of_inertia",
    "l_f": "length",
    "l_r": "length",
    "C_f": "stiffness",
    "C_r": "stiffness",
    "Ct_f": "stiffness",
    "Ct_r": "stiffness",
    "C_x": "force",
    "mu_r": "dimensionless",
    "f_z": "force",
    "g": "acceleration",
}


class SlipAngleError(ValueError):
    """Raised when a tire slip angle leaves the region where the tire model
    is valid"""


@dataclass(frozen=True, slots=True)
class VehicleParams:
    """Bicycle model parameters. C_f and C_r are the nominal per-tire
    cornering stiffnesses used by the linear force model, Ct_f and Ct_r are
    the axle stiffnesses used by the Dugoff model."""
    m: float = 1800.0
    I_z: float = 3270.0
    l_f: float = 1.2
    l_r: float = 1.65
    C_f: float = 60000.0
    C_r: float = 60000.0
    Ct_f: float = 120000.0
    Ct_r: float = 120000.0
    C_x: float = 100000.0
    mu_r: float = 0.9
    f_z: float = field(default=None)
    g: float = STANDARD_GRAVITY

    def __post_init__(self):
        if self.f_z is None:
            object.__setattr__(self, "f_z", self.m*self.g/4)
        for name in _field_kinds:
            value = getattr(self, name)
            if not (isfinite(value) and value > 0):
                raise ValueError(f"Vehicle parameter {name} must be positive and finite, got {value}")
        if self.mu_r > 1.5:
            raise ValueError(f"Friction coefficient mu_r must be in (0, 1.5], got {self.mu_r}")

    @classmethod
    def from_dict(cls, data: dict[str, Numeric | None]) -> "VehicleParams":
        """Create VehicleParams from a mapping of field names to numbers or
        quantities. Missing fields take their default values.

        Parameters
        ==========

        data : dict[str, Numeric | None]
            Parameter values keyed by field name"""
        unknown = set(data) - set(_field_kinds)
        if unknown:
            raise ValueError(f"Unknown vehicle parameters: {", ".join(sorted(unknown))}")
        values = {}
        for name, value in data.items():
            if value is None:
                continue
            values[name] = to_base(value, _field_kinds[name])
        return cls(**values)

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


class RoadConditions(NamedTuple):
    """Road state at the instant a derivative is evaluated"""
    phi: float = 0.0
    beta_x: float = 0.0

    def check(self) -> None:
        if not abs(self.phi) < pi/2:
            raise ValueError(f"Banking angle must satisfy |phi| < pi/2, got {self.phi}")
        if not self.beta_x > -1:
            raise ValueError(f"Longitudinal slip ratio must exceed -1, got {self.beta_x}")


class PlantState(NamedTuple):
    y_dot: float
    psi: float
    psi_dot: float
    v_x: float
    X: float = 0.0
    Y: float = 0.0


class TireOutput(NamedTuple):
    theta_bar_f: float
    theta_bar_r: float
    theta_f: float
    theta_r: float
    f_yf: float
    f_yr: float
    f_bar_yf: float
    f_bar_yr: float
    f_tilde_yf: float
    f_tilde_yr: float
