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


from typing import Annotated, Union

from numpy import ndarray
import pint


unit = pint.UnitRegistry()
unit.formatter.default_format = "~"


type Numeric = Union[int, float, Annotated[pint.Quantity, float]]
type NumericArray = Union[ndarray, Annotated[pint.Quantity, ndarray]]


# SI units each scenario quantity is reduced to
base_units = {
    "acceleration": "m/s**2",
    "angle": "rad",
    "angular_acceleration": "rad/s**2",
    "angular_velocity": "rad/s",
    "curvature": "1/m",
    "dimensionless": "dimensionless",
    "force": "N",
    "frequency": "Hz",
    "length": "m",
    "mass": "kg",
    "moment_of_inertia": "kg*m**2",
    "stiffness": "N/rad",
    "time": "s",
    "velocity": "m/s",
}

def to_base(value: Numeric, kind: str) -> float:
    """Reduce a value to a float in the SI unit used for the given kind of
    quantity. Plain numbers are assumed to already be in that unit.

    Parameters
    ==========

    value : Numeric
        Number or Quantity to reduce

    kind : str
        Key of base_units naming the kind of quantity"""
    if isinstance(value, pint.Quantity):
        try:
            return float(value.to(base_units[kind]).magnitude)
        except pint.DimensionalityError:
            raise ValueError(f"{value} cannot be expressed in {base_units[kind]} ({kind})")
    if isinstance(value, bool) or not isinstance(value, int | float):
        raise ValueError(f"Expected a number or quantity for {kind}, got {value!r}")
    return float(value)
