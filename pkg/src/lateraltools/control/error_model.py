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


from dataclasses import asdict, dataclass, replace
import importlib.resources
from itertools import product
import json
from math import isfinite
from typing import NamedTuple

from lateraltools.path import ErrorRates, ErrorState
from lateraltools.utils import fill_template, Result
from lateraltools.vehicle import V_MIN, VehicleParams


resources = importlib.resources.files("lateraltools.control.resources")
with open(resources.joinpath("error_model_templates_processed.json")) as file:
    templates = json.load(file)


class NominalCoefficients(NamedTuple):
    """Coefficients of the nominal error dynamics at one longitudinal
    velocity. ratio is b41/b21 and alpha_i = a4i - a2i*ratio."""
    v_x: float
    a22: float
    a23: float
    a24: float
    a42: float
    a43: float
    a44: float
    b21: float
    b41: float
    ratio: float
    alpha2: float
    alpha3: float
    alpha4: float
    alpha: float


class CoefficientDeltas(NamedTuple):
    a22: float
    a23: float
    a24: float
    a42: float
    a43: float
    a44: float
    b21: float
    b41: float


class Disturbances(NamedTuple):
    D_l: float
    D_psi: float


def nominal_coefficients(params: VehicleParams, v_x: float, **string_options
        ) -> Result[NominalCoefficients]:
    """Coefficients of the linear error dynamics built from the nominal
    cornering stiffnesses

    Parameters
    ==========

    params : VehicleParams
        Nominal vehicle parameters

    v_x : float
        Longitudinal velocity in m/s"""
    if not v_x >= V_MIN:
        raise ValueError(f"Longitudinal velocity {v_x} m/s is below v_min = {V_MIN} m/s")
    m, I_z, l_f, l_r = params.m, params.I_z, params.l_f, params.l_r
    C_f, C_r = params.C_f, params.C_r
    a22 = -(2*C_f+2*C_r)/(m*v_x)
    a23 = -v_x*a22
    a24 = -(2*C_f*l_f-2*C_r*l_r)/(m*v_x)
    a42 = -(2*l_f*C_f-2*l_r*C_r)/(I_z*v_x)
    a43 = -v_x*a42
    a44 = -(2*C_f*l_f**2+2*C_r*l_r**2)/(I_z*v_x)
    b21 = 2*C_f/m
    b41 = 2*C_f*l_f/I_z
    ratio = b41/b21
    alpha2 = a42-a22*ratio
    alpha3 = a43-a23*ratio
    alpha4 = a44-a24*ratio
    alpha = v_x+a24
    coefficients = NominalCoefficients(
        v_x, a22, a23, a24, a42, a43, a44, b21, b41, ratio, alpha2, alpha3, alpha4, alpha)
    return fill_template(coefficients, templates["nominal_coefficients"], locals(), **string_options)

def disturbance_residual(
        errors: ErrorState,
        rates: ErrorRates,
        delta: float,
        coeffs: NominalCoefficients) -> Disturbances:
    """Lumped lateral and yaw disturbances, defined as whatever part of the
    true error rates the nominal error model does not explain

    Parameters
    ==========

    errors : ErrorState
        True tracking errors

    rates : ErrorRates
        True rates of z2 and z4

    delta : float
        Applied steering angle in rad

    coeffs : NominalCoefficients
        Nominal error dynamics coefficients"""
    z1, z2, z3, z4 = errors
    D_l = rates.z2_dot-(coeffs.a22*z2+coeffs.a23*z3+coeffs.a24*z4+coeffs.b21*delta)
    D_psi = rates.z4_dot-(coeffs.a42*z2+coeffs.a43*z3+coeffs.a44*z4+coeffs.b41*delta)
    return Disturbances(D_l, D_psi)


@dataclass(frozen=True, slots=True)
class UncertaintySpec:
    """Multiplicative factors taking the nominal vehicle to the true plant.
    Front and rear factors scale both the nominal and the Dugoff stiffness of
    that axle. The vertical load scales with the mass."""
    mass: float = 1.0
    inertia: float = 1.0
    front_stiffness: float = 1.0
    rear_stiffness: float = 1.0
    friction: float = 1.0

    def __post_init__(self):
        for name, factor in asdict(self).items():
            if not (isfinite(factor) and factor > 0):
                raise ValueError(f"Uncertainty factor {name} must be positive and finite, got {factor}")

    @classmethod
    def corners(cls, band: float) -> list["UncertaintySpec"]:
        """Every combination of mass, front stiffness and rear stiffness at
        1 - band and 1 + band

        Parameters
        ==========

        band : float
            Relative half width of the uncertainty interval"""
        if not 0 <= band < 1:
            raise ValueError(f"Uncertainty band must be in [0, 1), got {band}")
        levels = (1-band, 1+band)
        return [
            cls(mass=mass, front_stiffness=front, rear_stiffness=rear)
            for mass, front, rear in product(levels, levels, levels)
        ]

    @property
    def is_nominal(self) -> bool:
        return all(factor == 1 for factor in asdict(self).values())

    def apply(self, params: VehicleParams) -> VehicleParams:
        """True plant parameters

        Parameters
        ==========

        params : VehicleParams
            Nominal vehicle parameters"""
        return replace(
            params,
            m=params.m*self.mass,
            I_z=params.I_z*self.inertia,
            C_f=params.C_f*self.front_stiffness,
            Ct_f=params.Ct_f*self.front_stiffness,
            C_r=params.C_r*self.rear_stiffness,
            Ct_r=params.Ct_r*self.rear_stiffness,
            mu_r=params.mu_r*self.friction,
            f_z=params.f_z*self.mass)

    def coefficient_deltas(self, params: VehicleParams, v_x: float) -> CoefficientDeltas:
        """Additive differences between the true and the nominal error
        dynamics coefficients

        Parameters
        ==========

        params : VehicleParams
            Nominal vehicle parameters

        v_x : float
            Longitudinal velocity in m/s"""
        nominal = nominal_coefficients(params, v_x, return_string=False).value
        true = nominal_coefficients(self.apply(params), v_x, return_string=False).value
        return CoefficientDeltas(*(
            getattr(true, name)-getattr(nominal, name) for name in CoefficientDeltas._fields))

    def to_dict(self) -> dict[str, float]:
        return asdict(self)
