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


import numpy as np
from scipy.linalg import expm
from sympy import lambdify, Matrix, Rational, symbols

from lateraltools.control import (compute_control, ControllerParams, NominalCoefficients,
    ObserverState)


class TargetDynamics:
    """Closed-form response of the lateral loop once the heading reference is
    tracked exactly: z1' = z2, z2' = -tau^2*eta1*z1 - tau*eta2*z2. Gains are
    converted to exact rationals so repeated poles stay repeated."""
    def __init__(self, tau: float, eta1: float, eta2: float):
        """Solve the target dynamics symbolically

        Parameters
        ==========

        tau : float
            Time scale parameter

        eta1, eta2 : float
            Lateral gains"""
        tau, eta1, eta2 = (Rational(str(float(value))) for value in (tau, eta1, eta2))
        self.t, self.z1_0, self.z2_0 = symbols("t z1_0 z2_0")
        self.matrix = Matrix([[0, 1], [-tau**2*eta1, -tau*eta2]])
        self.transition = (self.matrix*self.t).exp()
        self.solution = self.transition*Matrix([self.z1_0, self.z2_0])
        self._functions = [
            lambdify((self.t, self.z1_0, self.z2_0), expression, "numpy")
            for expression in self.solution
        ]

    @classmethod
    def from_params(cls, cp: ControllerParams) -> "TargetDynamics":
        return cls(cp.tau, cp.eta1, cp.eta2)

    def response(self, t: float | np.ndarray, z1_0: float, z2_0: float
            ) -> tuple[np.ndarray, np.ndarray]:
        """z1 and z2 at times t from the initial values z1_0 and z2_0

        Parameters
        ==========

        t : float | np.ndarray
            Times in s

        z1_0, z2_0 : float
            Initial values"""
        t = np.asarray(t, dtype=float)
        z1, z2 = (
            np.broadcast_to(np.real(function(t, z1_0, z2_0)), t.shape).astype(float)
            for function in self._functions)
        return z1, z2


def closed_loop_matrix(coeffs: NominalCoefficients, cp: ControllerParams) -> np.ndarray:
    """State matrix of the nominal error dynamics in (z1, z2, z3, z4) with the
    unsaturated control law fed the true errors and zero disturbances

    Parameters
    ==========

    coeffs : NominalCoefficients
        Nominal error dynamics coefficients

    cp : ControllerParams
        Controller parameters"""
    A, B = error_dynamics_matrices(coeffs)
    return A+B@feedback_gain(coeffs, cp)

def error_dynamics_matrices(coeffs: NominalCoefficients) -> tuple[np.ndarray, np.ndarray]:
    """State and input matrices of the nominal error dynamics

    Parameters
    ==========

    coeffs : NominalCoefficients
        Nominal error dynamics coefficients"""
    A = np.array([
        [0, 1, 0, 0],
        [0, coeffs.a22, coeffs.a23, coeffs.a24],
        [0, 0, 0, 1],
        [0, coeffs.a42, coeffs.a43, coeffs.a44]
    ], dtype=float)
    B = np.array([[0], [coeffs.b21], [0], [coeffs.b41]], dtype=float)
    return A, B

def feedback_gain(coeffs: NominalCoefficients, cp: ControllerParams) -> np.ndarray:
    """Row vector K with delta_raw = K @ z, found by evaluating the control law
    on unit error vectors

    Parameters
    ==========

    coeffs : NominalCoefficients
        Nominal error dynamics coefficients

    cp : ControllerParams
        Controller parameters"""
    gain = np.zeros((1, 4))
    for column, unit_error in enumerate(np.eye(4)):
        z1, z2, z3, z4 = unit_error
        estimates = ObserverState(z1_hat=z1, z2_hat=z2, z3_hat=z3, z4_hat=z4)
        gain[0, column] = compute_control(estimates, coeffs, cp).delta_raw
    return gain

def sampled_closed_loop(coeffs: NominalCoefficients, cp: ControllerParams, dt: float
        ) -> np.ndarray:
    """Transition matrix over one step of the error dynamics with the
    steering held from the start of the step

    Parameters
    ==========

    coeffs : NominalCoefficients
        Nominal error dynamics coefficients

    cp : ControllerParams
        Controller parameters

    dt : float
        Control period in s"""
    A, B = error_dynamics_matrices(coeffs)
    augmented = np.zeros((5, 5))
    augmented[:4, :4] = A
    augmented[:4, 4:] = B
    exponential = expm(augmented*dt)
    transition, input_gain = exponential[:4, :4], exponential[:4, 4:]
    return transition+input_gain@feedback_gain(coeffs, cp)

def closed_loop_poles(coeffs: NominalCoefficients, cp: ControllerParams) -> np.ndarray:
    """Eigenvalues of closed_loop_matrix

    Parameters
    ==========

    coeffs : NominalCoefficients
        Nominal error dynamics coefficients

    cp : ControllerParams
        Controller parameters"""
    return np.linalg.eigvals(closed_loop_matrix(coeffs, cp))
