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


from collections.abc import Callable

import numpy as np


type VectorField = Callable[[float, np.ndarray], np.ndarray]


def integrate_step(field: VectorField, t: float, state: np.ndarray, dt: float) -> np.ndarray:
    """One classical fourth order Runge-Kutta step

    Parameters
    ==========

    field : VectorField
        Function of (t, state) returning the state derivative. Inputs held
        over the step belong in its closure.

    t : float
        Time at the start of the step

    state : np.ndarray
        State at the start of the step

    dt : float
        Step size"""
    k_1 = field(t, state)
    k_2 = field(t+dt/2, state+dt/2*k_1)
    k_3 = field(t+dt/2, state+dt/2*k_2)
    k_4 = field(t+dt, state+dt*k_3)
    return state+dt/6*(k_1+2*k_2+2*k_3+k_4)
