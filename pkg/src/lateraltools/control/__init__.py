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


from lateraltools.control.controller import (auxiliary_controls, AuxiliaryControls,
    compute_control, ControllerParams, ControlTrace, steering_command, SteeringCommand,
    virtual_controls, VirtualControls)
from lateraltools.control.error_model import (CoefficientDeltas, disturbance_residual,
    Disturbances, nominal_coefficients, NominalCoefficients, UncertaintySpec)
from lateraltools.control.gains import gain_profile, gain_profiles
from lateraltools.control.observer import (ehgo_derivative, hurwitz_check, ObserverGains,
    ObserverState)


__all__ = (
    auxiliary_controls, AuxiliaryControls, CoefficientDeltas, compute_control,
    ControllerParams, ControlTrace, disturbance_residual, Disturbances, ehgo_derivative,
    gain_profile, gain_profiles, hurwitz_check, nominal_coefficients, NominalCoefficients,
    ObserverGains, ObserverState, steering_command, SteeringCommand, UncertaintySpec,
    virtual_controls, VirtualControls
)
