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


from lateraltools.vehicle.dynamics import plant_derivative, PlantDerivative
from lateraltools.vehicle.params import (PlantState, RoadConditions, SlipAngleError,
    TireOutput, V_MIN, VehicleParams)
from lateraltools.vehicle.tires import (dugoff_gamma, dugoff_shaping, slip_angles,
    SlipAngles, tire_lateral_forces)


__all__ = (
    dugoff_gamma, dugoff_shaping, plant_derivative, PlantDerivative, PlantState,
    RoadConditions, slip_angles, SlipAngleError, SlipAngles, tire_lateral_forces,
    TireOutput, V_MIN, VehicleParams
)
