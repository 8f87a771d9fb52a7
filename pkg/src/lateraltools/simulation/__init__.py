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


from lateraltools.simulation.engine import ClosedLoop, LOG_COLUMNS, run_scenario, SimLog
from lateraltools.simulation.integrators import integrate_step
from lateraltools.simulation.metrics import (convergence_time, decay_rate, metrics, Metrics,
    rms, saturation_episodes)
from lateraltools.simulation.scenario import (Check, default_step, fit_step,
    InitialConditions, NoiseConfig, Scenario)


__all__ = (
    Check, ClosedLoop, convergence_time, decay_rate, default_step, fit_step,
    InitialConditions, integrate_step, LOG_COLUMNS, metrics, Metrics, NoiseConfig, rms,
    run_scenario, saturation_episodes, Scenario, SimLog
)
