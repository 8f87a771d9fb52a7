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


from lateraltools.analysis.target import (closed_loop_matrix, closed_loop_poles,
    error_dynamics_matrices, feedback_gain, sampled_closed_loop, TargetDynamics)


__all__ = (
    closed_loop_matrix, closed_loop_poles, error_dynamics_matrices, feedback_gain,
    sampled_closed_loop, TargetDynamics
)
