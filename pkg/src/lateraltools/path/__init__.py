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


from lateraltools.path.profiles import Constant, Profile, Ramp, Sinusoid
from lateraltools.path.reference import (error_rates, ErrorRates, ErrorState, pose_errors,
    PoseErrors, reference_state, ReferencePath, ReferenceState, tracking_errors)


__all__ = (
    Constant, error_rates, ErrorRates, ErrorState, pose_errors, PoseErrors, Profile, Ramp,
    reference_state, ReferencePath, ReferenceState, Sinusoid, tracking_errors
)
