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


from lateraltools.unit import to_base, unit
from lateraltools.utils import check_ratio, clamp, convert_to_unit, linterp, wrap_angle


__all__ = (
    check_ratio, clamp, convert_to_unit, linterp, to_base,
    unit, wrap_angle
)
