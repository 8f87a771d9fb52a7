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


import importlib.resources
import json


resources = importlib.resources.files("lateraltools.control.resources")
with open(resources.joinpath("gain_profiles.json")) as file:
    gain_profiles = json.load(file)


def gain_profile(name: str, part: str) -> dict[str, float]:
    """Copy of one part of a named gain profile

    Parameters
    ==========

    name : str
        Profile name, one of the keys of gain_profiles

    part : str
        Either controller or observer"""
    if name not in gain_profiles:
        raise ValueError(f"Unknown gain profile: {name}. Options are: {", ".join(gain_profiles)}")
    return dict(gain_profiles[name][part])
