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



from numpy import isclose
import pytest

from lateraltools.unit import base_units, to_base, unit


def test_plain_numbers():
    assert to_base(3, "length") == 3.0
    assert isinstance(to_base(3, "length"), float)
    assert to_base(0.5, "angle") == 0.5

def test_quantities():
    assert isclose(to_base(10*unit.mph, "velocity"), 4.4704)
    assert isclose(to_base(180*unit.deg, "angle"), 3.14159265359)
    assert isclose(to_base(unit("0.02 / m"), "curvature"), 0.02)
    assert isclose(to_base(200*unit.Hz, "frequency"), 200)
    assert isclose(to_base(1*unit.ms, "time"), 0.001)
    assert isclose(to_base(3270*unit("kg*m**2"), "moment_of_inertia"), 3270)

def test_every_kind_reduces_its_base_unit():
    for kind, base in base_units.items():
        assert isclose(to_base(2.5*unit(base), kind), 2.5)

def test_wrong_dimension():
    with pytest.raises(ValueError, match=r"cannot be expressed in m/s \(velocity\)"):
        to_base(10*unit.kg, "velocity")

def test_not_a_number():
    with pytest.raises(ValueError, match="Expected a number or quantity for length"):
        to_base("ten", "length")
    with pytest.raises(ValueError):
        to_base(True, "length")
