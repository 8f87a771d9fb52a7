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
from math import pi

from numpy import isclose
import pytest

from lateraltools.unit import unit
from lateraltools import utils


def test_linterp():
    assert utils.linterp(1, 1, 3, 3, 2) == 2

def test_wrap_angle_in_range():
    assert utils.wrap_angle(1.0) == 1.0

def test_wrap_angle_positive():
    assert isclose(utils.wrap_angle(3*pi/2), -pi/2)

def test_wrap_angle_negative():
    assert isclose(utils.wrap_angle(-3*pi/2), pi/2)

def test_wrap_angle_pi():
    assert utils.wrap_angle(-pi) == pi

def test_clamp():
    assert utils.clamp(0.7, 0.5) == 0.5
    assert utils.clamp(-0.7, 0.5) == -0.5
    assert utils.clamp(0.2, 0.5) == 0.2

def test_convert_to_unit_Quantity_string():
    assert utils.convert_to_unit("1 ft") == 1*unit.ft

def test_convert_to_unit_int():
    assert utils.convert_to_unit(1) == 1

def test_convert_to_unit_number_string():
    assert utils.convert_to_unit("1") == 1

def test_convert_to_unit_alpha_string():
    assert utils.convert_to_unit("ft") == "ft"

def test_convert_to_unit_scientific_Quantity_string():
    assert utils.convert_to_unit("-9.5e-05 m") == -9.5e-5*unit.m

def test_convert_to_unit_Quantity_like_string():
    with pytest.warns(UserWarning) as record:
        result = utils.convert_to_unit("1 xyz")
    assert result == "1 xyz"
    assert record[0].message.args[0] == "'1 xyz' was not evaluated as a unit"

def test_fill_template_no_string():
    assert utils.fill_template(1, "{x}", {"x": 1}, return_string=False) == utils.Result("", 1)

def test_fill_template_html_header():
    result = utils.fill_template(1, "{_h_start_}Title{_h_end_}", {}, header_type="html",
        header_level=2)
    assert result.string == "<h2>Title</h2>"

def test_fill_template_bad_header():
    with pytest.raises(ValueError):
        utils.fill_template(1, "", {}, header_type="latex")


class TestCheckRatio:
    def test_passing(self):
        result = utils.check_ratio(1.5, 1, 2)
        assert result.value == 1.5
        assert result.string == """$$
\\begin{aligned}
    R &= \\frac{\\textrm{value}}{\\textrm{reference}} = \\frac{1.5}{1} &= 1.5 \\leq 2
\\end{aligned}
$$"""

    def test_uses_magnitudes(self):
        assert utils.check_ratio(-3, 2, 2).value == 1.5

    def test_quantity(self):
        assert isclose(utils.check_ratio(3*unit.m, 200*unit.cm, 2).value, 1.5)

    def test_failing(self):
        with pytest.raises(ValueError) as error:
            utils.check_ratio(3, 1, 2)
        assert error.value.args[0] == "Ratio (3.0) is greater than 2."

    def test_no_string(self):
        assert utils.check_ratio(1, 1, return_string=False).string == ""


@pytest.mark.parametrize("package, name", [
    ("lateraltools.resources", "utils_templates"),
    ("lateraltools.control.resources", "error_model_templates"),
    ("lateraltools.control.resources", "observer_templates")
])
def test_processed_templates_are_current(tmp_path, package, name):
    resources = importlib.resources.files(package)
    processed = utils.process_templates(resources.joinpath(f"{name}.json"),
        tmp_path/f"{name}_processed.json")
    with open(resources.joinpath(f"{name}_processed.json")) as file:
        assert processed == json.load(file)
