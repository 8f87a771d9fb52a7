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


from lateraltools.io.artifacts import (CheckResult, evaluate_checks, metrics_record, plot_run,
    RunRecord, summary_markdown, write_run)
from lateraltools.io.report import (check_metric_ratio, compare_runs, read_run, write_report)
from lateraltools.io.scenario_file import (apply_overrides, load_scenario, preset_names,
    read_scenario_file, scenario_from_dict, scenario_to_dict, write_scenario)


__all__ = (
    apply_overrides, check_metric_ratio, CheckResult, compare_runs, evaluate_checks,
    load_scenario, metrics_record, plot_run, preset_names, read_run, read_scenario_file,
    RunRecord, scenario_from_dict, scenario_to_dict, summary_markdown, write_report,
    write_run, write_scenario
)
