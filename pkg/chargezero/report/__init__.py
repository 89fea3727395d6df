# Copyright (c) 2021, The ChargeZero Authors. All rights reserved.
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

from dataclasses import dataclass
from typing import Optional


@dataclass
class ContourConfig:
    window_radius: str = "100"
    grid_n: int = 512
    tolerance: Optional[float] = None
    plot: bool = False
    output_prefix: str = "zeroset"


@dataclass
class RunSettings:
    config_path: Optional[str] = None
    tolerance: Optional[str] = None
    precision: Optional[int] = None
    lmax: Optional[int] = None
    box_radius: Optional[str] = None


from chargezero.report.config import RunConfig, apply_overrides, dump_config, load_config, parse_config
from chargezero.report.pipeline import AnalysisReport, run_pipeline
from chargezero.report.contour import CurveSample, plot_level_sets, sample_level_sets, write_level_sets
