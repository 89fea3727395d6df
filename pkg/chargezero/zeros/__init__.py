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
class ZeroSearchConfig:
    precision: int = 128
    tolerance: str = "1/1000000000000"
    strip: str = "1/1048576"
    min_width: str = "1/1099511627776"
    max_boxes: int = 200000
    resultant_max_charges: int = 4
    box_radius: Optional[str] = None
    containment: bool = True
    progress: bool = False


from chargezero.zeros.search import CertifiedZero, OffAxisSearch, krawczyk, merge_duplicates, offaxis_zeros
from chargezero.zeros.axis import AxisInterval, axis_intervals, axis_zeros
from chargezero.zeros.resultant import ResultantCandidates, exhaustive_resultant_candidates
from chargezero.zeros.diagnostics import (
    OrthogonalityRecord,
    count_bound,
    count_bound_check,
    orthogonality_diagnostics,
    unboundedness_obstruction,
)
from chargezero.zeros.finder import ZeroSetReport, find_zeros
