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


@dataclass
class VerifyConfig:
    lmax: int = 12
    num_workers: int = 1
    output_path: str = "verification.csv"


from chargezero.asymptotes.moments import CriticalIndex, MomentVector, critical_index, moments
from chargezero.asymptotes.polynomials import AsymptotePolynomials, build_asymptote_polys
from chargezero.asymptotes.directions import AlgebraicDirection, DirectionReport, asymptote_directions
from chargezero.asymptotes.verification import (
    VerificationReport,
    run_all_suites,
    verify_cd_derivative_relation,
    verify_interlacing,
    verify_inversion,
    verify_no_common_cd_root,
    verify_recursion_identity,
    verify_type_one_derivatives,
)
