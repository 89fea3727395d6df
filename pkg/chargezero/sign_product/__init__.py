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
class SignProductConfig:
    max_charges: int = 4
    mode: str = "joint"
    component: str = "X"
    output_path: str = "polynomial.txt"


from chargezero.sign_product.radical_ring import RadicalElement, RadicalRing
from chargezero.sign_product.polynomialization import (
    PolynomializationResult,
    SignPattern,
    build_component_polynomial,
    build_joint_polynomial,
    containment_check,
    export_polynomial,
    parse_polynomial,
)
