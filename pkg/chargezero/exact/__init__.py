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

from chargezero.exact.polynomial import (
    BiPoly,
    UniPoly,
    bi_evaluate,
    uni_arith,
    uni_differentiate,
    uni_gcd,
)
from chargezero.exact.sturm import (
    IsolatingInterval,
    SturmChain,
    cauchy_bound,
    count_real_roots,
    sturm_isolate,
)
