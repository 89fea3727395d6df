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

from chargezero.field.system import Charge, ChargeSystem
from chargezero.field.rectangle import Rectangle
from chargezero.field.evaluation import (
    EvalPoint,
    FieldValue,
    KernelPartials,
    TangentSlopes,
    eval_balance,
    eval_field,
    eval_kernel,
    eval_kernel_partials,
    implicit_tangent_slopes,
)
