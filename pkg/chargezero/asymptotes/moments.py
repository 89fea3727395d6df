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
from fractions import Fraction
from typing import Tuple

from chargezero.errors import InvariantViolation
from chargezero.field.system import ChargeSystem
from chargezero.utils import format_rational


@dataclass(frozen=True)
class MomentVector:
    """ Signed power sums ``mu_u = (-1)**u * sum_j a_j * x_j**u`` for ``u = 0 .. M``. """
    values: Tuple[Fraction, ...]

    def __getitem__(self, u: int) -> Fraction:
        return self.values[u]

    def __len__(self) -> int:
        return len(self.values)

    def as_strings(self):
        return [format_rational(value) for value in self.values]


@dataclass(frozen=True)
class CriticalIndex:
    """ Smallest ``L`` with ``mu_L != 0`` together with that moment. """
    L: int
    mu_L: Fraction


def moments(system: ChargeSystem) -> MomentVector:
    values = list()
    for u in range(system.M + 1):
        total = sum((c.amplitude * c.position ** u for c in system), Fraction(0))
        values.append(total if u % 2 == 0 else -total)
    return MomentVector(tuple(values))


def critical_index(system: ChargeSystem) -> CriticalIndex:
    """
    First non-vanishing moment. Since ``mu_0 .. mu_{M-1}`` form an invertible Vandermonde image of
    the (nonzero) amplitude vector, ``L <= M - 1`` for every valid system.
    """
    vector = moments(system)

    for u, value in enumerate(vector.values[:system.M]):
        if value != 0:
            return CriticalIndex(L=u, mu_L=value)

    raise InvariantViolation(f"all moments of {system} vanish below order {system.M}")
