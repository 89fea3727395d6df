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
from typing import List, Optional, Tuple

from chargezero.exact.polynomial import UniPoly
from chargezero.exact.sturm import cauchy_bound, sturm_isolate
from chargezero.field.rectangle import Rectangle
from chargezero.field.system import ChargeSystem
from chargezero.utils import default_precision, logger
from chargezero.zeros.search import AXIS, DEFAULT_TOLERANCE, CertifiedZero


@dataclass(frozen=True)
class AxisInterval:
    """
    Open interval of the axis between consecutive charges, ``lo = None`` and ``hi = None`` standing for
    minus and plus infinity. ``signs[k]`` is the sign of ``x - x_k`` on the interval.
    """
    index: int
    lo: Optional[Fraction]
    hi: Optional[Fraction]
    signs: Tuple[int, ...]

    def contains(self, x: Fraction) -> bool:
        return (self.lo is None or self.lo < x) and (self.hi is None or x < self.hi)


def axis_intervals(system: ChargeSystem) -> List[AxisInterval]:
    positions = system.positions
    bounds = [None] + positions + [None]
    intervals = list()

    for j in range(system.M + 1):
        signs = tuple(1 if k < j else -1 for k in range(system.M))
        intervals.append(AxisInterval(j, bounds[j], bounds[j + 1], signs))

    return intervals


def cleared_numerator(system: ChargeSystem, interval: AxisInterval) -> UniPoly:
    """
    On the axis ``X(x, 0) = sum_j a_j s_j / (x - x_j)**2``; multiplying by ``prod_k (x - x_k)**2`` gives
    ``sum_j a_j s_j prod_{k != j} (x - x_k)**2``, positive multiple and same roots on the open interval.
    """
    squares = [UniPoly([-c.position, 1]) ** 2 for c in system]
    total = UniPoly()

    for j, (sign, charge) in enumerate(zip(interval.signs, system)):
        term = UniPoly.constant(charge.amplitude * sign)
        for k, square in enumerate(squares):
            if k != j:
                term = term * square
        total = total + term

    return total


def axis_zeros(
        system: ChargeSystem,
        tolerance: Fraction = DEFAULT_TOLERANCE,
        precision: Optional[int] = None,
) -> List[CertifiedZero]:
    """
    Every zero of the field on the axis, isolated exactly by Sturm sequences on each interval between
    charges. Irrational zeros are refined below both ``tolerance`` and ``2 ** -precision`` so that the
    field is negligible at the box center; rational zeros come out as degenerate boxes.
    """
    width = min(Fraction(tolerance), Fraction(1, 2 ** (precision or default_precision())))
    zeros = list()

    for interval in axis_intervals(system):
        numerator = cleared_numerator(system, interval).squarefree_part()
        if numerator.degree < 1:
            continue

        bound = cauchy_bound(numerator)
        hi = interval.hi if interval.hi is not None else max(bound, interval.lo + 1)
        lo = interval.lo if interval.lo is not None else min(-bound, hi - 1)

        for root in sturm_isolate(numerator, lo, hi):
            root = root.refine(width)
            zeros.append(CertifiedZero(Rectangle(root.lo, root.hi, 0, 0), AXIS, method='sturm'))

        logger.debug(f"axis interval {interval.index}: {numerator.degree} candidate degree")

    logger.info(f"{len(zeros)} zeros on the axis")
    return zeros
