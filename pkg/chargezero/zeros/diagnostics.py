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
from typing import List, Optional, Sequence

from chargezero.asymptotes.moments import moments
from chargezero.errors import DegenerateJacobianError, PreconditionError
from chargezero.field.evaluation import (
    EvalPoint,
    eval_balance,
    eval_kernel_partials,
    implicit_tangent_slopes,
)
from chargezero.field.system import ChargeSystem
from chargezero.utils import default_precision, logger
from chargezero.zeros.search import AXIS, CertifiedZero

ORTHOGONAL = 'orthogonal'
ORTHOGONAL_AXIS = 'orthogonal (axis/vertical)'
NOT_ORTHOGONAL = 'not-orthogonal'
DEGENERATE = 'degenerate-jacobian'
UNVERIFIED = 'unverified'

PRODUCT_TOLERANCE = 1e-6


def count_bound(M: int) -> int:
    """ Upper bound ``9 M**2 4**M`` on the number of zeros of ``M`` charges on a line. """
    return 9 * M * M * 4 ** M


def count_bound_check(report) -> bool:
    return len(report.zeros) <= count_bound(report.M)


def unboundedness_obstruction(system: ChargeSystem) -> Optional[str]:
    """
    Zeros escaping to infinity force ``mu_0 = mu_1 = 0``. Names the first of the two moments that does
    not vanish, or returns ``None`` when both do.
    """
    vector = moments(system)
    for u in (0, 1):
        if vector[u] != 0:
            return f"mu_{u} = {vector[u]} is nonzero, so zeros cannot occur arbitrarily far from the charges"
    return None


@dataclass
class OrthogonalityRecord:
    zero: CertifiedZero
    status: str
    slope_X: Optional[float] = None
    slope_Y: Optional[float] = None
    product: Optional[float] = None
    hypothesis: Optional[str] = None
    inverse_cube_sum: Optional[float] = None
    weighted_position_sum: Optional[float] = None
    trace: Optional[float] = None
    message: str = ''

    def _slope(self, value: Optional[float]):
        if value is None and self.status not in (DEGENERATE, UNVERIFIED):
            return 'vertical'
        return value

    def as_dict(self) -> dict:
        return {
            'box': self.zero.box.as_strings(),
            'kind': self.zero.kind,
            'status': self.status,
            'slope_X': self._slope(self.slope_X),
            'slope_Y': self._slope(self.slope_Y),
            'product': self.product,
            'hypothesis': self.hypothesis,
            'inverse_cube_sum': self.inverse_cube_sum,
            'weighted_position_sum': self.weighted_position_sum,
            'trace': self.trace,
            'message': self.message,
        }


def _diagnose(system: ChargeSystem, zero: CertifiedZero, precision: int) -> OrthogonalityRecord:
    if not zero.unique:
        message = f"box {zero.box.as_strings()} may hold more than one zero"
        logger.warning(message)
        return OrthogonalityRecord(zero, DEGENERATE, message=message)

    x, y = zero.center
    point = EvalPoint(x, y, precision)

    try:
        slopes = implicit_tangent_slopes(system, point)
    except DegenerateJacobianError as error:
        logger.warning(f"degenerate Jacobian at {zero.approximate()}: {error}")
        return OrthogonalityRecord(zero, DEGENERATE, message=str(error))
    except PreconditionError as error:
        logger.warning(f"cannot diagnose {zero.approximate()}: {error}")
        return OrthogonalityRecord(zero, UNVERIFIED, message=str(error))

    balance = eval_balance(system, point)
    partials = eval_kernel_partials(system, point)

    record = OrthogonalityRecord(
        zero=zero,
        status=NOT_ORTHOGONAL,
        slope_X=None if slopes.slope_X is None else float(slopes.slope_X),
        slope_Y=None if slopes.slope_Y is None else float(slopes.slope_Y),
        hypothesis=slopes.hypothesis,
        inverse_cube_sum=float(balance.inverse_cube_sum),
        weighted_position_sum=float(balance.weighted_position_sum),
        trace=float(partials.trace),
    )

    if slopes.product is not None:
        record.product = float(slopes.product)
        if abs(record.product + 1) <= PRODUCT_TOLERANCE:
            record.status = ORTHOGONAL
    else:
        other = record.slope_Y if record.slope_X is None else record.slope_X
        if other is not None and abs(other) <= PRODUCT_TOLERANCE:
            record.status = ORTHOGONAL_AXIS

    if zero.kind != AXIS and record.status == NOT_ORTHOGONAL:
        logger.warning(f"zero near {zero.approximate()} has slope product {record.product}")

    return record


def orthogonality_diagnostics(
        system: ChargeSystem,
        zeros: Sequence[CertifiedZero],
        precision: Optional[int] = None,
) -> List[OrthogonalityRecord]:
    """
    Tangent slopes of ``{X = 0}`` and ``{Y = 0}`` at each zero and their product, which is ``-1`` at every
    non-degenerate zero off the axis. Also reports the two balance sums, which vanish off the axis, and the
    Jacobian trace, which equals minus the first of them.
    """
    precision = precision or default_precision()
    return [_diagnose(system, zero, precision) for zero in zeros]
