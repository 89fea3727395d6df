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

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from chargezero.errors import PreconditionError
from chargezero.field.evaluation import (
    EvalPoint,
    KernelPartials,
    enclose_field,
    enclose_jacobian,
    eval_field,
    eval_kernel_partials,
)
from chargezero.field.interval import ball, bounds, magnitude, may_vanish, to_arb, working_precision
from chargezero.field.rectangle import Rectangle
from chargezero.field.system import ChargeSystem
from chargezero.utils import default_precision, logger

AXIS = 'axis'
OFF_AXIS = 'off-axis'

UNIQUE = 'unique'
EMPTY = 'empty'
UNKNOWN = 'unknown'

DEFAULT_TOLERANCE = Fraction(1, 10 ** 12)
AXIS_STRIP = Fraction(1, 2 ** 20)
MIN_WIDTH = Fraction(1, 2 ** 40)
MAX_BOXES = 200000
INFLATION = Fraction(1, 8)
MAX_CONTRACTIONS = 64


@dataclass(frozen=True)
class CertifiedZero:
    """
    Rational box proved to hold a zero of the field, exactly one when ``unique`` is set.

    Args:
        box (Rectangle): enclosing box, degenerate in ``y`` for zeros on the axis
        kind (str): ``axis`` or ``off-axis``
        unique (bool): exactly one zero in ``box``
        method (str): how the box was certified, ``sturm`` or ``krawczyk``
    """
    box: Rectangle
    kind: str
    unique: bool = True
    method: str = 'krawczyk'

    @property
    def center(self) -> Tuple[Fraction, Fraction]:
        return self.box.center

    def approximate(self) -> Tuple[float, float]:
        x, y = self.center
        return float(x), float(y)

    def mirrored(self) -> 'CertifiedZero':
        return CertifiedZero(self.box.mirrored(), self.kind, self.unique, self.method)

    def as_dict(self) -> dict:
        x, y = self.approximate()
        return {
            'kind': self.kind,
            'box': self.box.as_strings(),
            'center': [x, y],
            'unique': self.unique,
            'method': self.method,
        }


@dataclass(frozen=True)
class KrawczykResult:
    verdict: str
    image: Optional[Rectangle] = None


def _float_inverse(partials: KernelPartials) -> Optional[np.ndarray]:
    matrix = np.array([
        [float(partials.dX_dx), float(partials.dX_dy)],
        [float(partials.dY_dx), float(partials.dY_dy)],
    ], dtype=np.float64)

    if not np.all(np.isfinite(matrix)):
        return None

    determinant = np.linalg.det(matrix)
    if determinant == 0 or not np.isfinite(determinant):
        return None

    return np.linalg.inv(matrix)


def krawczyk(system: ChargeSystem, box: Rectangle, precision: int) -> KrawczykResult:
    """
    Krawczyk operator ``K = m - C F(m) + (I - C J(B)) (B - m)`` for ``F = (X, Y)`` on a box off the charges,
    with ``C`` a floating-point inverse of the Jacobian at the midpoint ``m``.

    ``K`` disjoint from ``B`` proves there is no zero in ``B``; ``K`` strictly inside ``B`` proves there is
    exactly one, and it lies in ``K``.
    """
    jacobian = enclose_jacobian(system, box, precision)
    if jacobian is None:
        return KrawczykResult(UNKNOWN)

    mx, my = box.center
    point = EvalPoint(mx, my, precision)
    inverse = _float_inverse(eval_kernel_partials(system, point))
    if inverse is None:
        return KrawczykResult(UNKNOWN)

    value = eval_field(system, point)

    with working_precision(precision):
        C = [[to_arb(Fraction(float(entry))) for entry in row] for row in inverse]
        J = [[jacobian.dX_dx, jacobian.dX_dy], [jacobian.dY_dx, jacobian.dY_dy]]
        F = [value.X, value.Y]
        offsets = [ball(box.x_lo - mx, box.x_hi - mx), ball(box.y_lo - my, box.y_hi - my)]
        centers = [mx, my]

        image = list()
        for i in range(2):
            component = to_arb(centers[i]) - (C[i][0] * F[0] + C[i][1] * F[1])
            for k in range(2):
                residual = (1 if i == k else 0) - (C[i][0] * J[0][k] + C[i][1] * J[1][k])
                component += residual * offsets[k]
            image.append(component)

        if not all(component.is_finite() for component in image):
            return KrawczykResult(UNKNOWN)

        (x_lo, x_hi), (y_lo, y_hi) = bounds(image[0]), bounds(image[1])

    hull = Rectangle(x_lo, x_hi, y_lo, y_hi)

    if not hull.intersects(box):
        return KrawczykResult(EMPTY, hull)

    if box.x_lo < x_lo and x_hi < box.x_hi and box.y_lo < y_lo and y_hi < box.y_hi:
        return KrawczykResult(UNIQUE, hull)

    return KrawczykResult(UNKNOWN, hull)


@dataclass
class SearchOutcome:
    zeros: List[CertifiedZero] = field(default_factory=list)
    undecided: List[Rectangle] = field(default_factory=list)
    boxes_processed: int = 0
    exhausted: bool = False


class OffAxisSearch(object):
    """
    Certified search for the zeros of the field away from the axis.

    Args:
        system (ChargeSystem): charges
        tolerance (Fraction): width every reported box is contracted below
        precision (int): working precision in bits
        strip (Fraction): half-height of the band around the axis left to the exact axis solver
        min_width (Fraction): boxes still unresolved below this size are reported as undecided
        max_boxes (int): worklist budget
        progress (bool): show a progress bar

    The field satisfies ``F(x, -y) = (X, -Y)``, so only the upper half-plane is searched and the
    certified boxes are mirrored. Boxes are discarded when the enclosure of ``X`` or of
    ``S = sum a_j / r_j**3`` (``Y = y * S``) excludes zero, certified by the Krawczyk test on a slightly
    inflated copy, and quadrisected otherwise. The worklist is processed first-in first-out on a
    single worker, since the flint working precision is process-global.
    """
    def __init__(
            self,
            system: ChargeSystem,
            tolerance: Fraction = DEFAULT_TOLERANCE,
            precision: Optional[int] = None,
            strip: Fraction = AXIS_STRIP,
            min_width: Fraction = MIN_WIDTH,
            max_boxes: int = MAX_BOXES,
            progress: bool = False,
    ) -> None:
        self.system = system
        self.tolerance = Fraction(tolerance)
        self.precision = precision or default_precision()
        self.strip = Fraction(strip)
        self.min_width = Fraction(min_width)
        self.max_boxes = max_boxes
        self.progress = progress

    def run(self, box: Rectangle) -> SearchOutcome:
        outcome = SearchOutcome()

        if not box.has_area:
            return outcome

        if self.tolerance <= 0 or self.tolerance >= box.size:
            raise PreconditionError(f"tolerance {self.tolerance} should be positive and below the box size {box.size}")

        top = max(box.y_hi, -box.y_lo)
        if top <= self.strip:
            return outcome

        region = Rectangle(box.x_lo, box.x_hi, self.strip, top)
        upper = self._search(region, outcome)

        zeros = list()
        for zero in upper:
            for candidate in (zero, zero.mirrored()):
                if box.contains_point(*candidate.center):
                    zeros.append(candidate)

        outcome.zeros = sorted(zeros, key=lambda z: z.box.sort_key())
        outcome.undecided = sorted(outcome.undecided, key=Rectangle.sort_key)

        logger.info(f"off-axis search: {len(outcome.zeros)} zeros, {len(outcome.undecided)} undecided boxes, "
                    f"{outcome.boxes_processed} boxes processed")
        return outcome

    def _search(self, region: Rectangle, outcome: SearchOutcome) -> List[CertifiedZero]:
        worklist = deque([region])
        found = list()

        with tqdm(desc='boxes', disable=not self.progress, leave=False) as bar:
            while worklist:
                if outcome.boxes_processed >= self.max_boxes:
                    logger.warning(f"box budget {self.max_boxes} exhausted with {len(worklist)} boxes left")
                    outcome.undecided.extend(worklist)
                    outcome.exhausted = True
                    break

                box = worklist.popleft()
                outcome.boxes_processed += 1
                bar.update(1)

                enclosure = enclose_field(self.system, box, self.precision)
                if enclosure is not None and (not may_vanish(enclosure.X) or not may_vanish(enclosure.S)):
                    continue

                candidate = box.inflated(INFLATION)
                if candidate.y_lo <= 0:
                    candidate = box

                result = krawczyk(self.system, candidate, self.precision)

                if result.verdict == EMPTY:
                    continue

                if result.verdict == UNIQUE:
                    zero = self._contract(candidate)
                    if zero is None:
                        outcome.undecided.append(candidate)
                    else:
                        logger.debug(f"certified zero near {zero.approximate()}")
                        found.append(zero)
                    continue

                if box.size < self.min_width:
                    logger.warning(f"undecided box {box.as_strings()}")
                    outcome.undecided.append(box)
                    continue

                worklist.extend(box.split())

        return self._deduplicate(found)

    def _contract(self, box: Rectangle) -> Optional[CertifiedZero]:
        """ Iterates ``B <- K(B) & B`` on a box known to hold a single zero. """
        precision = 2 * self.precision
        threshold = Fraction(1, 2 ** (self.precision // 2))

        for _ in range(MAX_CONTRACTIONS):
            if box.size < self.tolerance and self._residual(box, precision) < threshold:
                return CertifiedZero(box, OFF_AXIS)

            result = krawczyk(self.system, box, precision)
            narrowed = box.intersection(result.image) if result.image is not None else None

            if narrowed is None or narrowed.size >= box.size:
                break
            box = narrowed

        if box.size < self.tolerance and self._residual(box, precision) < threshold:
            return CertifiedZero(box, OFF_AXIS)

        logger.warning(f"contraction stalled at size {float(box.size):.3e} for {box.as_strings()}")
        return None

    def _residual(self, box: Rectangle, precision: int) -> Fraction:
        x, y = box.center
        value = eval_field(self.system, EvalPoint(x, y, precision))
        return max(magnitude(value.X), magnitude(value.Y))

    def _deduplicate(self, zeros: List[CertifiedZero]) -> List[CertifiedZero]:
        return merge_duplicates(self.system, zeros, self.tolerance, 4 * self.precision)


def _same_zero(system: ChargeSystem, first: Rectangle, second: Rectangle, precision: int) -> Optional[bool]:
    """ True when both boxes hold the same zero, False when they hold distinct ones, None when undecided. """
    hull = first.hull(second).inflated(INFLATION)
    if hull.y_lo > 0 and krawczyk(system, hull, precision).verdict == UNIQUE:
        return True

    # each box holds exactly one zero, so disjoint boxes hold distinct ones
    common = first.intersection(second)
    if common is None or krawczyk(system, common, precision).verdict == EMPTY:
        return False
    return None


def merge_duplicates(
        system: ChargeSystem,
        zeros: List[CertifiedZero],
        tolerance: Fraction,
        precision: int,
) -> List[CertifiedZero]:
    """
    Merges certified boxes lying within ``tolerance`` of each other that hold the same zero. Pairs that can
    be neither merged nor separated are replaced by their hull, marked ``unique=False``, so that a zero is
    never counted twice.
    """
    kept: List[CertifiedZero] = list()

    for zero in sorted(zeros, key=lambda z: z.box.sort_key()):
        merged = False

        for index, other in enumerate(kept):
            if zero.box.gap(other.box) > tolerance:
                continue

            same = _same_zero(system, zero.box, other.box, precision)
            if same is False:
                continue

            if same:
                common = zero.box.intersection(other.box)
                if common is not None and common.has_area:
                    box = common
                else:
                    box = min(zero.box, other.box, key=lambda b: b.size)
                kept[index] = CertifiedZero(box, zero.kind, other.unique and zero.unique, zero.method)
            else:
                logger.warning(f"boxes {zero.box.as_strings()} and {other.box.as_strings()} could not be "
                               f"separated, keeping their hull as one zero")
                kept[index] = CertifiedZero(zero.box.hull(other.box), zero.kind, False, zero.method)

            merged = True
            break

        if not merged:
            kept.append(zero)

    return kept


def offaxis_zeros(
        system: ChargeSystem,
        box: Rectangle,
        tolerance: Fraction = DEFAULT_TOLERANCE,
        precision: Optional[int] = None,
) -> List[CertifiedZero]:
    """ Certified zeros of the field in ``box`` with ``|y| >= 2**-20``. """
    return OffAxisSearch(system, tolerance=tolerance, precision=precision).run(box).zeros
