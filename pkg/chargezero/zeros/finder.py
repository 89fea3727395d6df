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

from dataclasses import dataclass, field
from typing import List, Optional

from chargezero.errors import InvariantViolation, PreconditionError
from chargezero.field.rectangle import Rectangle
from chargezero.field.system import ChargeSystem
from chargezero.sign_product.polynomialization import (
    DEFAULT_MAX_CHARGES,
    PolynomializationResult,
    build_joint_polynomial,
    containment_check,
)
from chargezero.utils import logger, parse_rational
from chargezero.zeros import ZeroSearchConfig
from chargezero.zeros.axis import axis_zeros
from chargezero.zeros.diagnostics import (
    OrthogonalityRecord,
    count_bound,
    orthogonality_diagnostics,
    unboundedness_obstruction,
)
from chargezero.zeros.resultant import RESULTANT_CHARGE_LIMIT, ResultantCandidates, exhaustive_resultant_candidates
from chargezero.zeros.search import OFF_AXIS, CertifiedZero, OffAxisSearch

CERTIFIED_WITHIN_BOX = 'certified-within-box'
HEURISTIC_BOX = 'heuristic-box'


@dataclass
class ZeroSetReport:
    """
    Every certified zero of a charge system together with how complete the search was.

    Args:
        system (ChargeSystem): charges the zeros belong to
        zeros (list): certified zeros in lexicographic order of their boxes
        search_box (Rectangle): box the off-axis search covered
        completeness (str): ``certified-within-box`` when the box provably holds every zero
        moment_obstruction (str, optional): note on the first nonzero of ``mu_0``, ``mu_1``
    """
    system: ChargeSystem
    zeros: List[CertifiedZero] = field(default_factory=list)
    search_box: Optional[Rectangle] = None
    completeness: str = HEURISTIC_BOX
    moment_obstruction: Optional[str] = None
    undecided: List[Rectangle] = field(default_factory=list)
    candidates: Optional[ResultantCandidates] = None
    orthogonality: List[OrthogonalityRecord] = field(default_factory=list)
    containment: Optional[bool] = None

    @property
    def M(self) -> int:
        return self.system.M

    @property
    def count_bound(self) -> int:
        return count_bound(self.M)

    @property
    def observed_count(self) -> int:
        return len(self.zeros)

    @property
    def bezout(self) -> Optional[int]:
        return None if self.candidates is None else self.candidates.bezout


def default_search_box(system: ChargeSystem) -> Rectangle:
    """ ``[-R, R]**2`` with ``R = 10 (1 + max |x_j|)``. """
    radius = 10 * (1 + max(abs(position) for position in system.positions))
    return Rectangle.square(radius)


def _cross_check(zeros: List[CertifiedZero], candidates: ResultantCandidates) -> None:
    """ The candidate boxes hold every zero, so each certified box must meet one of them. """
    for zero in zeros:
        if not any(zero.box.intersects(box) for box in candidates.candidates):
            raise InvariantViolation(f"certified zero {zero.box.as_strings()} is not among the resultant candidates")


def find_zeros(
        system: ChargeSystem,
        config: Optional[ZeroSearchConfig] = None,
        sign_product_max_charges: int = DEFAULT_MAX_CHARGES,
        box: Optional[Rectangle] = None,
        joint: Optional[PolynomializationResult] = None,
) -> ZeroSetReport:
    """
    Axis zeros exactly, off-axis zeros by certified subdivision, plus the moment obstruction, the count
    bound and orthogonality diagnostics.

    For at most ``config.resultant_max_charges`` charges the search box is taken from root bounds of the
    component resultants and the result is labelled ``certified-within-box``; otherwise the default box
    ``[-R, R]**2`` is searched and the result is ``heuristic-box``. An explicit ``box`` (or ``config.box_radius``)
    replaces either choice and keeps the certified label only when it covers the resultant bound.
    """
    config = config or ZeroSearchConfig()
    if not 1 <= config.resultant_max_charges <= RESULTANT_CHARGE_LIMIT:
        raise PreconditionError(f"resultant_max_charges should be between 1 and {RESULTANT_CHARGE_LIMIT}, "
                                f"got {config.resultant_max_charges}")

    tolerance = parse_rational(config.tolerance)
    report = ZeroSetReport(system=system, moment_obstruction=unboundedness_obstruction(system))

    axis = axis_zeros(system, tolerance, config.precision)

    explicit = box is not None or config.box_radius is not None
    if box is None and config.box_radius is not None:
        box = Rectangle.square(parse_rational(config.box_radius))
    elif box is None:
        box = default_search_box(system)

    if system.M <= min(config.resultant_max_charges, sign_product_max_charges):
        report.candidates = exhaustive_resultant_candidates(
            system, max_charges=config.resultant_max_charges, precision=config.precision,
        )
        if not explicit:
            box = report.candidates.search_box.hull(Rectangle.square(1))
        if report.candidates.complete and box.contains(report.candidates.search_box):
            report.completeness = CERTIFIED_WITHIN_BOX
    else:
        logger.warning(f"no resultant route for M={system.M}, searching the heuristic box {box.as_strings()}")

    search = OffAxisSearch(
        system,
        tolerance=tolerance,
        precision=config.precision,
        strip=parse_rational(config.strip),
        min_width=parse_rational(config.min_width),
        max_boxes=config.max_boxes,
        progress=config.progress,
    )
    outcome = search.run(box)

    report.search_box = box
    report.undecided = outcome.undecided
    report.zeros = sorted(axis + outcome.zeros, key=lambda zero: zero.box.sort_key())

    if outcome.undecided or outcome.exhausted:
        report.completeness = HEURISTIC_BOX

    if report.candidates is not None:
        _cross_check(report.zeros, report.candidates)

    if config.containment and system.M <= sign_product_max_charges and report.zeros:
        joint = joint or build_joint_polynomial(system, max_charges=sign_product_max_charges)
        report.containment = containment_check(joint, report.zeros, config.precision).passed

    report.orthogonality = orthogonality_diagnostics(system, report.zeros, config.precision)

    if report.observed_count > report.count_bound:
        raise InvariantViolation(f"{report.observed_count} zeros exceed the bound {report.count_bound}")

    off_axis = sum(1 for zero in report.zeros if zero.kind == OFF_AXIS)
    logger.info(f"{report.observed_count} zeros ({off_axis} off the axis), completeness {report.completeness}")
    return report
