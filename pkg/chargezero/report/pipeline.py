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

import json
import os
from dataclasses import dataclass, field, replace
from typing import List, Optional

from chargezero.asymptotes import VerifyConfig
from chargezero.asymptotes.directions import DirectionReport, asymptote_directions
from chargezero.asymptotes.moments import CriticalIndex, MomentVector, critical_index, moments
from chargezero.asymptotes.verification import VerificationReport, run_all_suites
from chargezero.errors import SizeLimitError
from chargezero.report.config import RunConfig
from chargezero.sign_product import SignProductConfig
from chargezero.sign_product.polynomialization import PolynomializationResult, build_joint_polynomial
from chargezero.utils import format_rational, logger
from chargezero.zeros import ZeroSearchConfig
from chargezero.zeros.diagnostics import count_bound_check
from chargezero.zeros.finder import ZeroSetReport, find_zeros


@dataclass
class AnalysisReport:
    run: RunConfig
    moments: MomentVector
    critical_index: CriticalIndex
    directions: DirectionReport
    zeros: ZeroSetReport
    polynomial: Optional[PolynomializationResult] = None
    verification: List[VerificationReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """ False when a verification suite failed. """
        return all(report.passed for report in self.verification)

    def _bounds(self) -> dict:
        bounds = {
            'count_bound': self.zeros.count_bound,
            'observed_count': self.zeros.observed_count,
            'count_bound_ok': count_bound_check(self.zeros),
            'bezout': self.zeros.bezout,
        }
        if self.polynomial is not None:
            bounds.update({
                'degree': self.polynomial.degree,
                'literal_degree': self.polynomial.literal_degree,
                'degree_bound': self.polynomial.degree_bound,
                'degree_ok': self.polynomial.degree <= self.polynomial.degree_bound,
            })
        return bounds

    def to_dict(self) -> dict:
        zeros = self.zeros
        return {
            'system': {
                'charges': self.run.system.as_strings(),
                'original_charges': self.run.original.as_strings(),
                'shift': format_rational(self.run.shift),
            },
            'moments': self.moments.as_strings(),
            'critical_index': {'L': self.critical_index.L, 'mu_L': format_rational(self.critical_index.mu_L)},
            'directions': self.directions.as_dict(),
            'zeros': [zero.as_dict() for zero in zeros.zeros],
            'orthogonality': [record.as_dict() for record in zeros.orthogonality],
            'undecided': [box.as_strings() for box in zeros.undecided],
            'search_box': zeros.search_box.as_strings() if zeros.search_box is not None else None,
            'completeness': zeros.completeness,
            'obstruction': zeros.moment_obstruction,
            'containment': zeros.containment,
            'bounds': self._bounds(),
            'verification': [
                {'suite': report.name, 'passed': report.passed, 'records': report.records}
                for report in self.verification
            ],
            'passed': self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + '\n'

    def write(self, path: str) -> None:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(self.to_json())
        logger.info(f"report written to {path}")


def run_pipeline(
        run: RunConfig,
        zero_config: Optional[ZeroSearchConfig] = None,
        verify_config: Optional[VerifyConfig] = None,
        sign_product_config: Optional[SignProductConfig] = None,
) -> AnalysisReport:
    """
    Moments, asymptotic directions, zeros, polynomialization and the verification suites, in that order,
    on the canonical frame of ``run``. Settings present in ``run`` override the module configs.
    """
    zero_config = zero_config or ZeroSearchConfig()
    verify_config = verify_config or VerifyConfig()
    sign_product_config = sign_product_config or SignProductConfig()

    if run.tolerance is not None:
        zero_config = replace(zero_config, tolerance=format_rational(run.tolerance))
    if run.precision is not None:
        zero_config = replace(zero_config, precision=run.precision)
    lmax = run.lmax if run.lmax is not None else verify_config.lmax

    system = run.system
    logger.info(f"analyzing {system}")

    vector = moments(system)
    index = critical_index(system)
    directions = asymptote_directions(system)

    polynomial = None
    try:
        polynomial = build_joint_polynomial(system, max_charges=sign_product_config.max_charges)
    except SizeLimitError as error:
        logger.warning(f"skipping polynomialization: {error}")

    zeros = find_zeros(
        system,
        zero_config,
        sign_product_max_charges=sign_product_config.max_charges,
        box=run.box,
        joint=polynomial,
    )

    verification = run_all_suites(lmax, verify_config.num_workers)

    return AnalysisReport(
        run=run,
        moments=vector,
        critical_index=index,
        directions=directions,
        zeros=zeros,
        polynomial=polynomial,
        verification=verification,
    )
