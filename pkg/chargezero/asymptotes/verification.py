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

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Tuple

import pandas as pd
from sympy import Rational, Symbol, diff

from chargezero.asymptotes.polynomials import build_asymptote_polys, differentiate_over_radical
from chargezero.errors import PreconditionError
from chargezero.exact.polynomial import ONE_PLUS_X_SQUARED, X, UniPoly, uni_gcd
from chargezero.exact.sturm import SturmChain, count_real_roots, sturm_isolate
from chargezero.utils import logger

SPOT_CHECK_POINTS = tuple(Fraction(k, 3) for k in range(-5, 5))
SPOT_CHECK_DIGITS = 50
SPOT_CHECK_TOLERANCE = Rational(1, 10 ** 30)


@dataclass
class VerificationReport:
    """
    Outcome of one verification suite.

    Args:
        name (str): suite name
        records (list): one dict per derivative order ``L`` with at least ``L``, ``passed`` and ``detail``
    """
    name: str
    records: List[Dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(record['passed'] for record in self.records)

    @property
    def failures(self) -> List[Dict]:
        return [record for record in self.records if not record['passed']]

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.records, columns=['L', 'passed', 'detail'])
        frame.insert(0, 'suite', self.name)
        return frame


def _run_suite(
        name: str,
        check: Callable[[int], Tuple[bool, str]],
        levels: Iterable[int],
        num_workers: int = 1,
) -> VerificationReport:
    levels = list(levels)

    if num_workers > 1:
        with ThreadPoolExecutor(max_workers=num_workers) as executor:
            outcomes = list(executor.map(check, levels))
    else:
        outcomes = [check(L) for L in levels]

    report = VerificationReport(name)
    for L, (passed, detail) in sorted(zip(levels, outcomes), key=lambda item: item[0]):
        report.records.append({'L': L, 'passed': passed, 'detail': detail})
        if not passed:
            logger.warning(f"{name} failed at L={L}: {detail}")

    logger.info(f"{name}: {len(report.records) - len(report.failures)}/{len(report.records)} passed")
    return report


def _check_lmax(lmax: int, lowest: int) -> None:
    if lmax < lowest:
        raise PreconditionError(f"lmax should be at least {lowest}, got {lmax}")


def strictly_interlace(f: UniPoly, g: UniPoly) -> Tuple[bool, str]:
    """
    Checks that the real roots of ``g`` (degree ``n - 1``) strictly separate those of ``f`` (degree ``n``):
    both are real-rooted and simple, they share no root, and every gap between consecutive roots of ``f``
    holds exactly one root of ``g``.
    """
    if g.degree != f.degree - 1:
        return False, f"degrees {f.degree} and {g.degree} cannot interlace"

    if uni_gcd(f, g).degree > 0:
        return False, "common root"

    if count_real_roots(f) != f.degree or (g.degree > 0 and count_real_roots(g) != g.degree):
        return False, "not real-rooted with simple roots"

    g_chain = SturmChain(g)
    intervals = list()
    for interval in sturm_isolate(f):
        while not interval.is_exact and g_chain.count_closed(interval.lo, interval.hi) > 0:
            interval = interval.refine(interval.width / 2)
        intervals.append(interval)

    for left, right in zip(intervals, intervals[1:]):
        if g_chain.count_closed(left.hi, right.lo) != 1:
            return False, f"gap ({left.hi}, {right.lo}) does not hold exactly one root"

    return True, f"{f.degree} roots interlace {g.degree}"


def _check_interlacing(L: int) -> Tuple[bool, str]:
    current, previous = build_asymptote_polys(L), build_asymptote_polys(L - 1)
    P, Q = current.P, current.Q

    if P.degree != L + 1 or Q.degree != L:
        return False, f"deg P = {P.degree}, deg Q = {Q.degree}"

    if (Q.leading_coefficient > 0) != (L % 2 == 0):
        return False, f"leading coefficient of Q is {Q.leading_coefficient}"

    pairs = (
        ('P/P_prev', P, previous.P),
        ('Q/Q_prev', Q, previous.Q),
        ('P/dP', P, P.derivative()),
        ('Q/dQ', Q, Q.derivative()),
        ('P/Q', P, Q),
    )
    for label, f, g in pairs:
        passed, detail = strictly_interlace(f, g)
        if not passed:
            return False, f"{label}: {detail}"

    return True, "degrees, leading sign and five interlacings"


def verify_interlacing(lmax: int = 12, num_workers: int = 1) -> VerificationReport:
    _check_lmax(lmax, 1)
    return _run_suite('interlacing', _check_interlacing, range(1, lmax + 1), num_workers)


def _check_recursion_identity(L: int) -> Tuple[bool, str]:
    current, previous = build_asymptote_polys(L), build_asymptote_polys(L - 1)
    rhs = previous.Q * ONE_PLUS_X_SQUARED * L + X * current.Q
    if current.P != rhs:
        return False, f"P = {current.P}, right-hand side = {rhs}"
    return True, "P_L = L Q_(L-1) (1 + x^2) + x Q_L"


def verify_recursion_identity(lmax: int = 12, num_workers: int = 1) -> VerificationReport:
    _check_lmax(lmax, 1)
    return _run_suite('recursion_identity', _check_recursion_identity, range(1, lmax + 1), num_workers)


def _check_inversion(L: int) -> Tuple[bool, str]:
    """
    ``x**(L+1) * Q_L(x) / (1+x^2)**((2L+3)/2) == (-1)**L * numC_L(1/x) / (1 + 1/x^2)**((2L+3)/2)`` for ``x > 0``;
    multiplying through by ``(1+x^2)**((2L+3)/2)`` leaves ``x**(L+1) Q_L(x) == (-1)**L * x**(2L+3) * numC_L(1/x)``.
    """
    polys = build_asymptote_polys(L)
    top = polys.denominator_exponent
    sign = 1 if L % 2 == 0 else -1

    if polys.numC.degree > top:
        return False, f"deg numC = {polys.numC.degree} exceeds {top}"

    rhs = [Fraction(0)] * (top + 1)
    for k, c in enumerate(polys.numC.coefficients):
        rhs[top - k] = sign * c
    lhs = UniPoly.monomial(L + 1) * polys.Q

    if lhs != UniPoly(rhs):
        return False, f"{lhs} != {UniPoly(rhs)}"
    return True, "identity holds after clearing denominators"


def verify_inversion(lmax: int = 10, num_workers: int = 1) -> VerificationReport:
    _check_lmax(lmax, 0)
    return _run_suite('inversion', _check_inversion, range(0, lmax + 1), num_workers)


def _check_no_common_root(L: int) -> Tuple[bool, str]:
    polys = build_asymptote_polys(L)
    common = uni_gcd(polys.numC, polys.numD)
    _, rest = common.split_zero_roots()
    roots = count_real_roots(rest)
    if roots:
        return False, f"gcd {common} has {roots} nonzero real roots"
    return True, f"gcd {common}"


def verify_no_common_cd_root(lmax: int = 10, num_workers: int = 1) -> VerificationReport:
    _check_lmax(lmax, 1)
    return _run_suite('no_common_cd_root', _check_no_common_root, range(1, lmax + 1), num_workers)


def _check_cd_derivative(L: int) -> Tuple[bool, str]:
    current, previous = build_asymptote_polys(L), build_asymptote_polys(L - 1)
    derived = differentiate_over_radical(previous.numC, previous.denominator_exponent)
    if current.numD != derived:
        return False, f"numD = {current.numD}, derivative of the previous numC = {derived}"
    return True, "numD_L is the derivative numerator of numC_(L-1)"


def verify_cd_derivative_relation(lmax: int = 10, num_workers: int = 1) -> VerificationReport:
    _check_lmax(lmax, 1)
    return _run_suite('cd_derivative_relation', _check_cd_derivative, range(1, lmax + 1), num_workers)


def _check_type_one_derivatives(L: int) -> Tuple[bool, str]:
    t = Symbol('t')
    polys = build_asymptote_polys(L)
    radical = (1 + t ** 2) ** Rational(-3, 2)
    targets = (('Q', diff(radical, t, L) if L else radical, polys.Q),
               ('P', diff(t * radical, t, L) if L else t * radical, polys.P))

    for label, derivative, numerator in targets:
        for point in SPOT_CHECK_POINTS:
            beta = Rational(point.numerator, point.denominator)
            value = numerator(point)
            scale = (1 + beta ** 2) ** Rational(-polys.denominator_exponent, 2)
            expected = Rational(value.numerator, value.denominator) * scale
            gap = abs((derivative.subs(t, beta) - expected).evalf(SPOT_CHECK_DIGITS))
            if gap > SPOT_CHECK_TOLERANCE:
                return False, f"{label} differs by {gap} at {point}"

    return True, f"{len(SPOT_CHECK_POINTS)} points"


def verify_type_one_derivatives(lmax: int = 12, num_workers: int = 1) -> VerificationReport:
    _check_lmax(lmax, 0)
    return _run_suite('type_one_derivatives', _check_type_one_derivatives, range(0, lmax + 1), num_workers)


def run_all_suites(lmax: int = 12, num_workers: int = 1) -> List[VerificationReport]:
    """ Every suite, with the inversion and C/D suites capped at ``min(lmax, 10)``. """
    capped = min(lmax, 10)
    return [
        verify_interlacing(lmax, num_workers),
        verify_recursion_identity(lmax, num_workers),
        verify_inversion(capped, num_workers),
        verify_no_common_cd_root(capped, num_workers),
        verify_cd_derivative_relation(capped, num_workers),
        verify_type_one_derivatives(lmax, num_workers),
    ]
