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
from fractions import Fraction
from typing import List, Optional, Tuple

from chargezero.asymptotes.moments import critical_index
from chargezero.asymptotes.polynomials import AsymptotePolynomials, build_asymptote_polys
from chargezero.exact.polynomial import UniPoly, uni_gcd
from chargezero.exact.sturm import IsolatingInterval, SturmChain, sturm_isolate
from chargezero.field.system import ChargeSystem
from chargezero.utils import logger

TYPE_ONE = 'type-I'
TYPE_TWO = 'type-II'
AXIS = 'axis'

VERDICT_DISJOINT = 'disjoint'
VERDICT_DIAGONALS = 'disjoint-except-diagonals'
VERDICT_OVERLAP = 'overlap-found'

ADMISSIBLE_LO, ADMISSIBLE_HI = Fraction(-1), Fraction(1)


@dataclass(frozen=True)
class AlgebraicDirection:
    """
    Asymptotic direction given as an exact algebraic number.

    A type-I value ``beta`` stands for the line ``x = beta * y`` (``|beta| < 1``), a type-II value ``alpha``
    for the line ``y = alpha * x`` (``0 < |alpha| < 1``). The axis direction carries no root.
    """
    defining_poly: UniPoly
    root_interval: Optional[IsolatingInterval]
    domain: str

    @classmethod
    def axis(cls) -> 'AlgebraicDirection':
        return cls(UniPoly([0, 1]), IsolatingInterval.exact(Fraction(0), UniPoly([0, 1])), AXIS)

    @property
    def is_vertical(self) -> bool:
        return self.domain == TYPE_ONE and self.root_interval.contains(Fraction(0))

    def approximate(self) -> float:
        return self.root_interval.approximate()

    def slope(self) -> Optional[IsolatingInterval]:
        """ The direction as a slope ``dy/dx`` in one coordinate, ``None`` for the vertical line. """
        if self.domain != TYPE_ONE:
            return self.root_interval

        interval = self.root_interval
        if interval.is_exact:
            if interval.lo == 0:
                return None
            return IsolatingInterval.exact(1 / interval.lo, UniPoly([-1 / interval.lo, 1]))

        interval = interval.refine_excluding(Fraction(0))
        if interval.is_exact:
            return IsolatingInterval.exact(1 / interval.lo, UniPoly([-1 / interval.lo, 1]))

        # beta -> 1/beta maps (lo, hi) onto (1/hi, 1/lo) when both ends share a sign
        return IsolatingInterval(1 / interval.hi, 1 / interval.lo, interval.poly.reversed())

    def approximate_slope(self) -> Optional[float]:
        slope = self.slope()
        return None if slope is None else slope.approximate()

    def as_dict(self) -> dict:
        slope = self.approximate_slope()
        return {
            'domain': self.domain,
            'defining_poly': [str(c) for c in self.defining_poly.coefficients],
            'interval': list(self.root_interval.as_strings()),
            'value': self.approximate(),
            'slope': 'vertical' if slope is None else slope,
        }


@dataclass
class DirectionReport:
    L: int
    polynomials: AsymptotePolynomials
    directions_X: List[AlgebraicDirection] = field(default_factory=list)
    directions_Y: List[AlgebraicDirection] = field(default_factory=list)
    disjoint_verdict: str = VERDICT_DISJOINT
    diagonal_flags: List[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            'L': self.L,
            'directions_X': [direction.as_dict() for direction in self.directions_X],
            'directions_Y': [direction.as_dict() for direction in self.directions_Y],
            'disjoint_verdict': self.disjoint_verdict,
            'diagonal_flags': list(self.diagonal_flags),
        }


def _roots_in(chain: SturmChain, interval: IsolatingInterval) -> int:
    if interval.is_exact:
        return 1 if chain.poly(interval.lo) == 0 else 0
    return chain.count_closed(interval.lo, interval.hi)


def same_algebraic_number(a: IsolatingInterval, b: IsolatingInterval) -> bool:
    """ Exact equality of two real algebraic numbers through the gcd of their defining polynomials. """
    if a.is_exact and b.is_exact:
        return a.lo == b.lo

    common = uni_gcd(a.poly, b.poly)
    if common.degree < 1:
        return False

    chain = SturmChain(common.squarefree_part())
    if _roots_in(chain, a) == 0 or _roots_in(chain, b) == 0:
        return False

    # both numbers are roots of the common factor; separate or merge them
    while True:
        if a.hi < b.lo or b.hi < a.lo:
            return False
        if chain.count_closed(min(a.lo, b.lo), max(a.hi, b.hi)) == 1:
            return True
        a = a.refine(a.width / 2) if not a.is_exact else a
        b = b.refine(b.width / 2) if not b.is_exact else b


def same_direction(a: AlgebraicDirection, b: AlgebraicDirection) -> bool:
    slope_a, slope_b = a.slope(), b.slope()
    if slope_a is None or slope_b is None:
        return slope_a is None and slope_b is None
    return same_algebraic_number(slope_a, slope_b)


def _admissible_roots(poly: UniPoly, domain: str) -> List[AlgebraicDirection]:
    """ Roots inside ``(-1, 1)``; type-II roots at the origin are stripped first. """
    if domain == TYPE_TWO:
        _, poly = poly.split_zero_roots()

    if poly.degree < 1:
        return list()

    reduced = poly.squarefree_part()
    intervals = sturm_isolate(reduced, ADMISSIBLE_LO, ADMISSIBLE_HI)
    return [AlgebraicDirection(reduced, interval, domain) for interval in intervals]


def _diagonal_flags(polys: AsymptotePolynomials) -> List[str]:
    flags = list()
    for name in ('P', 'Q', 'numC', 'numD'):
        poly = getattr(polys, name)
        for value in (ADMISSIBLE_LO, ADMISSIBLE_HI):
            if poly(value) == 0:
                flags.append(f"{name} vanishes at {value}")
    return flags


def asymptote_directions(system: ChargeSystem) -> DirectionReport:
    """
    Admissible asymptotic directions of ``{X = 0}`` and ``{Y = 0}``.

    ``{X = 0}`` draws on the roots of ``P_L`` (type I) and the nonzero roots of ``numD_L`` (type II);
    ``{Y = 0}`` on ``Q_L`` and ``numC_L``, plus the axis it contains. Both sets are compared exactly and
    directions on the diagonals ``y = +-x`` are only flagged.

    The type II condition for ``{X = 0}`` is imposed on ``X`` along the approximating points, not on ``Y``.
    """
    index = critical_index(system)
    polys = build_asymptote_polys(index.L)

    report = DirectionReport(L=index.L, polynomials=polys)
    report.directions_X = _admissible_roots(polys.P, TYPE_ONE) + _admissible_roots(polys.numD, TYPE_TWO)
    report.directions_Y = (_admissible_roots(polys.Q, TYPE_ONE) + _admissible_roots(polys.numC, TYPE_TWO)
                           + [AlgebraicDirection.axis()])
    report.diagonal_flags = _diagonal_flags(polys)

    overlaps: List[Tuple[float, float]] = [
        (dx.approximate(), dy.approximate())
        for dx in report.directions_X for dy in report.directions_Y if same_direction(dx, dy)
    ]

    if overlaps:
        report.disjoint_verdict = VERDICT_OVERLAP
        logger.warning(f"shared asymptotic directions at L={index.L}: {overlaps}")
    elif report.diagonal_flags:
        report.disjoint_verdict = VERDICT_DIAGONALS
    else:
        report.disjoint_verdict = VERDICT_DISJOINT

    logger.info(f"critical index L={index.L}: {len(report.directions_X)} directions for X, "
                f"{len(report.directions_Y)} for Y, verdict {report.disjoint_verdict}")
    return report
