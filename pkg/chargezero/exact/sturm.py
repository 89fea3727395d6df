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

from chargezero.errors import InvariantViolation, PreconditionError
from chargezero.exact.polynomial import UniPoly
from chargezero.utils import format_rational

APPROXIMATION_WIDTH = Fraction(1, 2 ** 60)


def cauchy_bound(p: UniPoly) -> Fraction:
    """ Every real root of ``p`` lies strictly inside ``(-B, B)`` with ``B = 1 + max|c_i| / |c_lead|``. """
    if p.degree < 1:
        return Fraction(1)
    lead = abs(p.leading_coefficient)
    return 1 + max(abs(c) for c in p.coefficients[:-1]) / lead


def _integer_coefficients(p: UniPoly) -> Tuple[int, ...]:
    _, cleared = p.to_sympy().clear_denoms()
    return tuple(int(c) for c in reversed(cleared.all_coeffs()))


def _sign(coefficients: Tuple[int, ...], value: Fraction) -> int:
    """ Sign of an integer polynomial at ``n/d`` via the homogenised form ``sum c_i n^i d^(D-i)``. """
    n, d = value.numerator, value.denominator
    acc = 0
    scale = 1
    for c in reversed(coefficients):
        acc = acc * n + c * scale
        scale *= d
    # acc == d**D * p(n/d) and d > 0
    return (acc > 0) - (acc < 0)


class SturmChain(object):
    """
    Sturm sequence of a square-free polynomial, evaluated with integer arithmetic.

    ``count(a, b)`` is the number of distinct real roots in ``(a, b]``: the difference of sign
    variations ``V(a) - V(b)``, zeros in the sequence being skipped.
    """
    def __init__(self, poly: UniPoly) -> None:
        self.poly = poly
        if poly.degree < 1:
            self._chain = list()
        else:
            self._chain = [_integer_coefficients(q) for q in poly.sturm_sequence()]

    def variations(self, value: Fraction) -> int:
        signs = [s for s in (_sign(q, value) for q in self._chain) if s != 0]
        return sum(1 for left, right in zip(signs, signs[1:]) if left != right)

    def count(self, lo: Fraction, hi: Fraction) -> int:
        """ Distinct roots in the half-open interval ``(lo, hi]``. """
        if not self._chain or lo >= hi:
            return 0
        return self.variations(lo) - self.variations(hi)

    def count_open(self, lo: Fraction, hi: Fraction) -> int:
        if lo >= hi:
            return 0
        return self.count(lo, hi) - (1 if self.poly(hi) == 0 else 0)

    def count_closed(self, lo: Fraction, hi: Fraction) -> int:
        if lo > hi:
            return 0
        if lo == hi:
            return 1 if self.poly(lo) == 0 else 0
        return self.count(lo, hi) + (1 if self.poly(lo) == 0 else 0)


@dataclass(frozen=True)
class IsolatingInterval:
    """
    Interval ``(lo, hi)`` holding exactly one real root of ``poly``.
    A rational root is stored exactly as the degenerate interval ``lo == hi``.
    """
    lo: Fraction
    hi: Fraction
    poly: UniPoly

    def __post_init__(self) -> None:
        assert self.lo <= self.hi, f"empty isolating interval ({self.lo}, {self.hi})"

    @classmethod
    def exact(cls, root: Fraction, poly: UniPoly) -> 'IsolatingInterval':
        return cls(root, root, poly)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value: Fraction) -> bool:
        if self.is_exact:
            return value == self.lo
        return self.lo < value < self.hi

    def refine(self, width: Fraction) -> 'IsolatingInterval':
        """ Bisects until the interval is narrower than ``width`` (or the root is hit exactly). """
        lo, hi = self.lo, self.hi
        if lo == hi:
            return self

        lo_sign = self.poly.sign_at(lo)
        assert lo_sign != 0 and lo_sign != self.poly.sign_at(hi), "isolating interval lost its sign change"

        while hi - lo >= width:
            mid = (lo + hi) / 2
            mid_sign = self.poly.sign_at(mid)
            if mid_sign == 0:
                return IsolatingInterval.exact(mid, self.poly)
            if mid_sign == lo_sign:
                lo = mid
            else:
                hi = mid

        return IsolatingInterval(lo, hi, self.poly)

    def refine_excluding(self, value: Fraction) -> 'IsolatingInterval':
        """ Refines until ``value`` lies outside the closed interval, unless ``value`` is the root. """
        interval = self
        while not interval.is_exact and interval.lo <= value <= interval.hi:
            interval = interval.refine(interval.width / 2)
        return interval

    def approximate(self) -> float:
        return float(self.refine(APPROXIMATION_WIDTH).midpoint)

    def as_strings(self) -> Tuple[str, str]:
        return format_rational(self.lo), format_rational(self.hi)


def _separate(chain: SturmChain, lo: Fraction, hi: Fraction) -> IsolatingInterval:
    """ Shrinks an interval holding exactly one root until neither endpoint is a root. """
    p = chain.poly
    while p(lo) == 0 or p(hi) == 0:
        mid = (lo + hi) / 2
        if p(mid) == 0:
            return IsolatingInterval.exact(mid, p)
        if chain.count_open(lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return IsolatingInterval(lo, hi, p)


def sturm_isolate(
        p: UniPoly,
        lo: Optional[Fraction] = None,
        hi: Optional[Fraction] = None,
        detect_rational_roots: bool = True,
) -> List[IsolatingInterval]:
    """
    Isolates every real root of a square-free polynomial in the open interval ``(lo, hi)``.

    Args:
        p (UniPoly): square-free polynomial (callers divide by ``gcd(p, p')`` first)
        lo (Fraction): lower end, defaults to minus the Cauchy bound
        hi (Fraction): upper end, defaults to the Cauchy bound
        detect_rational_roots (bool): factor ``p`` over QQ first so rational roots come out exact.
            Disable for high-degree polynomials where factoring dominates.

    Returns:
        intervals (list): pairwise disjoint isolating intervals sorted by position
    """
    if p.is_zero:
        raise PreconditionError("cannot isolate the roots of the zero polynomial")

    bound = cauchy_bound(p)
    lo = -bound if lo is None else Fraction(lo)
    hi = bound if hi is None else Fraction(hi)

    if lo >= hi:
        raise PreconditionError(f"empty isolation bracket ({lo}, {hi})")

    if p.degree < 1:
        return list()

    if not p.is_squarefree:
        raise InvariantViolation(f"sturm_isolate received a polynomial with repeated roots: {p}")

    chain = SturmChain(p)
    intervals = list()

    cuts = [lo, hi]
    if detect_rational_roots:
        for root in p.rational_roots():
            if lo < root < hi:
                intervals.append(IsolatingInterval.exact(root, p))
                cuts.append(root)
    cuts = sorted(set(cuts))

    stack = [(a, b) for a, b in zip(cuts, cuts[1:])]
    while stack:
        a, b = stack.pop()
        n = chain.count_open(a, b)

        if n == 0:
            continue

        if n == 1:
            intervals.append(_separate(chain, a, b))
            continue

        mid = (a + b) / 2
        if p(mid) == 0:
            intervals.append(IsolatingInterval.exact(mid, p))
        stack.append((mid, b))
        stack.append((a, mid))

    intervals.sort(key=lambda interval: (interval.lo, interval.hi))

    total = chain.count_open(lo, hi)
    if len(intervals) != total:
        raise InvariantViolation(f"isolated {len(intervals)} roots of {p}, Sturm count is {total}")

    return intervals


def count_real_roots(p: UniPoly, lo: Optional[Fraction] = None, hi: Optional[Fraction] = None) -> int:
    """ Number of distinct real roots of ``p`` in ``(lo, hi)`` (all of them by default). """
    if p.is_zero:
        raise PreconditionError("the zero polynomial has infinitely many roots")
    q = p.squarefree_part()
    bound = cauchy_bound(q)
    lo = -bound if lo is None else Fraction(lo)
    hi = bound if hi is None else Fraction(hi)
    return SturmChain(q).count_open(lo, hi)
