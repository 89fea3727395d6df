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

import random
from fractions import Fraction

import pytest

from chargezero.errors import PreconditionError
from chargezero.exact import (
    BiPoly,
    IsolatingInterval,
    SturmChain,
    UniPoly,
    bi_evaluate,
    cauchy_bound,
    count_real_roots,
    sturm_isolate,
    uni_arith,
    uni_differentiate,
    uni_gcd,
)
from chargezero.utils import format_rational, parse_rational

SEED = 7

P_1 = UniPoly([1, 0, -2])
Q_1 = UniPoly([0, -3])
Q_2 = UniPoly([-3, 0, 12])


def test_uni_arith():
    assert uni_arith(UniPoly([1, 1]), UniPoly([-1, 1]), 'add') == UniPoly([0, 2])
    assert uni_arith(UniPoly(), P_1, 'mul').is_zero
    assert uni_arith(P_1, Q_1, 'mul') == UniPoly([0, -3, 0, 6])
    assert uni_arith(P_1, P_1, 'sub').degree == -1

    with pytest.raises(ValueError):
        uni_arith(P_1, Q_1, 'div')


def test_uni_differentiate():
    assert uni_differentiate(UniPoly([0, 0, 1])) == UniPoly([0, 2])
    assert uni_differentiate(UniPoly.constant(5)).is_zero
    assert uni_differentiate(P_1) == UniPoly([0, -4])


def test_uni_gcd():
    assert uni_gcd(UniPoly([-1, 0, 1]), UniPoly([-1, 1])) == UniPoly([-1, 1])
    assert uni_gcd(P_1, Q_1) == UniPoly([1])
    assert uni_gcd(UniPoly([2, 4]), UniPoly()) == UniPoly([Fraction(1, 2), 1])

    with pytest.raises(PreconditionError):
        uni_gcd(UniPoly(), UniPoly())


def test_polynomial_helpers():
    p = UniPoly([0, 0, -3, 1])
    k, rest = p.split_zero_roots()
    assert k == 2 and rest == UniPoly([-3, 1])
    assert p.reversed() == UniPoly([1, -3])
    assert UniPoly([-1, 0, 1]).rational_roots() == [Fraction(-1), Fraction(1)]
    assert UniPoly([-2, 0, 1]).rational_roots() == []
    assert (UniPoly([1, 1]) ** 2).squarefree_part().monic() == UniPoly([1, 1])
    assert P_1('1/2') == Fraction(1, 2)


def test_sturm_isolate_sqrt_two():
    intervals = sturm_isolate(UniPoly([-2, 0, 1]), Fraction(-10), Fraction(10))
    assert len(intervals) == 2

    for interval, root in zip(intervals, (-2 ** 0.5, 2 ** 0.5)):
        assert interval.lo < Fraction(root) < interval.hi
        refined = interval.refine(Fraction(1, 10 ** 12))
        assert refined.width < Fraction(1, 10 ** 12)
        assert abs(refined.approximate() - root) < 1e-12


def test_sturm_isolate_without_real_roots():
    assert sturm_isolate(UniPoly([1, 0, 1]), Fraction(-10), Fraction(10)) == []


def test_sturm_isolate_rational_roots_are_exact():
    intervals = sturm_isolate(Q_2, Fraction(-10), Fraction(10))
    assert [interval.lo for interval in intervals] == [Fraction(-1, 2), Fraction(1, 2)]
    assert all(interval.is_exact for interval in intervals)

    intervals = sturm_isolate(Q_2, Fraction(-10), Fraction(10), detect_rational_roots=False)
    assert len(intervals) == 2
    assert intervals[0].contains(Fraction(-1, 2)) or intervals[0].is_exact


def test_sturm_isolate_rejects_zero_polynomial():
    with pytest.raises(PreconditionError):
        sturm_isolate(UniPoly(), Fraction(-1), Fraction(1))


def test_sturm_counts_match_random_products():
    rng = random.Random(SEED)

    for _ in range(20):
        roots = sorted(set(Fraction(rng.randint(-40, 40), rng.randint(1, 7)) for _ in range(rng.randint(1, 6))))
        p = UniPoly([1])
        for root in roots:
            p = p * UniPoly([-root, 1])

        assert count_real_roots(p) == len(roots)
        intervals = sturm_isolate(p, detect_rational_roots=False)
        assert len(intervals) == len(roots)
        for interval, root in zip(intervals, roots):
            assert interval.lo <= root <= interval.hi


def test_sturm_chain_interval_conventions():
    chain = SturmChain(UniPoly([-1, 0, 1]))
    assert chain.count(Fraction(-1), Fraction(1)) == 1
    assert chain.count_open(Fraction(-1), Fraction(1)) == 0
    assert chain.count_closed(Fraction(-1), Fraction(1)) == 2
    assert cauchy_bound(UniPoly([-1, 0, 1])) == 2


def test_refine_excluding_moves_endpoint_off_value():
    interval = IsolatingInterval(Fraction(0), Fraction(2), UniPoly([-2, 0, 1]))
    refined = interval.refine_excluding(Fraction(3, 2))
    assert not refined.lo <= Fraction(3, 2) <= refined.hi
    assert refined.lo < Fraction(141421, 100000) < refined.hi


def test_bi_evaluate():
    x, y = BiPoly.x(), BiPoly.y()
    assert bi_evaluate(x ** 2 + y ** 2, 1, 2) == 5
    assert bi_evaluate(BiPoly(), '3/7', -1) == 0

    rho = (x - 1) ** 2 + y ** 2
    assert bi_evaluate(rho ** 2 * 16, 1, 0) == 0
    assert (rho ** 2).total_degree == 4
    assert (rho * y).mirrored() == -(rho * y)
    assert rho.is_even_in_y()


def test_bipoly_sympy_orders():
    p = BiPoly({(2, 1): 3, (0, 3): Fraction(-1, 2)})
    assert BiPoly.from_sympy(p.to_sympy('xy'), 'xy') == p
    assert BiPoly.from_sympy(p.to_sympy('yx'), 'yx') == p
    assert p.degree_in('x') == 2 and p.degree_in('y') == 3


def test_rational_parsing():
    assert parse_rational('0.125') == Fraction(1, 8)
    assert parse_rational(' -1/2 ') == Fraction(-1, 2)
    assert format_rational(Fraction(6, 4)) == '3/2'
    assert format_rational(Fraction(2)) == '2/1'

    for bad in (0.5, True, '1/0', 'abc', None):
        with pytest.raises(ValueError):
            parse_rational(bad)


if __name__ == '__main__':
    test_uni_arith()
    test_uni_differentiate()
    test_uni_gcd()
    test_polynomial_helpers()
    test_sturm_isolate_sqrt_two()
    test_sturm_isolate_without_real_roots()
    test_sturm_isolate_rational_roots_are_exact()
    test_sturm_isolate_rejects_zero_polynomial()
    test_sturm_counts_match_random_products()
    test_sturm_chain_interval_conventions()
    test_refine_excluding_moves_endpoint_off_value()
    test_bi_evaluate()
    test_bipoly_sympy_orders()
    test_rational_parsing()
