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

from chargezero.asymptotes import (
    build_asymptote_polys,
    critical_index,
    moments,
    run_all_suites,
    asymptote_directions,
    verify_cd_derivative_relation,
    verify_interlacing,
    verify_inversion,
    verify_no_common_cd_root,
    verify_recursion_identity,
    verify_type_one_derivatives,
)
from chargezero.asymptotes.directions import (
    AXIS,
    TYPE_ONE,
    VERDICT_DISJOINT,
    VERDICT_OVERLAP,
    AlgebraicDirection,
    same_algebraic_number,
)
from chargezero.asymptotes.verification import strictly_interlace
from chargezero.errors import PreconditionError
from chargezero.exact import UniPoly, sturm_isolate
from chargezero.field import ChargeSystem
from chargezero.zeros import unboundedness_obstruction

SEED = 2021

DIPOLE = ChargeSystem.from_lists([1, 2], [1, -1])
EQUAL_PAIR = ChargeSystem.from_lists([1, 3], [1, 1])
QUADRUPOLE = ChargeSystem.from_lists([1, 2, 3], [1, -2, 1])


def random_system(rng: random.Random) -> ChargeSystem:
    M = rng.randint(1, 5)
    positions = rng.sample(range(1, 30), M)
    amplitudes = [Fraction(rng.choice((-1, 1)) * rng.randint(1, 6), rng.randint(1, 3)) for _ in range(M)]
    return ChargeSystem.from_lists(positions, amplitudes)


def test_moments():
    assert moments(DIPOLE).values[:2] == (0, 1)
    assert moments(EQUAL_PAIR)[0] == 2
    assert len(moments(QUADRUPOLE)) == 4

    scaled = moments(QUADRUPOLE.scaled(Fraction(-5, 3)))
    assert scaled.values == tuple(Fraction(-5, 3) * value for value in moments(QUADRUPOLE).values)


def test_critical_index_fixtures():
    assert (critical_index(DIPOLE).L, critical_index(DIPOLE).mu_L) == (1, 1)
    assert (critical_index(EQUAL_PAIR).L, critical_index(EQUAL_PAIR).mu_L) == (0, 2)
    assert (critical_index(QUADRUPOLE).L, critical_index(QUADRUPOLE).mu_L) == (2, 2)


def test_critical_index_matches_moment_scan():
    rng = random.Random(SEED)

    for _ in range(100):
        system = random_system(rng)
        values = [
            (-1) ** u * sum(c.amplitude * c.position ** u for c in system) for u in range(system.M + 1)
        ]
        expected = next(u for u, value in enumerate(values) if value != 0)

        index = critical_index(system)
        assert index.L == expected
        assert index.L <= system.M - 1

        fires = unboundedness_obstruction(system) is not None
        assert fires == (values[0] != 0 or values[1] != 0)


def test_asymptote_polynomials_closed_forms():
    one, two = build_asymptote_polys(1), build_asymptote_polys(2)
    assert one.P == UniPoly([1, 0, -2]) and one.Q == UniPoly([0, -3])
    assert two.P == UniPoly([0, -9, 0, 6]) and two.Q == UniPoly([-3, 0, 12])
    assert one.numC == UniPoly([0, 0, 3]) and one.numD == UniPoly([0, 2, 0, -1])
    assert build_asymptote_polys(0).P == UniPoly([0, 1]) and build_asymptote_polys(0).Q == UniPoly([1])

    for L in range(0, 13):
        polys = build_asymptote_polys(L)
        assert polys.P.degree == L + 1 and polys.Q.degree == L
        assert (polys.Q.leading_coefficient > 0) == (L % 2 == 0)

    with pytest.raises(PreconditionError):
        build_asymptote_polys(-1)


def test_directions_of_dipole():
    report = asymptote_directions(DIPOLE)
    assert report.L == 1
    assert report.disjoint_verdict == VERDICT_DISJOINT

    slopes = sorted(direction.approximate_slope() for direction in report.directions_X)
    assert len(slopes) == 2
    assert abs(slopes[0] + 2 ** 0.5) < 1e-12 and abs(slopes[1] - 2 ** 0.5) < 1e-12
    assert all(direction.domain == TYPE_ONE for direction in report.directions_X)

    domains = sorted(direction.domain for direction in report.directions_Y)
    assert domains == sorted([TYPE_ONE, AXIS])
    vertical = [direction for direction in report.directions_Y if direction.domain == TYPE_ONE]
    assert vertical[0].is_vertical and vertical[0].slope() is None


def test_directions_of_equal_pair():
    report = asymptote_directions(EQUAL_PAIR)
    assert report.L == 0
    assert [direction.domain for direction in report.directions_Y] == [AXIS]
    # the root 0 of P_0 is reported as the vertical direction
    assert [direction.is_vertical for direction in report.directions_X] == [True]


def test_directions_never_overlap():
    for L in range(0, 13):
        system = ChargeSystem.from_lists(range(1, L + 2), [(-1) ** j * binomial for j, binomial in enumerate(_row(L))])
        report = asymptote_directions(system)
        assert report.L == L
        assert report.disjoint_verdict != VERDICT_OVERLAP


def _row(L: int):
    row = [1]
    for _ in range(L):
        row = [a + b for a, b in zip(row + [0], [0] + row)]
    return row


def test_same_algebraic_number():
    sqrt_two = sturm_isolate(UniPoly([-2, 0, 1]), Fraction(0), Fraction(2))[0]
    other = sturm_isolate(UniPoly([0, -2, 0, 1]), Fraction(1), Fraction(2))[0]
    assert same_algebraic_number(sqrt_two, other)

    sqrt_three = sturm_isolate(UniPoly([-3, 0, 1]), Fraction(0), Fraction(2))[0]
    assert not same_algebraic_number(sqrt_two, sqrt_three)

    direction = AlgebraicDirection(UniPoly([-1, 0, 2]), sturm_isolate(UniPoly([-1, 0, 2]), 0, 1)[0], TYPE_ONE)
    assert same_algebraic_number(direction.slope(), sqrt_two)


def test_strictly_interlace():
    assert strictly_interlace(UniPoly([-3, 0, 12]), UniPoly([0, -3]))[0]
    assert not strictly_interlace(UniPoly([-1, 0, 1]), UniPoly([-1, 1]))[0]
    assert not strictly_interlace(UniPoly([1, 0, 1]), UniPoly([0, 1]))[0]


def test_verification_suites():
    assert verify_interlacing(12).passed
    assert verify_recursion_identity(12).passed
    assert verify_inversion(10).passed
    assert verify_no_common_cd_root(10).passed
    assert verify_cd_derivative_relation(10).passed
    assert verify_type_one_derivatives(6).passed

    with pytest.raises(PreconditionError):
        verify_interlacing(0)


def test_run_all_suites_is_schedule_independent():
    serial = run_all_suites(4, num_workers=1)
    threaded = run_all_suites(4, num_workers=3)

    assert [report.name for report in serial] == [report.name for report in threaded]
    for left, right in zip(serial, threaded):
        assert left.records == right.records
        assert left.passed

    frame = serial[0].to_frame()
    assert list(frame.columns) == ['suite', 'L', 'passed', 'detail']
    assert list(frame['L']) == [1, 2, 3, 4]


if __name__ == '__main__':
    test_moments()
    test_critical_index_fixtures()
    test_critical_index_matches_moment_scan()
    test_asymptote_polynomials_closed_forms()
    test_directions_of_dipole()
    test_directions_of_equal_pair()
    test_directions_never_overlap()
    test_same_algebraic_number()
    test_strictly_interlace()
    test_verification_suites()
    test_run_all_suites_is_schedule_independent()
