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
from math import isqrt

import pytest
from flint import arb

from chargezero.errors import PreconditionError, SingularPointError
from chargezero.field import (
    Charge,
    ChargeSystem,
    EvalPoint,
    Rectangle,
    eval_balance,
    eval_field,
    eval_kernel,
    eval_kernel_partials,
    implicit_tangent_slopes,
)
from chargezero.field.evaluation import HYPOTHESIS_AXIS, enclose_field, enclose_jacobian
from chargezero.field.interval import bounds, may_vanish, to_arb, working_precision

SEED = 1234
PRECISION = 128

ATTRACTING_PAIR = ChargeSystem.from_lists([0, 1], [4, -1])
EQUAL_PAIR = ChargeSystem.from_lists([1, 3], [1, 1])
OFF_AXIS_TRIPLE = ChargeSystem.from_lists([1, 2, 3], [1, '-1/4', 1])
QUADRUPLE = ChargeSystem.from_lists([1, '5/2', 3, '9/2'], [2, -1, '1/3', -3])

# 1/sqrt(3) to 30 digits, the height of the off-axis zeros of OFF_AXIS_TRIPLE
OFF_AXIS_HEIGHT = Fraction(isqrt(10 ** 60 // 3), 10 ** 30)


def random_point(rng: random.Random) -> EvalPoint:
    x = Fraction(rng.randint(-3000, 6000), 1000)
    y = Fraction(rng.randint(500, 3000), 1000) * rng.choice((-1, 1))
    return EvalPoint(x, y, PRECISION)


def test_charge_system_invariants():
    with pytest.raises(PreconditionError):
        ChargeSystem([])
    with pytest.raises(PreconditionError):
        ChargeSystem.from_lists([1, 1], [1, 2])
    with pytest.raises(PreconditionError):
        Charge(1, 0)

    system, shift = ChargeSystem.normalized([0, 1], [4, -1])
    assert shift == 1
    assert system.positions == [1, 2]
    assert system.is_canonical

    system, shift = ChargeSystem.normalized(['1/2', 3], [1, 1])
    assert shift == 0 and system.positions == [Fraction(1, 2), 3]


def test_eval_field_fixtures():
    value = eval_field(ChargeSystem.from_lists([1], [1]), EvalPoint(5, 0, PRECISION))
    assert value.Y.contains(0)

    value = eval_field(EQUAL_PAIR, EvalPoint(2, 0, PRECISION))
    assert value.X.contains(0) and value.Y.contains(0)

    value = eval_field(ATTRACTING_PAIR, EvalPoint(2, 0, PRECISION))
    assert value.X.contains(0)

    value = eval_field(ATTRACTING_PAIR, EvalPoint(3, 0, PRECISION))
    assert not value.X.contains(0)


def test_eval_field_rejects_charges_and_low_precision():
    with pytest.raises(SingularPointError):
        eval_field(EQUAL_PAIR, EvalPoint(1, 0, PRECISION))
    with pytest.raises(PreconditionError):
        EvalPoint(0, 0, 32)
    with pytest.raises(PreconditionError):
        eval_kernel(EQUAL_PAIR, EvalPoint(0, 1, PRECISION), m=0)


def test_eval_kernel_matches_field():
    rng = random.Random(SEED)

    for _ in range(20):
        pt = random_point(rng)
        field, kernel = eval_field(QUADRUPLE, pt), eval_kernel(QUADRUPLE, pt, m=1)
        assert field.X.overlaps(kernel.X) and field.Y.overlaps(kernel.Y)


def test_eval_kernel_symmetry():
    for m in (1, 2, 3):
        assert eval_kernel(ChargeSystem.from_lists([1], [1]), EvalPoint(4, 0, PRECISION), m).Y.contains(0)
    assert eval_kernel(EQUAL_PAIR, EvalPoint(2, 0, PRECISION), m=2).X.contains(0)


def test_eval_kernel_partials_closed_form():
    rng = random.Random(SEED + 1)

    for _ in range(20):
        pt = random_point(rng)
        partials = eval_kernel_partials(QUADRUPLE, pt, m=2)
        assert partials.dX_dy.overlaps(partials.dY_dx)

    partials = eval_kernel_partials(ChargeSystem.from_lists([1], [3]), EvalPoint(2, 0, PRECISION))
    assert partials.dX_dx.overlaps(arb(-6))


def test_kernel_identity_second_order_convergence():
    """ The y-derivative of X_m matches -(2m+1) y X_{m+1}, and central differences converge quadratically. """
    rng = random.Random(SEED + 2)
    steps = (Fraction(1, 10 ** 5), Fraction(1, 2 * 10 ** 5))

    for m in (1, 2, 3, 4):
        for _ in range(50):
            pt = random_point(rng)
            exact = eval_kernel_partials(QUADRUPLE, pt, m).dX_dy
            with working_precision(PRECISION):
                identity = -(2 * m + 1) * to_arb(pt.y) * eval_kernel(QUADRUPLE, pt, m + 1).X
            assert exact.overlaps(identity)

            errors = list()
            for h in steps:
                upper = eval_kernel(QUADRUPLE, EvalPoint(pt.x, pt.y + h, PRECISION), m).X
                lower = eval_kernel(QUADRUPLE, EvalPoint(pt.x, pt.y - h, PRECISION), m).X
                with working_precision(PRECISION):
                    quotient = (upper - lower) / (2 * to_arb(h))
                errors.append(abs(float(quotient - exact)))

            if errors[0] > 1e-9:
                assert 3.0 < errors[0] / errors[1] < 5.0


def test_divergence_identity():
    rng = random.Random(SEED + 3)

    for _ in range(20):
        pt = random_point(rng)
        trace = eval_kernel_partials(QUADRUPLE, pt).trace
        balance = eval_balance(QUADRUPLE, pt)
        assert trace.overlaps(-balance.inverse_cube_sum)


def test_balance_sums_vanish_off_axis():
    balance = eval_balance(OFF_AXIS_TRIPLE, EvalPoint(2, OFF_AXIS_HEIGHT, PRECISION))
    assert abs(float(balance.inverse_cube_sum)) < 1e-25
    assert abs(float(balance.weighted_position_sum)) < 1e-25


def test_implicit_tangent_slopes_on_axis():
    slopes = implicit_tangent_slopes(EQUAL_PAIR, EvalPoint(2, 0, PRECISION))
    assert slopes.slope_X is None
    assert slopes.slope_Y is not None and slopes.slope_Y.contains(0)
    assert slopes.hypothesis == HYPOTHESIS_AXIS
    assert slopes.product is None


def test_implicit_tangent_slopes_off_axis():
    slopes = implicit_tangent_slopes(OFF_AXIS_TRIPLE, EvalPoint(2, OFF_AXIS_HEIGHT, PRECISION))
    assert slopes.slope_X is None
    assert abs(float(slopes.slope_Y)) < 1e-20
    assert slopes.hypothesis is not None


def test_implicit_tangent_slopes_rejects_non_zero():
    with pytest.raises(PreconditionError):
        implicit_tangent_slopes(EQUAL_PAIR, EvalPoint(5, 1, PRECISION))


def test_amplitude_scaling():
    rng = random.Random(SEED + 4)

    for factor in (Fraction(3), Fraction(-2, 7), Fraction(1, 1000)):
        scaled = QUADRUPLE.scaled(factor)
        for _ in range(10):
            pt = random_point(rng)
            value, image = eval_field(QUADRUPLE, pt), eval_field(scaled, pt)
            with working_precision(PRECISION):
                assert image.X.overlaps(to_arb(factor) * value.X)
                assert image.Y.overlaps(to_arb(factor) * value.Y)

    with pytest.raises(PreconditionError):
        QUADRUPLE.scaled(0)


def test_mirror_symmetry():
    rng = random.Random(SEED + 5)

    for _ in range(20):
        pt = random_point(rng)
        value = eval_field(QUADRUPLE, pt)
        image = eval_field(QUADRUPLE, EvalPoint(pt.x, -pt.y, PRECISION))
        assert image.X.overlaps(value.X)
        assert image.Y.overlaps(-value.Y)


def test_reflection_about_a_point():
    rng = random.Random(SEED + 6)

    for center in (Fraction(0), Fraction(5, 2), Fraction(-1, 3)):
        reflected = QUADRUPLE.reflected(center)
        assert reflected.M == QUADRUPLE.M
        for _ in range(10):
            pt = random_point(rng)
            value = eval_field(QUADRUPLE, pt)
            image = eval_field(reflected, EvalPoint(2 * center - pt.x, pt.y, PRECISION))
            assert image.X.overlaps(-value.X)
            assert image.Y.overlaps(value.Y)

    assert QUADRUPLE.reflected(1).reflected(1).positions == QUADRUPLE.positions


def test_kernel_x_derivative_identity():
    """ dX_m/dx = -2m Y_m / y + (2m+1) y Y_{m+1}, reducing to (2m+1) y Y_{m+1} where Y_m vanishes. """
    rng = random.Random(SEED + 7)

    for m in (1, 2, 3):
        for _ in range(20):
            pt = random_point(rng)
            exact = eval_kernel_partials(QUADRUPLE, pt, m).dX_dx
            current, following = eval_kernel(QUADRUPLE, pt, m), eval_kernel(QUADRUPLE, pt, m + 1)
            with working_precision(PRECISION):
                y = to_arb(pt.y)
                identity = -2 * m * current.Y / y + (2 * m + 1) * y * following.Y
            assert exact.overlaps(identity)

    pt = EvalPoint(2, OFF_AXIS_HEIGHT, PRECISION)
    assert abs(float(eval_field(OFF_AXIS_TRIPLE, pt).Y)) < 1e-25
    exact = eval_kernel_partials(OFF_AXIS_TRIPLE, pt).dX_dx
    reduced = 3 * float(pt.y) * float(eval_kernel(OFF_AXIS_TRIPLE, pt, m=2).Y)
    assert abs(float(exact) - reduced) < 1e-12 * max(1.0, abs(reduced))


def test_bounds_keep_precision():
    with working_precision(4 * PRECISION):
        third = to_arb(Fraction(1, 3))

    lo, hi = bounds(third)
    assert lo <= Fraction(1, 3) <= hi
    assert hi - lo < Fraction(1, 2 ** (4 * PRECISION - 8))


def test_box_enclosures():
    box = Rectangle('199/100', '201/100', '-1/100', '1/100')
    enclosure = enclose_field(ATTRACTING_PAIR, box, PRECISION)
    assert may_vanish(enclosure.X) and may_vanish(enclosure.Y)

    far = Rectangle(5, 6, 1, 2)
    enclosure = enclose_field(ATTRACTING_PAIR, far, PRECISION)
    assert not may_vanish(enclosure.S)

    assert enclose_field(ATTRACTING_PAIR, Rectangle(-1, 1, -1, 1), PRECISION) is None
    assert enclose_jacobian(ATTRACTING_PAIR, Rectangle(-1, 1, -1, 1), PRECISION) is None

    jacobian = enclose_jacobian(QUADRUPLE, far, PRECISION)
    point = eval_kernel_partials(QUADRUPLE, EvalPoint('11/2', '3/2', PRECISION))
    assert jacobian.dX_dx.overlaps(point.dX_dx) and jacobian.dY_dy.overlaps(point.dY_dy)


def test_rectangle_geometry():
    box = Rectangle(0, 2, 1, 3)
    assert box.size == 2 and box.center == (1, 2)
    assert [part.center for part in box.split()] == [
        (Fraction(1, 2), Fraction(3, 2)), (Fraction(3, 2), Fraction(3, 2)),
        (Fraction(1, 2), Fraction(5, 2)), (Fraction(3, 2), Fraction(5, 2)),
    ]
    assert box.mirrored() == Rectangle(0, 2, -3, -1)
    assert box.gap(Rectangle(3, 4, 1, 2)) == 1
    assert box.intersection(Rectangle(5, 6, 1, 2)) is None
    assert Rectangle.square(3).contains(box.translated(-1))


if __name__ == '__main__':
    test_charge_system_invariants()
    test_eval_field_fixtures()
    test_eval_field_rejects_charges_and_low_precision()
    test_eval_kernel_matches_field()
    test_eval_kernel_symmetry()
    test_eval_kernel_partials_closed_form()
    test_kernel_identity_second_order_convergence()
    test_divergence_identity()
    test_balance_sums_vanish_off_axis()
    test_implicit_tangent_slopes_on_axis()
    test_implicit_tangent_slopes_off_axis()
    test_implicit_tangent_slopes_rejects_non_zero()
    test_amplitude_scaling()
    test_mirror_symmetry()
    test_reflection_about_a_point()
    test_kernel_x_derivative_identity()
    test_bounds_keep_precision()
    test_box_enclosures()
    test_rectangle_geometry()
