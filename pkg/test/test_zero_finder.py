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
from dataclasses import replace
from fractions import Fraction
from math import isqrt

import numpy as np
import pytest

from chargezero.errors import PreconditionError, SizeLimitError
from chargezero.field import ChargeSystem, EvalPoint, Rectangle, implicit_tangent_slopes
from chargezero.zeros import (
    ZeroSearchConfig,
    axis_zeros,
    count_bound,
    count_bound_check,
    exhaustive_resultant_candidates,
    find_zeros,
    krawczyk,
    merge_duplicates,
    offaxis_zeros,
    orthogonality_diagnostics,
    unboundedness_obstruction,
)
from chargezero.zeros.diagnostics import DEGENERATE, ORTHOGONAL, ORTHOGONAL_AXIS
from chargezero.zeros.finder import CERTIFIED_WITHIN_BOX, HEURISTIC_BOX
from chargezero.zeros.search import AXIS, EMPTY, OFF_AXIS, UNIQUE, CertifiedZero

SEED = 42
PRECISION = 128

ATTRACTING_PAIR = ChargeSystem.from_lists([0, 1], [4, -1])
EQUAL_PAIR = ChargeSystem.from_lists([1, 3], [1, 1])
SINGLE_CHARGE = ChargeSystem.from_lists([2], [5])
SYMMETRIC_TRIPLE = ChargeSystem.from_lists([1, 2, 3], [1, '-1/4', 1])
ASYMMETRIC_TRIPLE = ChargeSystem.from_lists([1, 2, 3], [1, '-1/4', 2])

SMALL_BOX = ZeroSearchConfig(precision=PRECISION, tolerance="1/10000000000", box_radius="4", resultant_max_charges=2)

# 1/sqrt(3) to 40 digits, the height of the off-axis zeros of SYMMETRIC_TRIPLE
TRIPLE_HEIGHT = Fraction(isqrt(10 ** 80 // 3), 10 ** 40)


def field_grid(system: ChargeSystem, xs: np.ndarray, ys: np.ndarray):
    """ X and S = sum a_j / r_j**3 in floating point, indexed [i, j] for (xs[i], ys[j]). """
    gx, gy = np.meshgrid(xs, ys, indexing='ij')
    X, S = np.zeros_like(gx), np.zeros_like(gx)
    for charge in system:
        dx = gx - float(charge.position)
        weight = float(charge.amplitude) / (dx * dx + gy * gy) ** 1.5
        X += dx * weight
        S += weight
    return X, S


def sign_change_cells(system: ChargeSystem, x_lo, x_hi, y_lo, y_hi, n: int):
    xs, ys = np.linspace(x_lo, x_hi, n + 1), np.linspace(y_lo, y_hi, n + 1)
    X, S = field_grid(system, xs, ys)

    def changes(values):
        corners = np.stack([values[:-1, :-1], values[1:, :-1], values[1:, 1:], values[:-1, 1:]]) > 0
        return corners.any(axis=0) & ~corners.all(axis=0)

    cells = np.argwhere(changes(X) & changes(S))
    return [(xs[i], xs[i + 1], ys[j], ys[j + 1]) for i, j in cells]


def brute_force_offaxis_cells(system: ChargeSystem, radius: float, n: int = 400, depth: int = 3):
    """ Upper half-plane cells where both X and S change sign, refined 20-fold ``depth`` times. """
    cells = sign_change_cells(system, -radius, radius, 1e-3, radius, n)
    for _ in range(depth):
        cells = [refined for cell in cells for refined in sign_change_cells(system, *cell, 20)]
    return cells


def finite_difference_slopes(system: ChargeSystem, x: float, y: float, h: float = 1e-6):
    def F(px, py):
        X, S = field_grid(system, np.array([px]), np.array([py]))
        return X[0, 0], py * S[0, 0]

    (Xr, Yr), (Xl, Yl) = F(x + h, y), F(x - h, y)
    (Xu, Yu), (Xd, Yd) = F(x, y + h), F(x, y - h)
    X_x, Y_x = (Xr - Xl) / (2 * h), (Yr - Yl) / (2 * h)
    X_y, Y_y = (Xu - Xd) / (2 * h), (Yu - Yd) / (2 * h)
    return -X_x / X_y, -Y_x / Y_y


def test_count_bound():
    assert count_bound(1) == 36
    assert count_bound(2) == 576
    assert count_bound(3) == 5184


def test_unboundedness_obstruction():
    assert unboundedness_obstruction(ATTRACTING_PAIR).startswith('mu_0')
    assert unboundedness_obstruction(ChargeSystem.from_lists([1, 2], [1, -1])).startswith('mu_1')
    assert unboundedness_obstruction(ChargeSystem.from_lists([1, 2, 3], [1, -2, 1])) is None


def test_axis_zeros_attracting_pair():
    zeros = axis_zeros(ATTRACTING_PAIR, precision=PRECISION)
    assert len(zeros) == 1
    assert zeros[0].box.contains_point(Fraction(2), Fraction(0))
    assert zeros[0].kind == AXIS and zeros[0].method == 'sturm'


def test_axis_zeros_equal_pair_is_exact():
    zeros = axis_zeros(EQUAL_PAIR, precision=PRECISION)
    assert len(zeros) == 1
    assert zeros[0].box == Rectangle.point(Fraction(2), Fraction(0))


def test_axis_zeros_irrational_root_is_refined():
    system = ChargeSystem.from_lists([1, 2], [2, 1])
    zeros = axis_zeros(system, tolerance=Fraction(1, 10 ** 12), precision=PRECISION)
    assert len(zeros) == 1
    # 2 / (x - 1)**2 = 1 / (2 - x)**2 gives x = 3 - sqrt(2)
    assert zeros[0].box.width < Fraction(1, 10 ** 12)
    assert abs(float(zeros[0].center[0]) - (3 - 2 ** 0.5)) < 1e-12


def test_krawczyk_verdicts():
    height = Fraction(57735, 100000)
    around = Rectangle(Fraction(199, 100), Fraction(201, 100), height - Fraction(1, 100), height + Fraction(1, 100))
    assert krawczyk(SYMMETRIC_TRIPLE, around, PRECISION).verdict == UNIQUE
    assert krawczyk(SYMMETRIC_TRIPLE, Rectangle(5, Fraction(51, 10), 3, Fraction(31, 10)), PRECISION).verdict == EMPTY


def test_offaxis_search_attracting_pair_is_empty():
    zeros = offaxis_zeros(ATTRACTING_PAIR, Rectangle.square(8), tolerance=Fraction(1, 10 ** 10), precision=PRECISION)
    assert zeros == []
    assert brute_force_offaxis_cells(ATTRACTING_PAIR, 8.0) == []


def test_offaxis_search_rejects_coarse_tolerance():
    with pytest.raises(PreconditionError):
        offaxis_zeros(ATTRACTING_PAIR, Rectangle.square(1), tolerance=Fraction(3))
    assert offaxis_zeros(ATTRACTING_PAIR, Rectangle(0, 1, 0, 0)) == []


def test_offaxis_search_symmetric_triple():
    zeros = offaxis_zeros(SYMMETRIC_TRIPLE, Rectangle.square(4), tolerance=Fraction(1, 10 ** 10), precision=PRECISION)
    assert len(zeros) == 2
    assert all(zero.kind == OFF_AXIS and zero.box.size < Fraction(1, 10 ** 10) for zero in zeros)

    lower, upper = zeros[0].approximate(), zeros[1].approximate()
    height = 3 ** -0.5
    assert abs(lower[0] - 2) < 1e-10 and abs(lower[1] + height) < 1e-10
    assert abs(upper[0] - 2) < 1e-10 and abs(upper[1] - height) < 1e-10


def test_resultant_candidates():
    candidates = exhaustive_resultant_candidates(ATTRACTING_PAIR, precision=PRECISION)
    assert candidates.complete
    assert candidates.bezout > 0
    assert any(box.contains_point(Fraction(2), Fraction(0)) for box in candidates.candidates)
    assert candidates.search_box.contains_point(Fraction(2), Fraction(0))

    with pytest.raises(SizeLimitError):
        exhaustive_resultant_candidates(SYMMETRIC_TRIPLE, max_charges=2)
    with pytest.raises(SizeLimitError):
        exhaustive_resultant_candidates(ChargeSystem.from_lists(range(1, 6), [1, -1, 1, -1, 1]))
    with pytest.raises(PreconditionError):
        exhaustive_resultant_candidates(ATTRACTING_PAIR, max_charges=5)
    with pytest.raises(PreconditionError):
        find_zeros(ATTRACTING_PAIR, replace(SMALL_BOX, resultant_max_charges=0))


def test_find_zeros_attracting_pair():
    config = ZeroSearchConfig(precision=PRECISION, tolerance="1/100000000000")
    report = find_zeros(ATTRACTING_PAIR, config)

    assert report.observed_count == 1
    zero = report.zeros[0]
    assert zero.box.contains_point(Fraction(2), Fraction(0))
    assert zero.box.width < Fraction(1, 10 ** 10)
    assert report.completeness == CERTIFIED_WITHIN_BOX
    assert report.containment is True
    assert count_bound_check(report)
    assert report.moment_obstruction is not None


def test_find_zeros_equal_pair():
    report = find_zeros(EQUAL_PAIR, ZeroSearchConfig(precision=PRECISION))
    assert [zero.box for zero in report.zeros] == [Rectangle.point(Fraction(2), Fraction(0))]
    assert report.orthogonality[0].status == ORTHOGONAL_AXIS


def test_find_zeros_single_charge():
    report = find_zeros(SINGLE_CHARGE, ZeroSearchConfig(precision=PRECISION))
    assert report.zeros == []
    assert report.observed_count == 0 <= report.count_bound


def test_find_zeros_heuristic_box_above_resultant_limit():
    report = find_zeros(SYMMETRIC_TRIPLE, SMALL_BOX)
    assert report.completeness == HEURISTIC_BOX
    assert report.candidates is None
    assert sum(1 for zero in report.zeros if zero.kind == OFF_AXIS) == 2

    statuses = {record.status for record in report.orthogonality if record.zero.kind == OFF_AXIS}
    assert statuses <= {ORTHOGONAL, ORTHOGONAL_AXIS}


def test_orthogonality_at_asymmetric_zeros():
    report = find_zeros(ASYMMETRIC_TRIPLE, SMALL_BOX)
    records = [record for record in report.orthogonality if record.zero.kind == OFF_AXIS]
    assert len(records) == 2

    for record in records:
        assert record.status == ORTHOGONAL
        assert abs(record.product + 1) < 1e-6
        assert abs(record.trace + record.inverse_cube_sum) < 1e-12
        assert abs(record.inverse_cube_sum) < 1e-12 and abs(record.weighted_position_sum) < 1e-12

        x, y = record.zero.approximate()
        slope_X, slope_Y = finite_difference_slopes(ASYMMETRIC_TRIPLE, x, y)
        assert abs(slope_X - record.slope_X) < 1e-4 * max(1.0, abs(slope_X))
        assert abs(slope_Y - record.slope_Y) < 1e-4 * max(1.0, abs(slope_Y))

    assert abs(records[0].zero.approximate()[1] + records[1].zero.approximate()[1]) < 1e-9


def random_system(rng: random.Random, M: int) -> ChargeSystem:
    """
    Two charges with random amplitudes, or a positive-negative-positive triple with a weak middle charge,
    which always has a pair of zeros off the axis, plus a faint fourth charge when ``M = 4``.
    """
    if M == 2:
        positions = sorted(rng.sample(range(1, 6), 2))
        amplitudes = [Fraction(rng.choice((-1, 1)) * rng.randint(1, 8), rng.randint(1, 4)) for _ in range(2)]
        return ChargeSystem.from_lists(positions, amplitudes)

    left, right = Fraction(rng.randint(10, 15), 10), Fraction(rng.randint(10, 15), 10)
    positions = [3 - left, 3, 3 + right]
    amplitudes = [Fraction(rng.randint(8, 12), 10), -Fraction(rng.randint(20, 40), 100), Fraction(rng.randint(8, 12), 10)]

    if M == 4:
        positions.append(4 + right)
        amplitudes.append(Fraction(rng.choice((-1, 1)), 40))

    return ChargeSystem.from_lists(positions, amplitudes)


def test_orthogonality_over_random_systems():
    rng = random.Random(SEED)
    config = replace(SMALL_BOX, box_radius="6", max_boxes=20000, containment=False)
    off_axis_total = 0

    for M in [2] * 4 + [3] * 8 + [4] * 8:
        system = random_system(rng, M)
        report = find_zeros(system, config)
        off_axis = [record for record in report.orthogonality if record.zero.kind == OFF_AXIS]

        if M == 2:
            assert off_axis == []
            assert all(record.status == ORTHOGONAL_AXIS for record in report.orthogonality)
            continue

        assert len(off_axis) >= 2 and len(off_axis) % 2 == 0
        off_axis_total += len(off_axis)

        for record in off_axis:
            assert record.zero.unique
            assert record.status in (ORTHOGONAL, ORTHOGONAL_AXIS)
            if record.product is not None:
                assert abs(record.product + 1) < 1e-6

            x, y = record.zero.center
            slopes = implicit_tangent_slopes(system, EvalPoint(x, y, PRECISION))
            slope_X, slope_Y = finite_difference_slopes(system, float(x), float(y))
            if slopes.slope_X is not None:
                assert abs(slope_X - float(slopes.slope_X)) < 1e-4 * max(1.0, abs(slope_X))
            if slopes.slope_Y is not None:
                assert abs(slope_Y - float(slopes.slope_Y)) < 1e-4 * max(1.0, abs(slope_Y))

    assert off_axis_total >= 32


def test_krawczyk_certifies_boxes_below_double_precision():
    eps = Fraction(1, 10 ** 20)
    box = Rectangle(2 - eps, 2 + eps, TRIPLE_HEIGHT - eps, TRIPLE_HEIGHT + eps)

    result = krawczyk(SYMMETRIC_TRIPLE, box, PRECISION)
    assert result.verdict == UNIQUE
    assert result.image.size < Fraction(1, 10 ** 30)
    assert box.contains(result.image)


def test_merge_duplicates_joins_boxes_of_one_zero():
    eps = Fraction(1, 10 ** 6)
    first = Rectangle(2 - eps, 2 + eps, TRIPLE_HEIGHT - eps, TRIPLE_HEIGHT + eps)
    second = first.translated(eps / 2)
    zeros = [CertifiedZero(first, OFF_AXIS), CertifiedZero(second, OFF_AXIS)]

    merged = merge_duplicates(SYMMETRIC_TRIPLE, zeros, Fraction(1, 10 ** 10), 4 * PRECISION)
    assert len(merged) == 1
    assert merged[0].unique
    assert merged[0].box == first.intersection(second)


def test_merge_duplicates_keeps_distinct_zeros():
    eps = Fraction(1, 10 ** 6)
    upper = Rectangle(2 - eps, 2 + eps, TRIPLE_HEIGHT - eps, TRIPLE_HEIGHT + eps)
    zeros = [CertifiedZero(upper, OFF_AXIS), CertifiedZero(upper.mirrored(), OFF_AXIS)]

    merged = merge_duplicates(SYMMETRIC_TRIPLE, zeros, Fraction(2), 4 * PRECISION)
    assert len(merged) == 2
    assert all(zero.unique for zero in merged)


def test_merge_duplicates_flags_unseparated_boxes():
    left = Rectangle(Fraction(3, 2), Fraction(5, 2), Fraction(3, 10), Fraction(9, 10))
    right = Rectangle(Fraction(19, 10), Fraction(29, 10), Fraction(3, 10), Fraction(9, 10))
    zeros = [CertifiedZero(left, OFF_AXIS), CertifiedZero(right, OFF_AXIS)]

    merged = merge_duplicates(SYMMETRIC_TRIPLE, zeros, Fraction(1, 10 ** 10), 4 * PRECISION)
    assert len(merged) == 1
    assert not merged[0].unique
    assert merged[0].box == left.hull(right)

    records = orthogonality_diagnostics(SYMMETRIC_TRIPLE, merged, PRECISION)
    assert records[0].status == DEGENERATE
    assert 'more than one zero' in records[0].message


@pytest.mark.slow
def test_resultant_route_for_three_charges():
    config = ZeroSearchConfig(precision=PRECISION, tolerance="1/10000000000", containment=False)
    report = find_zeros(SYMMETRIC_TRIPLE, config)

    assert report.candidates is not None and report.candidates.complete
    assert report.completeness == CERTIFIED_WITHIN_BOX
    assert sum(1 for zero in report.zeros if zero.kind == OFF_AXIS) == 2

    height = 3 ** -0.5
    for box in report.candidates.candidates:
        x, y = (float(c) for c in box.center)
        if abs(x - 2) < 1e-5 and abs(y - height) < 1e-5:
            break
    else:
        pytest.fail("no resultant candidate near (2, 1/sqrt(3))")


if __name__ == '__main__':
    test_count_bound()
    test_unboundedness_obstruction()
    test_axis_zeros_attracting_pair()
    test_axis_zeros_equal_pair_is_exact()
    test_axis_zeros_irrational_root_is_refined()
    test_krawczyk_verdicts()
    test_krawczyk_certifies_boxes_below_double_precision()
    test_offaxis_search_attracting_pair_is_empty()
    test_offaxis_search_rejects_coarse_tolerance()
    test_offaxis_search_symmetric_triple()
    test_merge_duplicates_joins_boxes_of_one_zero()
    test_merge_duplicates_keeps_distinct_zeros()
    test_merge_duplicates_flags_unseparated_boxes()
    test_resultant_candidates()
    test_find_zeros_attracting_pair()
    test_find_zeros_equal_pair()
    test_find_zeros_single_charge()
    test_find_zeros_heuristic_box_above_resultant_limit()
    test_orthogonality_at_asymmetric_zeros()
    test_orthogonality_over_random_systems()
