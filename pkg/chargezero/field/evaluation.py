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
from typing import Optional, Tuple

from flint import arb

from chargezero.errors import (
    DegenerateJacobianError,
    PreconditionError,
    SingularPointError,
)
from chargezero.field.interval import (
    ball,
    magnitude,
    to_arb,
    working_precision,
)
from chargezero.field.rectangle import Rectangle
from chargezero.field.system import ChargeSystem
from chargezero.utils import MIN_PRECISION, default_precision, parse_rational

GUARD_BITS = 32

HYPOTHESIS_AXIS = 'on-axis'
HYPOTHESIS_NEXT_X = 'next-kernel-X-nonzero'
HYPOTHESIS_NEXT_Y = 'next-kernel-Y-nonzero'


@dataclass(frozen=True)
class EvalPoint:
    """
    Evaluation point with its working precision.

    Args:
        x (Fraction): abscissa, exact
        y (Fraction): ordinate, exact
        precision (int): working precision in bits (at least 64)
    """
    x: Fraction
    y: Fraction
    precision: int = field(default_factory=default_precision)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'x', parse_rational(self.x))
        object.__setattr__(self, 'y', parse_rational(self.y))

        if self.precision < MIN_PRECISION:
            raise PreconditionError(f"precision should be at least {MIN_PRECISION} bits, got {self.precision}")


@dataclass(frozen=True)
class FieldValue:
    """ Rigorous enclosures of the two field components (or of a kernel pair). """
    X: arb
    Y: arb
    precision: int


@dataclass(frozen=True)
class KernelPartials:
    dX_dx: arb
    dX_dy: arb
    dY_dx: arb
    dY_dy: arb

    @property
    def trace(self) -> arb:
        return self.dX_dx + self.dY_dy


@dataclass(frozen=True)
class BalanceSums:
    """ ``inverse_cube_sum = sum a_j / r_j**3`` and ``weighted_position_sum = sum a_j x_j / r_j**3``. """
    inverse_cube_sum: arb
    weighted_position_sum: arb


@dataclass(frozen=True)
class TangentSlopes:
    """
    Slopes of the ``{X = 0}`` and ``{Y = 0}`` branches through a zero. ``None`` marks a vertical branch.
    ``hypothesis`` names which next-order kernel keeps the implicit function theorem applicable.
    """
    slope_X: Optional[arb]
    slope_Y: Optional[arb]
    hypothesis: Optional[str]

    @property
    def product(self) -> Optional[arb]:
        if self.slope_X is None or self.slope_Y is None:
            return None
        return self.slope_X * self.slope_Y


@dataclass(frozen=True)
class FieldEnclosure:
    """ Enclosures of ``X``, ``Y`` and of ``S = sum a_j / r_j**3`` (so ``Y = y * S``) over a box. """
    X: arb
    Y: arb
    S: arb


def _check_order(m: int) -> None:
    if m < 1:
        raise PreconditionError(f"kernel order should be a positive integer, got {m}")


def _check_regular(system: ChargeSystem, pt: EvalPoint) -> None:
    if system.is_charge_point(pt.x, pt.y):
        raise SingularPointError(f"the field is undefined at the charge ({pt.x}, {pt.y})")


def _radical_power(rho: Fraction, odd: int) -> arb:
    """ ``rho ** (odd / 2)`` for ``rho > 0``. """
    r = to_arb(rho)
    return r ** (odd // 2) * r.sqrt()


def eval_kernel(system: ChargeSystem, pt: EvalPoint, m: int = 1) -> FieldValue:
    """
    Generalized kernel pair ``X_m = sum a_j (x - x_j) / r_j**(2m+1)``, ``Y_m = sum a_j y / r_j**(2m+1)``.
    The order ``m = 1`` is the field itself.
    """
    _check_order(m)
    _check_regular(system, pt)

    with working_precision(pt.precision + GUARD_BITS):
        y = to_arb(pt.y)
        X, Y = arb(0), arb(0)

        for charge in system:
            dx = pt.x - charge.position
            rho = dx * dx + pt.y * pt.y
            weight = to_arb(charge.amplitude) / _radical_power(rho, 2 * m + 1)
            X += to_arb(dx) * weight
            Y += y * weight

    return FieldValue(X=X, Y=Y, precision=pt.precision)


def eval_field(system: ChargeSystem, pt: EvalPoint) -> FieldValue:
    return eval_kernel(system, pt, m=1)


def eval_kernel_partials(system: ChargeSystem, pt: EvalPoint, m: int = 1) -> KernelPartials:
    """ Closed-form first partials of ``(X_m, Y_m)``; the two mixed partials coincide. """
    _check_order(m)
    _check_regular(system, pt)
    k = 2 * m + 1

    with working_precision(pt.precision + GUARD_BITS):
        dX_dx, cross, dY_dy = arb(0), arb(0), arb(0)

        for charge in system:
            dx = pt.x - charge.position
            rho = dx * dx + pt.y * pt.y
            weight = to_arb(charge.amplitude) / _radical_power(rho, 2 * m + 3)
            dX_dx += to_arb(rho - k * dx * dx) * weight
            cross += to_arb(-k * pt.y * dx) * weight
            dY_dy += to_arb(rho - k * pt.y * pt.y) * weight

    return KernelPartials(dX_dx=dX_dx, dX_dy=cross, dY_dx=cross, dY_dy=dY_dy)


def eval_balance(system: ChargeSystem, pt: EvalPoint) -> BalanceSums:
    """ The two sums that must vanish at a zero off the axis, since ``Y = y*S0`` and ``X = x*S0 - S1``. """
    _check_regular(system, pt)

    with working_precision(pt.precision + GUARD_BITS):
        s0, s1 = arb(0), arb(0)

        for charge in system:
            dx = pt.x - charge.position
            weight = to_arb(charge.amplitude) / _radical_power(dx * dx + pt.y * pt.y, 3)
            s0 += weight
            s1 += to_arb(charge.position) * weight

    return BalanceSums(inverse_cube_sum=s0, weighted_position_sum=s1)


def _branch_slope(d_dx: arb, d_dy: arb, tolerance: Fraction, component: str) -> Optional[arb]:
    if magnitude(d_dy) < tolerance:
        if magnitude(d_dx) < tolerance:
            raise DegenerateJacobianError(f"both partials of {component} vanish within {float(tolerance):.3e}")
        return None
    return -d_dx / d_dy


def implicit_tangent_slopes(
        system: ChargeSystem,
        pt: EvalPoint,
        tolerance: Optional[Fraction] = None,
) -> TangentSlopes:
    """
    Slopes ``-X_x / X_y`` and ``-Y_x / Y_y`` of the two zero-set branches through a zero of the field.

    Args:
        system (ChargeSystem): charges
        pt (EvalPoint): a zero of the field
        tolerance (Fraction): "is zero" threshold, defaults to ``2 ** -(precision / 2)``

    Returns:
        slopes (TangentSlopes): branch slopes, ``None`` for a vertical branch
    """
    tolerance = Fraction(1, 2 ** (pt.precision // 2)) if tolerance is None else Fraction(tolerance)
    value = eval_field(system, pt)

    if magnitude(value.X) >= tolerance or magnitude(value.Y) >= tolerance:
        raise PreconditionError(f"({float(pt.x)}, {float(pt.y)}) is not a zero of the field "
                                f"(X ~ {float(value.X):.3e}, Y ~ {float(value.Y):.3e})")

    partials = eval_kernel_partials(system, pt, m=1)

    with working_precision(pt.precision + GUARD_BITS):
        slope_X = _branch_slope(partials.dX_dx, partials.dX_dy, tolerance, 'X')
        slope_Y = _branch_slope(partials.dY_dx, partials.dY_dy, tolerance, 'Y')

    if pt.y == 0:
        hypothesis = HYPOTHESIS_AXIS
    else:
        following = eval_kernel(system, pt, m=2)
        if magnitude(following.X) >= tolerance:
            hypothesis = HYPOTHESIS_NEXT_X
        elif magnitude(following.Y) >= tolerance:
            hypothesis = HYPOTHESIS_NEXT_Y
        else:
            hypothesis = None

    return TangentSlopes(slope_X=slope_X, slope_Y=slope_Y, hypothesis=hypothesis)


def _square_range(lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    if lo >= 0:
        return lo * lo, hi * hi
    if hi <= 0:
        return hi * hi, lo * lo
    return Fraction(0), max(lo * lo, hi * hi)


def _product_range(a_lo: Fraction, a_hi: Fraction, b_lo: Fraction, b_hi: Fraction) -> Tuple[Fraction, Fraction]:
    corners = (a_lo * b_lo, a_lo * b_hi, a_hi * b_lo, a_hi * b_hi)
    return min(corners), max(corners)


def _inverse_radical(rho_lo: Fraction, rho_hi: Fraction, odd: int) -> arb:
    """ Ball holding ``rho ** (-odd / 2)`` for every ``rho`` in ``[rho_lo, rho_hi]``, ``rho_lo > 0``. """
    smallest = 1 / _radical_power(rho_hi, odd)
    if rho_lo == rho_hi:
        return smallest
    return smallest.union(1 / _radical_power(rho_lo, odd))


def _geometry(box: Rectangle, position: Fraction):
    dx_lo, dx_hi = box.x_lo - position, box.x_hi - position
    dx2_lo, dx2_hi = _square_range(dx_lo, dx_hi)
    y2_lo, y2_hi = _square_range(box.y_lo, box.y_hi)
    return dx_lo, dx_hi, (dx2_lo, dx2_hi), (y2_lo, y2_hi), (dx2_lo + y2_lo, dx2_hi + y2_hi)


def enclose_field(system: ChargeSystem, box: Rectangle, precision: int) -> Optional[FieldEnclosure]:
    """
    Interval enclosure of ``(X, Y)`` over a rectangle. Distances to each charge are bounded exactly
    in rationals before any rounding. Returns ``None`` when the rectangle touches a charge.
    """
    with working_precision(precision):
        y = ball(box.y_lo, box.y_hi)
        X, S = arb(0), arb(0)

        for charge in system:
            dx_lo, dx_hi, _, _, (rho_lo, rho_hi) = _geometry(box, charge.position)
            if rho_lo == 0:
                return None
            weight = to_arb(charge.amplitude) * _inverse_radical(rho_lo, rho_hi, 3)
            X += ball(dx_lo, dx_hi) * weight
            S += weight

        return FieldEnclosure(X=X, Y=y * S, S=S)


def enclose_jacobian(system: ChargeSystem, box: Rectangle, precision: int) -> Optional[KernelPartials]:
    """ Interval enclosure of the field Jacobian over a rectangle, ``None`` when it touches a charge. """
    with working_precision(precision):
        dX_dx, cross, dY_dy = arb(0), arb(0), arb(0)

        for charge in system:
            dx_lo, dx_hi, (dx2_lo, dx2_hi), (y2_lo, y2_hi), (rho_lo, rho_hi) = _geometry(box, charge.position)
            if rho_lo == 0:
                return None
            weight = to_arb(charge.amplitude) * _inverse_radical(rho_lo, rho_hi, 5)
            xy_lo, xy_hi = _product_range(dx_lo, dx_hi, box.y_lo, box.y_hi)

            # rho - 3 dx^2 = y^2 - 2 dx^2 and rho - 3 y^2 = dx^2 - 2 y^2
            dX_dx += ball(y2_lo - 2 * dx2_hi, y2_hi - 2 * dx2_lo) * weight
            dY_dy += ball(dx2_lo - 2 * y2_hi, dx2_hi - 2 * y2_lo) * weight
            cross += ball(-3 * xy_hi, -3 * xy_lo) * weight

        return KernelPartials(dX_dx=dX_dx, dX_dy=cross, dY_dx=cross, dY_dy=dY_dy)
