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

from contextlib import contextmanager
from fractions import Fraction
from typing import Iterator, Tuple

from flint import arb, ctx

from chargezero.exact.polynomial import BiPoly
from chargezero.field.rectangle import Rectangle


@contextmanager
def working_precision(bits: int) -> Iterator[None]:
    """ Sets ``flint.ctx.prec`` for the enclosed block. The flint context is process-global. """
    saved = ctx.prec
    ctx.prec = bits
    try:
        yield
    finally:
        ctx.prec = saved


def to_arb(value: Fraction) -> arb:
    """ Ball enclosing a rational, rounded at the current precision. """
    value = Fraction(value)
    if value.denominator == 1:
        return arb(value.numerator)
    return arb(value.numerator) / value.denominator


def ball(lo: Fraction, hi: Fraction) -> arb:
    """ Ball enclosing the closed interval ``[lo, hi]``. """
    if lo == hi:
        return to_arb(lo)
    return to_arb(lo).union(to_arb(hi))


def exact_to_fraction(value: arb) -> Fraction:
    """ Converts an exact (zero radius) ball, such as ``x.mid()`` or ``x.rad()``, into a Fraction. """
    mantissa, exponent = value.man_exp()
    return Fraction(int(mantissa)) * Fraction(2) ** int(exponent)


def bounds(value: arb) -> Tuple[Fraction, Fraction]:
    """
    Exact rational endpoints ``mid -+ rad`` of a finite ball. Midpoint and radius are read exactly, so the
    result does not depend on the working precision in effect when it is called.
    """
    if not value.is_finite():
        raise ValueError("Unsupported ball : {0}".format(value))
    mid, rad = exact_to_fraction(value.mid()), exact_to_fraction(value.rad())
    return mid - rad, mid + rad


def may_vanish(value: arb) -> bool:
    """ False only when the ball certifiably excludes zero. """
    return not value.is_finite() or value.contains(0)


def magnitude(value: arb) -> Fraction:
    """ Rational upper bound of ``|value|``. """
    lo, hi = bounds(value)
    return max(abs(lo), abs(hi))


def enclose_polynomial(poly: BiPoly, box: Rectangle, precision: int) -> arb:
    """ Ball enclosing the range of a bivariate polynomial over a rectangle. """
    with working_precision(precision):
        x, y = ball(box.x_lo, box.x_hi), ball(box.y_lo, box.y_hi)
        x_powers, y_powers = {0: arb(1)}, {0: arb(1)}
        total = arb(0)

        for (i, j), coefficient in poly.terms.items():
            if i not in x_powers:
                x_powers[i] = x ** i
            if j not in y_powers:
                y_powers[j] = y ** j
            total += to_arb(coefficient) * x_powers[i] * y_powers[j]

    return total
