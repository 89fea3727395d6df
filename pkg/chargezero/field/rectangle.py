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

from chargezero.utils import RationalLike, format_rational, parse_rational


@dataclass(frozen=True)
class Rectangle:
    """ Closed rational rectangle ``[x_lo, x_hi] x [y_lo, y_hi]``; degenerate sides are allowed. """
    x_lo: Fraction
    x_hi: Fraction
    y_lo: Fraction
    y_hi: Fraction

    def __post_init__(self) -> None:
        for name in ('x_lo', 'x_hi', 'y_lo', 'y_hi'):
            object.__setattr__(self, name, parse_rational(getattr(self, name)))
        assert self.x_lo <= self.x_hi and self.y_lo <= self.y_hi, f"inverted rectangle {self}"

    @classmethod
    def square(cls, radius: RationalLike) -> 'Rectangle':
        radius = parse_rational(radius)
        return cls(-radius, radius, -radius, radius)

    @classmethod
    def point(cls, x: Fraction, y: Fraction) -> 'Rectangle':
        return cls(x, x, y, y)

    @property
    def width(self) -> Fraction:
        return self.x_hi - self.x_lo

    @property
    def height(self) -> Fraction:
        return self.y_hi - self.y_lo

    @property
    def size(self) -> Fraction:
        """ Longest side. """
        return max(self.width, self.height)

    @property
    def has_area(self) -> bool:
        return self.width > 0 and self.height > 0

    @property
    def center(self) -> Tuple[Fraction, Fraction]:
        return (self.x_lo + self.x_hi) / 2, (self.y_lo + self.y_hi) / 2

    def split(self) -> List['Rectangle']:
        """ Quadrisection, ordered lower-left, lower-right, upper-left, upper-right. """
        x_mid, y_mid = self.center
        return [
            Rectangle(self.x_lo, x_mid, self.y_lo, y_mid),
            Rectangle(x_mid, self.x_hi, self.y_lo, y_mid),
            Rectangle(self.x_lo, x_mid, y_mid, self.y_hi),
            Rectangle(x_mid, self.x_hi, y_mid, self.y_hi),
        ]

    def inflated(self, fraction: Fraction) -> 'Rectangle':
        dx, dy = self.width * fraction, self.height * fraction
        return Rectangle(self.x_lo - dx, self.x_hi + dx, self.y_lo - dy, self.y_hi + dy)

    def mirrored(self) -> 'Rectangle':
        """ Image under ``y -> -y``. """
        return Rectangle(self.x_lo, self.x_hi, -self.y_hi, -self.y_lo)

    def translated(self, dx: Fraction) -> 'Rectangle':
        return Rectangle(self.x_lo + dx, self.x_hi + dx, self.y_lo, self.y_hi)

    def contains_point(self, x: Fraction, y: Fraction) -> bool:
        return self.x_lo <= x <= self.x_hi and self.y_lo <= y <= self.y_hi

    def contains(self, other: 'Rectangle') -> bool:
        return (self.x_lo <= other.x_lo and other.x_hi <= self.x_hi and
                self.y_lo <= other.y_lo and other.y_hi <= self.y_hi)

    def intersects(self, other: 'Rectangle') -> bool:
        return (self.x_lo <= other.x_hi and other.x_lo <= self.x_hi and
                self.y_lo <= other.y_hi and other.y_lo <= self.y_hi)

    def intersection(self, other: 'Rectangle') -> Optional['Rectangle']:
        if not self.intersects(other):
            return None
        return Rectangle(
            max(self.x_lo, other.x_lo), min(self.x_hi, other.x_hi),
            max(self.y_lo, other.y_lo), min(self.y_hi, other.y_hi),
        )

    def hull(self, other: 'Rectangle') -> 'Rectangle':
        return Rectangle(
            min(self.x_lo, other.x_lo), max(self.x_hi, other.x_hi),
            min(self.y_lo, other.y_lo), max(self.y_hi, other.y_hi),
        )

    def gap(self, other: 'Rectangle') -> Fraction:
        """ Chebyshev distance between the two rectangles, zero when they meet. """
        dx = max(other.x_lo - self.x_hi, self.x_lo - other.x_hi, Fraction(0))
        dy = max(other.y_lo - self.y_hi, self.y_lo - other.y_hi, Fraction(0))
        return max(dx, dy)

    def sort_key(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.x_lo, self.y_lo, self.x_hi, self.y_hi

    def as_strings(self) -> List[str]:
        return [format_rational(v) for v in (self.x_lo, self.x_hi, self.y_lo, self.y_hi)]
