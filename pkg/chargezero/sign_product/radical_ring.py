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

from typing import Dict, List, Sequence

from chargezero.exact.polynomial import BIVARIATE_RING, BiPoly


class RadicalRing(object):
    """
    Formal extension of ``QQ[x, y]`` by symbols ``chi_1 .. chi_M`` subject to ``chi_j ** 2 = squares[j]``.

    Args:
        squares (sequence): the polynomial each ``chi_j`` squares to

    Elements store one coefficient per square-free chi-monomial, encoded as a bit mask (bit ``j`` set
    when ``chi_j`` divides the monomial). Products reduce ``chi_j ** 2`` eagerly, so masks stay square-free.
    """
    def __init__(self, squares: Sequence[BiPoly]) -> None:
        self.squares = [square.element for square in squares]
        self.size = len(self.squares)
        self._reductions: Dict[int, object] = {0: BIVARIATE_RING.one}

    def reduction(self, mask: int):
        """ Product of ``squares[j]`` over the bits ``j`` of ``mask``. """
        if mask not in self._reductions:
            lowest = mask & -mask
            self._reductions[mask] = self.reduction(mask ^ lowest) * self.squares[lowest.bit_length() - 1]
        return self._reductions[mask]

    def element(self, terms: Dict[int, BiPoly]) -> 'RadicalElement':
        return RadicalElement(self, {mask: poly.element for mask, poly in terms.items() if not poly.is_zero})

    def generator(self, index: int, coefficient: BiPoly) -> 'RadicalElement':
        """ ``coefficient * chi_index``. """
        assert 0 <= index < self.size, f"no radical symbol with index {index}"
        return self.element({1 << index: coefficient})

    def one(self) -> 'RadicalElement':
        return RadicalElement(self, {0: BIVARIATE_RING.one})


class RadicalElement(object):
    __slots__ = ('ring', 'terms')

    def __init__(self, ring: RadicalRing, terms: Dict[int, object]) -> None:
        self.ring = ring
        self.terms = {mask: coefficient for mask, coefficient in terms.items() if coefficient}

    @property
    def support(self) -> List[int]:
        return sorted(self.terms)

    @property
    def is_pure(self) -> bool:
        """ True when no radical symbol survives. """
        return all(mask == 0 for mask in self.terms)

    def pure_part(self) -> BiPoly:
        return BiPoly.from_element(self.terms.get(0, BIVARIATE_RING.zero))

    def __add__(self, other: 'RadicalElement') -> 'RadicalElement':
        terms = dict(self.terms)
        for mask, coefficient in other.terms.items():
            terms[mask] = terms[mask] + coefficient if mask in terms else coefficient
        return RadicalElement(self.ring, terms)

    def __neg__(self) -> 'RadicalElement':
        return RadicalElement(self.ring, {mask: -coefficient for mask, coefficient in self.terms.items()})

    def __sub__(self, other: 'RadicalElement') -> 'RadicalElement':
        return self + (-other)

    def __mul__(self, other: 'RadicalElement') -> 'RadicalElement':
        terms = dict()
        for left_mask, left in self.terms.items():
            for right_mask, right in other.terms.items():
                mask = left_mask ^ right_mask
                product = left * right
                overlap = left_mask & right_mask
                if overlap:
                    product = product * self.ring.reduction(overlap)
                terms[mask] = terms[mask] + product if mask in terms else product
        return RadicalElement(self.ring, terms)

    def square(self) -> 'RadicalElement':
        return self * self
