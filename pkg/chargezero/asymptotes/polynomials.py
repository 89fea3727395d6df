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
from functools import lru_cache
from typing import Tuple

from chargezero.errors import PreconditionError
from chargezero.exact.polynomial import ONE, ONE_PLUS_X_SQUARED, X, UniPoly


def differentiate_over_radical(numerator: UniPoly, exponent: int) -> UniPoly:
    """
    Numerator of ``d/dx [p(x) / (1 + x**2) ** (exponent / 2)]`` over ``(1 + x**2) ** ((exponent + 2) / 2)``,
    that is ``(1 + x**2) * p'(x) - exponent * x * p(x)``.
    """
    return ONE_PLUS_X_SQUARED * numerator.derivative() - X * numerator * exponent


@dataclass(frozen=True)
class AsymptotePolynomials:
    """
    Numerators of the ``L``-th derivatives of four radical functions, all over ``(1 + x**2) ** ((2L + 3) / 2)``.

    Args:
        L (int): derivative order (the critical index)
        P (UniPoly): from ``x / (1 + x**2) ** (3/2)``, degree ``L + 1``
        Q (UniPoly): from ``1 / (1 + x**2) ** (3/2)``, degree ``L``
        numC (UniPoly): from ``x**(L+2) / (1 + x**2) ** (3/2)``
        numD (UniPoly): from ``x**(L+1) / (1 + x**2) ** (3/2)``
    """
    L: int
    P: UniPoly
    Q: UniPoly
    numC: UniPoly
    numD: UniPoly

    @property
    def denominator_exponent(self) -> int:
        """ Twice the power of ``(1 + x**2)`` below every numerator. """
        return 2 * self.L + 3

    def as_dict(self) -> dict:
        return {name: [str(c) for c in getattr(self, name).coefficients] for name in ('P', 'Q', 'numC', 'numD')}


def _derive(start: UniPoly, order: int) -> UniPoly:
    numerator, exponent = start, 3
    for _ in range(order):
        numerator = differentiate_over_radical(numerator, exponent)
        exponent += 2
    return numerator


@lru_cache(maxsize=None)
def _type_one_family(L: int) -> Tuple[UniPoly, UniPoly]:
    if L == 0:
        return X, ONE
    P, Q = _type_one_family(L - 1)
    exponent = 2 * L + 1
    return differentiate_over_radical(P, exponent), differentiate_over_radical(Q, exponent)


@lru_cache(maxsize=None)
def build_asymptote_polys(L: int) -> AsymptotePolynomials:
    if L < 0:
        raise PreconditionError(f"derivative order should be non-negative, got {L}")

    P, Q = _type_one_family(L)
    return AsymptotePolynomials(
        L=L,
        P=P,
        Q=Q,
        numC=_derive(UniPoly.monomial(L + 2), L),
        numD=_derive(UniPoly.monomial(L + 1), L),
    )
