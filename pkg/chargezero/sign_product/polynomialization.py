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

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from chargezero.errors import InvariantViolation, PreconditionError, SizeLimitError
from chargezero.exact.polynomial import BiPoly
from chargezero.field.interval import enclose_polynomial, may_vanish
from chargezero.field.system import ChargeSystem
from chargezero.sign_product.radical_ring import RadicalElement, RadicalRing
from chargezero.utils import default_precision, format_rational, logger, parse_rational

JOINT = 'joint'
SINGLE = 'single'
COMPONENTS = ('X', 'Y')
DEFAULT_MAX_CHARGES = 4


@dataclass(frozen=True)
class SignPattern:
    signs: Tuple[int, ...]

    def __post_init__(self) -> None:
        assert all(s in (1, -1) for s in self.signs), f"signs should be +1 or -1, got {self.signs}"

    @classmethod
    def classes(cls, M: int) -> List['SignPattern']:
        """ One representative of each pair ``{sigma, -sigma}``: the patterns with a leading ``+1``. """
        return [cls((1,) + tail) for tail in itertools.product((1, -1), repeat=M - 1)]

    @classmethod
    def all(cls, M: int) -> List['SignPattern']:
        return [cls(signs) for signs in itertools.product((1, -1), repeat=M)]

    def __len__(self) -> int:
        return len(self.signs)

    def __neg__(self) -> 'SignPattern':
        return SignPattern(tuple(-s for s in self.signs))


@dataclass
class PolynomializationResult:
    """
    A polynomial whose zero set contains the zero set of the field (joint mode) or of one component.

    Args:
        P (BiPoly): the stored polynomial
        M (int): number of charges
        mode (str): ``joint`` or ``single``
        component (str): ``X`` or ``Y`` in single mode
        power (int): the product over all ``2 ** M`` sign patterns equals ``P ** power``

    For ``M = 1`` the full product is stored (``power == 1``). For ``M >= 2`` patterns ``sigma`` and
    ``-sigma`` contribute equal factors, so ``P`` is the product over one pattern per pair and the full
    product is its square.
    """
    P: BiPoly
    M: int
    mode: str
    component: Optional[str] = None
    power: int = 1

    @property
    def degree(self) -> int:
        return self.P.total_degree

    @property
    def literal_degree(self) -> int:
        return self.degree * self.power

    @property
    def degree_bound(self) -> int:
        return 3 * self.M * 2 ** self.M

    def literal(self) -> BiPoly:
        """ Product over all ``2 ** M`` sign patterns. """
        return self.P ** self.power

    def evaluate(self, x, y) -> Fraction:
        return self.P.evaluate(x, y)


def _check_size(system: ChargeSystem, max_charges: int) -> None:
    if system.M > max_charges:
        raise SizeLimitError(f"sign-product expansion is limited to {max_charges} charges, got {system.M}")


def _ring(system: ChargeSystem) -> RadicalRing:
    """ ``chi_j ** 2 = prod_{k != j} ((x - x_k) ** 2 + y ** 2) ** 3``. """
    x, y = BiPoly.x(), BiPoly.y()
    distances = [(x - c.position) ** 2 + y ** 2 for c in system]

    squares = list()
    for j in range(system.M):
        square = BiPoly({(0, 0): 1})
        for k, distance in enumerate(distances):
            if k != j:
                square = square * distance ** 3
        squares.append(square)

    return RadicalRing(squares)


def _signed_sums(
        system: ChargeSystem,
        ring: RadicalRing,
        pattern: SignPattern,
) -> Tuple[RadicalElement, RadicalElement]:
    """ ``sum_j sigma_j a_j (x - x_j) chi_j`` and ``sum_j sigma_j a_j y chi_j``. """
    x, y = BiPoly.x(), BiPoly.y()
    X = ring.element(dict())
    Y = ring.element(dict())

    for j, (sign, charge) in enumerate(zip(pattern.signs, system)):
        weight = charge.amplitude * sign
        X = X + ring.generator(j, (x - charge.position) * weight)
        Y = Y + ring.generator(j, y * weight)

    return X, Y


def _patterns(system: ChargeSystem) -> List[SignPattern]:
    """ Every pattern for a single charge, one pattern per pair {sigma, -sigma} otherwise. """
    return SignPattern.all(1) if system.M == 1 else SignPattern.classes(system.M)


def _power(system: ChargeSystem) -> int:
    return 1 if system.M == 1 else 2


def _reduce(factors: Sequence[RadicalElement]) -> RadicalElement:
    """ Balanced pairwise product in a fixed order. """
    factors = list(factors)
    while len(factors) > 1:
        paired = [left * right for left, right in zip(factors[0::2], factors[1::2])]
        if len(factors) % 2:
            paired.append(factors[-1])
        factors = paired
    return factors[0]


def _pure(product: RadicalElement, label: str) -> BiPoly:
    if not product.is_pure:
        raise InvariantViolation(f"{label} product kept radical monomials {product.support}")

    P = product.pure_part()

    if P.is_zero:
        raise InvariantViolation(f"{label} product vanished identically")
    if not P.is_even_in_y():
        raise InvariantViolation(f"{label} product is not symmetric under y -> -y")

    return P


def build_joint_polynomial(system: ChargeSystem, max_charges: int = DEFAULT_MAX_CHARGES) -> PolynomializationResult:
    """
    Eliminates the square roots of both components at once through the product of
    ``X_sigma ** 2 + Y_sigma ** 2`` over the sign patterns ``sigma``.

    Args:
        system (ChargeSystem): charges
        max_charges (int): expansion limit

    Returns:
        result (PolynomializationResult): ``P`` vanishes at every zero of the field off the charges
    """
    _check_size(system, max_charges)
    ring = _ring(system)

    factors = list()
    for pattern in _patterns(system):
        X, Y = _signed_sums(system, ring, pattern)
        factors.append(X.square() + Y.square())

    P = _pure(_reduce(factors), 'joint')
    result = PolynomializationResult(P=P, M=system.M, mode=JOINT, power=_power(system))

    if result.degree > result.degree_bound:
        raise InvariantViolation(f"joint polynomial degree {result.degree} exceeds {result.degree_bound}")

    logger.info(f"joint polynomial for M={system.M}: degree {result.degree}, {len(P.terms)} terms")
    return result


def build_component_polynomial(
        system: ChargeSystem,
        component: str,
        max_charges: int = DEFAULT_MAX_CHARGES,
) -> PolynomializationResult:
    """
    Eliminates the square roots of one component: the product of ``sum_j sigma_j A_j chi_j`` over the
    sign patterns, with ``A_j = a_j (x - x_j)`` for ``X`` and ``A_j = a_j y`` for ``Y``.
    """
    if component not in COMPONENTS:
        raise ValueError("Unsupported component : {0}".format(component))

    _check_size(system, max_charges)
    ring = _ring(system)
    index = COMPONENTS.index(component)

    factors = [_signed_sums(system, ring, pattern)[index] for pattern in _patterns(system)]
    P = _pure(_reduce(factors), f"{component}-component")
    result = PolynomializationResult(P=P, M=system.M, mode=SINGLE, component=component, power=_power(system))

    logger.info(f"{component}-component polynomial for M={system.M}: degree {result.degree}")
    return result


@dataclass
class ContainmentReport:
    passed: bool
    records: List[Dict] = field(default_factory=list)


def containment_check(
        result: PolynomializationResult,
        zeros: Sequence,
        precision: Optional[int] = None,
) -> ContainmentReport:
    """
    Checks that ``P`` may vanish on every certified zero box.

    Raises:
        InvariantViolation: a certified box on which ``P`` provably has no zero
    """
    precision = precision or default_precision()
    records = list()

    for zero in zeros:
        enclosure = enclose_polynomial(result.P, zero.box, precision)
        contained = may_vanish(enclosure)
        records.append({'box': zero.box.as_strings(), 'contains_zero': contained})

        if not contained:
            raise InvariantViolation(f"certified zero box {zero.box.as_strings()} misses the zero set of P")

    return ContainmentReport(passed=True, records=records)


def export_polynomial(poly: BiPoly) -> str:
    """ One ``numerator/denominator i j`` line per term ``c * x**i * y**j``, sorted by ``(i, j)``. """
    lines = [f"{format_rational(c)} {i} {j}" for (i, j), c in sorted(poly.terms.items())]
    return '\n'.join(lines) + ('\n' if lines else '')


def parse_polynomial(text: str) -> BiPoly:
    terms = dict()

    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue

        fields = line.split()
        if len(fields) != 3:
            raise PreconditionError(f"line {number}: expected 'coefficient i j', got {line!r}")

        try:
            coefficient = parse_rational(fields[0])
            i, j = int(fields[1]), int(fields[2])
        except ValueError as error:
            raise PreconditionError(f"line {number}: {error}")

        if i < 0 or j < 0:
            raise PreconditionError(f"line {number}: negative exponent")
        terms[(i, j)] = terms.get((i, j), Fraction(0)) + coefficient

    return BiPoly(terms)
