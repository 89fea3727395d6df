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
from typing import List, Optional, Tuple

from sympy import Poly, QQ, sympify

from chargezero.errors import PreconditionError, SizeLimitError
from chargezero.exact.polynomial import X_SYMBOL, Y_SYMBOL, BiPoly, UniPoly
from chargezero.exact.sturm import IsolatingInterval, sturm_isolate
from chargezero.field.evaluation import enclose_field
from chargezero.field.interval import enclose_polynomial, may_vanish
from chargezero.field.rectangle import Rectangle
from chargezero.field.system import ChargeSystem
from chargezero.sign_product.polynomialization import build_component_polynomial, build_joint_polynomial
from chargezero.utils import default_precision, logger

CANDIDATE_WIDTH = Fraction(1, 2 ** 20)
RESULTANT_CHARGE_LIMIT = 4


@dataclass
class ResultantCandidates:
    """
    Finite set of boxes provably holding every zero of the field.

    Args:
        candidates (list): boxes, each a product of isolating intervals of the two resultants
        search_box (Rectangle): box bounding every real common zero of the component polynomials
        complete (bool): false when a common factor could not be eliminated
        bezout (int): product of the degrees of the square-free component polynomials
    """
    candidates: List[Rectangle] = field(default_factory=list)
    search_box: Optional[Rectangle] = None
    complete: bool = True
    bezout: int = 0


def _univariate(resultant, variable) -> UniPoly:
    """ Resultant in ``variable`` as a UniPoly. """
    expr = resultant.as_expr() if isinstance(resultant, Poly) else sympify(resultant)
    if variable != X_SYMBOL:
        expr = expr.subs(variable, X_SYMBOL)
    return UniPoly.from_sympy(Poly(expr, X_SYMBOL, domain=QQ))


def _coprime_pairs(f: Poly, g: Poly, joint: Poly) -> Tuple[List[Tuple[Poly, Poly]], bool]:
    """
    Splits ``{f = 0} & {g = 0}`` into pieces without common factors. A common factor ``c`` is traded for
    the pair ``(c, joint)``, since every zero of the field on ``{c = 0}`` also lies on the joint variety.
    """
    common = f.gcd(g)
    if common.total_degree() == 0:
        return [(f, g)], True

    logger.warning(f"component polynomials share the factor {common.as_expr()}, splitting it off")
    pairs = [(f.exquo(common), g.exquo(common))]

    if common.gcd(joint).total_degree() > 0:
        logger.warning("the shared factor also divides the joint polynomial, candidates are incomplete")
        return pairs, False

    pairs.append((common, joint))
    return pairs, True


def _roots(poly: UniPoly) -> List[IsolatingInterval]:
    reduced = poly.squarefree_part()
    if reduced.degree < 1:
        return list()
    return [root.refine(CANDIDATE_WIDTH) for root in sturm_isolate(reduced, detect_rational_roots=False)]


def _extent(roots: List[IsolatingInterval]) -> Fraction:
    """ Bound on the absolute value of every isolated root, at least 1. """
    return max([Fraction(1)] + [max(abs(root.lo), abs(root.hi)) for root in roots])


def exhaustive_resultant_candidates(
        system: ChargeSystem,
        max_charges: int = RESULTANT_CHARGE_LIMIT,
        precision: Optional[int] = None,
) -> ResultantCandidates:
    """
    Eliminates ``y`` and then ``x`` from the two single-component polynomials by resultants. Every zero of
    the field has its coordinates among the real roots of the two resultants; the product grid of their
    isolating intervals is filtered by interval enclosures of the field and of both polynomials.

    The cost grows steeply with ``M``: two charges take well under a second, three take a few minutes
    and four take far longer.

    Raises:
        PreconditionError: ``max_charges`` outside ``1..4``
        SizeLimitError: more charges than ``max_charges``
    """
    if not 1 <= max_charges <= RESULTANT_CHARGE_LIMIT:
        raise PreconditionError(
            f"resultant charge limit should be between 1 and {RESULTANT_CHARGE_LIMIT}, got {max_charges}"
        )

    if system.M > max_charges:
        raise SizeLimitError(f"the resultant route is limited to {max_charges} charges, got {system.M}")

    precision = precision or default_precision()
    component_x = build_component_polynomial(system, 'X').P
    component_y = build_component_polynomial(system, 'Y').P
    joint = build_joint_polynomial(system).P

    f = component_x.to_sympy('yx').sqf_part()
    g = component_y.to_sympy('yx').sqf_part()
    pairs, complete = _coprime_pairs(f, g, joint.to_sympy('yx').sqf_part())

    result = ResultantCandidates(complete=complete, bezout=f.total_degree() * g.total_degree())
    x_bound, y_bound = Fraction(1), Fraction(1)
    boxes = set()

    for first, second in pairs:
        in_x = first.resultant(second)
        first_xy = Poly(first.as_expr(), X_SYMBOL, Y_SYMBOL, domain=QQ)
        second_xy = Poly(second.as_expr(), X_SYMBOL, Y_SYMBOL, domain=QQ)
        in_y = first_xy.resultant(second_xy)

        resultant_x = _univariate(in_x, X_SYMBOL)
        resultant_y = _univariate(in_y, Y_SYMBOL)

        if resultant_x.is_zero or resultant_y.is_zero:
            logger.warning("a resultant vanished identically, candidates are incomplete")
            result.complete = False
            continue

        x_roots, y_roots = _roots(resultant_x), _roots(resultant_y)
        x_bound = max(x_bound, _extent(x_roots))
        y_bound = max(y_bound, _extent(y_roots))

        pieces = (BiPoly.from_sympy(first, order='yx'), BiPoly.from_sympy(second, order='yx'))
        for x_root in x_roots:
            for y_root in y_roots:
                box = Rectangle(x_root.lo, x_root.hi, y_root.lo, y_root.hi)
                if _admissible(system, box, pieces, precision):
                    boxes.add(box)

    result.candidates = sorted(boxes, key=Rectangle.sort_key)
    result.search_box = Rectangle(-x_bound, x_bound, -y_bound, y_bound)

    logger.info(f"resultant route: {len(result.candidates)} candidate boxes within "
                f"{result.search_box.as_strings()}, complete={result.complete}")
    return result


def _admissible(system: ChargeSystem, box: Rectangle, pieces: Tuple[BiPoly, BiPoly], precision: int) -> bool:
    if any(box.contains_point(position, Fraction(0)) for position in system.positions):
        return False

    enclosure = enclose_field(system, box, precision)
    if enclosure is not None and (not may_vanish(enclosure.X) or not may_vanish(enclosure.Y)):
        return False

    return all(may_vanish(enclose_polynomial(piece, box, precision)) for piece in pieces)
