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

from fractions import Fraction
from functools import reduce
from typing import (
    Dict,
    Iterable,
    List,
    Optional,
    Tuple,
    Union,
)

from sympy import Poly, QQ, Rational, Symbol
from sympy.polys.rings import ring

from chargezero.errors import PreconditionError
from chargezero.utils import parse_rational

X_SYMBOL = Symbol('x')
Y_SYMBOL = Symbol('y')
BIVARIATE_RING, RING_X, RING_Y = ring('x,y', QQ)

Scalar = Union[Fraction, int, str]


def to_sympy_rational(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


def from_sympy_rational(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def to_domain(value: Fraction):
    """ Element of the ground domain QQ used by the sparse ring. """
    return QQ(value.numerator, value.denominator)


def from_domain(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _as_fraction(value: Scalar) -> Fraction:
    return value if isinstance(value, Fraction) else parse_rational(value)


class UniPoly(object):
    """
    Dense univariate polynomial with exact rational coefficients.

    Args:
        coefficients (iterable): coefficients ordered by degree, ``coefficients[i]`` multiplies ``x**i``.
            Trailing zeros are dropped, so the zero polynomial has no coefficients.

    Ring operations, gcd and square-free decomposition are delegated to ``sympy.Poly`` over ``QQ``;
    the sympy object is built lazily and cached.
    """
    __slots__ = ('_coefficients', '_poly')

    def __init__(self, coefficients: Iterable[Scalar] = ()) -> None:
        values = [_as_fraction(c) for c in coefficients]
        while values and values[-1] == 0:
            values.pop()
        self._coefficients = tuple(values)
        self._poly = None

    @classmethod
    def from_sympy(cls, poly: Poly) -> 'UniPoly':
        if poly.is_zero:
            return cls()
        return cls(from_sympy_rational(c) for c in reversed(poly.all_coeffs()))

    @classmethod
    def monomial(cls, degree: int, coefficient: Scalar = 1) -> 'UniPoly':
        return cls([0] * degree + [coefficient])

    @classmethod
    def constant(cls, value: Scalar) -> 'UniPoly':
        return cls([value])

    def to_sympy(self) -> Poly:
        if self._poly is None:
            coefficients = [to_sympy_rational(c) for c in reversed(self._coefficients)] or [Rational(0)]
            self._poly = Poly(coefficients, X_SYMBOL, domain=QQ)
        return self._poly

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return self._coefficients

    @property
    def degree(self) -> int:
        """ Degree, ``-1`` for the zero polynomial. """
        return len(self._coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coefficients

    @property
    def leading_coefficient(self) -> Fraction:
        return self._coefficients[-1] if self._coefficients else Fraction(0)

    @property
    def is_squarefree(self) -> bool:
        return self.degree < 2 or self.to_sympy().is_sqf

    def __call__(self, value: Scalar) -> Fraction:
        value = _as_fraction(value)
        return reduce(lambda acc, c: acc * value + c, reversed(self._coefficients), Fraction(0))

    def sign_at(self, value: Scalar) -> int:
        """ Sign of the polynomial at a rational point. """
        result = self(value)
        return (result > 0) - (result < 0)

    def _wrap(self, other) -> Poly:
        if isinstance(other, UniPoly):
            return other.to_sympy()
        return Poly([to_sympy_rational(_as_fraction(other))], X_SYMBOL, domain=QQ)

    def __add__(self, other) -> 'UniPoly':
        return UniPoly.from_sympy(self.to_sympy() + self._wrap(other))

    __radd__ = __add__

    def __sub__(self, other) -> 'UniPoly':
        return UniPoly.from_sympy(self.to_sympy() - self._wrap(other))

    def __rsub__(self, other) -> 'UniPoly':
        return UniPoly.from_sympy(self._wrap(other) - self.to_sympy())

    def __mul__(self, other) -> 'UniPoly':
        return UniPoly.from_sympy(self.to_sympy() * self._wrap(other))

    __rmul__ = __mul__

    def __neg__(self) -> 'UniPoly':
        return UniPoly(-c for c in self._coefficients)

    def __pow__(self, exponent: int) -> 'UniPoly':
        assert exponent >= 0, "exponent should be a non-negative integer"
        return UniPoly.from_sympy(self.to_sympy() ** exponent)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self._coefficients == other._coefficients
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coefficients)

    def __repr__(self) -> str:
        return 'UniPoly({0})'.format(self.to_sympy().as_expr())

    def derivative(self) -> 'UniPoly':
        if self.degree < 1:
            return UniPoly()
        return UniPoly.from_sympy(self.to_sympy().diff(X_SYMBOL))

    def divmod(self, other: 'UniPoly') -> Tuple['UniPoly', 'UniPoly']:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        quotient, remainder = self.to_sympy().div(other.to_sympy())
        return UniPoly.from_sympy(quotient), UniPoly.from_sympy(remainder)

    def exact_quotient(self, other: 'UniPoly') -> 'UniPoly':
        quotient, remainder = self.divmod(other)
        assert remainder.is_zero, f"{other} does not divide {self}"
        return quotient

    def gcd(self, other: 'UniPoly') -> 'UniPoly':
        return uni_gcd(self, other)

    def monic(self) -> 'UniPoly':
        if self.is_zero:
            return self
        return self * (1 / self.leading_coefficient)

    def squarefree_part(self) -> 'UniPoly':
        if self.degree < 1:
            return self
        return UniPoly.from_sympy(self.to_sympy().sqf_part())

    def sturm_sequence(self) -> List['UniPoly']:
        return [UniPoly.from_sympy(p) for p in self.to_sympy().sturm()]

    def rational_roots(self) -> List[Fraction]:
        """ Exact rational roots, read off the linear factors over QQ. """
        if self.degree < 1:
            return list()

        roots = set()
        _, factors = self.to_sympy().factor_list()
        for factor, _ in factors:
            if factor.degree() == 1:
                slope, intercept = factor.all_coeffs()
                roots.add(-from_sympy_rational(intercept) / from_sympy_rational(slope))

        return sorted(roots)

    def split_zero_roots(self) -> Tuple[int, 'UniPoly']:
        """ Returns ``(k, r)`` with ``self == x**k * r`` and ``r(0) != 0``. """
        k = 0
        while k < len(self._coefficients) and self._coefficients[k] == 0:
            k += 1
        return k, UniPoly(self._coefficients[k:])

    def reversed(self) -> 'UniPoly':
        """ ``x**deg * p(1/x)``, whose roots are the reciprocals of the nonzero roots. """
        return UniPoly(reversed(self._coefficients))


ONE = UniPoly([1])
X = UniPoly([0, 1])
ONE_PLUS_X_SQUARED = UniPoly([1, 0, 1])


def uni_arith(a: UniPoly, b: UniPoly, op: str) -> UniPoly:
    """ Exact ring operation ``a op b`` for ``op`` in ``add``, ``sub``, ``mul``. """
    if op == 'add':
        return a + b
    elif op == 'sub':
        return a - b
    elif op == 'mul':
        return a * b

    raise ValueError("Unsupported operation : {0}".format(op))


def uni_differentiate(p: UniPoly) -> UniPoly:
    return p.derivative()


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """ Monic greatest common divisor over the rationals. """
    if a.is_zero and b.is_zero:
        raise PreconditionError("gcd of two zero polynomials is undefined")
    if b.is_zero:
        return a.monic()
    if a.is_zero:
        return b.monic()
    return UniPoly.from_sympy(a.to_sympy().gcd(b.to_sympy())).monic()


class BiPoly(object):
    """
    Sparse bivariate polynomial in ``x`` and ``y`` with exact rational coefficients.

    Args:
        terms (dict): map from exponent pair ``(i, j)`` to the coefficient of ``x**i * y**j``

    Backed by an element of the sparse ring ``QQ[x, y]`` from ``sympy.polys.rings``,
    which never stores zero coefficients.
    """
    __slots__ = ('_element',)

    def __init__(self, terms: Optional[Dict[Tuple[int, int], Scalar]] = None) -> None:
        terms = terms or dict()
        self._element = BIVARIATE_RING.from_dict({
            (int(i), int(j)): to_domain(_as_fraction(c)) for (i, j), c in terms.items() if _as_fraction(c) != 0
        })

    @classmethod
    def from_element(cls, element) -> 'BiPoly':
        result = cls.__new__(cls)
        result._element = element
        return result

    @classmethod
    def from_sympy(cls, poly: Poly, order: str = 'xy') -> 'BiPoly':
        """ Converts a sympy Poly whose generators are ``(x, y)`` or ``(y, x)`` as named by ``order``. """
        terms = dict()
        for monomial, coefficient in poly.terms():
            key = monomial if order == 'xy' else (monomial[1], monomial[0])
            terms[key] = from_sympy_rational(coefficient)
        return cls(terms)

    @classmethod
    def x(cls) -> 'BiPoly':
        return cls.from_element(RING_X)

    @classmethod
    def y(cls) -> 'BiPoly':
        return cls.from_element(RING_Y)

    @property
    def element(self):
        return self._element

    @property
    def terms(self) -> Dict[Tuple[int, int], Fraction]:
        return {monomial: from_domain(c) for monomial, c in sorted(self._element.terms())}

    @property
    def is_zero(self) -> bool:
        return not self._element

    @property
    def total_degree(self) -> int:
        """ Maximum of ``i + j`` over stored terms, ``-1`` for the zero polynomial. """
        return max((i + j for i, j in self._element.monoms()), default=-1)

    def degree_in(self, variable: str) -> int:
        index = 0 if variable == 'x' else 1
        return max((monomial[index] for monomial in self._element.monoms()), default=-1)

    def to_sympy(self, order: str = 'xy') -> Poly:
        gens = (X_SYMBOL, Y_SYMBOL) if order == 'xy' else (Y_SYMBOL, X_SYMBOL)
        terms = dict()
        for (i, j), c in self._element.terms():
            key = (i, j) if order == 'xy' else (j, i)
            terms[key] = to_sympy_rational(from_domain(c))
        return Poly.from_dict(terms or {(0, 0): Rational(0)}, *gens, domain=QQ)

    def evaluate(self, x: Scalar, y: Scalar) -> Fraction:
        x, y = _as_fraction(x), _as_fraction(y)
        return sum((c * x ** i * y ** j for (i, j), c in self.terms.items()), Fraction(0))

    def is_even_in_y(self) -> bool:
        return all(j % 2 == 0 for _, j in self._element.monoms())

    def mirrored(self) -> 'BiPoly':
        """ The polynomial of ``(x, -y)``. """
        return BiPoly({(i, j): (-c if j % 2 else c) for (i, j), c in self.terms.items()})

    def _wrap(self, other):
        if isinstance(other, BiPoly):
            return other._element
        return BIVARIATE_RING.ground_new(to_domain(_as_fraction(other)))

    def __add__(self, other) -> 'BiPoly':
        return BiPoly.from_element(self._element + self._wrap(other))

    __radd__ = __add__

    def __sub__(self, other) -> 'BiPoly':
        return BiPoly.from_element(self._element - self._wrap(other))

    def __rsub__(self, other) -> 'BiPoly':
        return BiPoly.from_element(self._wrap(other) - self._element)

    def __mul__(self, other) -> 'BiPoly':
        return BiPoly.from_element(self._element * self._wrap(other))

    __rmul__ = __mul__

    def __neg__(self) -> 'BiPoly':
        return BiPoly.from_element(-self._element)

    def __pow__(self, exponent: int) -> 'BiPoly':
        assert exponent >= 0, "exponent should be a non-negative integer"
        return BiPoly.from_element(self._element ** exponent)

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self._element == other._element
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._element.terms())))

    def __repr__(self) -> str:
        return 'BiPoly({0})'.format(self._element.as_expr())


def bi_evaluate(p: BiPoly, x: Scalar, y: Scalar) -> Fraction:
    """ Exact evaluation of a bivariate polynomial at a rational point. """
    return p.evaluate(x, y)
