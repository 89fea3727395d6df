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
from typing import (
    Iterable,
    List,
    Sequence,
    Tuple,
)

from chargezero.errors import PreconditionError
from chargezero.utils import RationalLike, format_rational, parse_rational


@dataclass(frozen=True)
class Charge:
    """
    A signed point charge sitting at ``(position, 0)``.

    Args:
        position (Fraction): coordinate on the charge line
        amplitude (Fraction): signed, nonzero charge
    """
    position: Fraction
    amplitude: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, 'position', parse_rational(self.position))
        object.__setattr__(self, 'amplitude', parse_rational(self.amplitude))

        if self.amplitude == 0:
            raise PreconditionError(f"charge at x={self.position} has zero amplitude")


class ChargeSystem(object):
    """
    Finitely many point charges on the x-axis, ordered by position.

    Args:
        charges (sequence): charges with strictly increasing positions

    The moment and asymptote machinery is stated for the canonical frame ``0 < x_1 < ... < x_M``;
    ``ChargeSystem.normalized`` translates any input into it and returns the shift it applied.
    Field evaluation works in any frame.
    """
    def __init__(self, charges: Sequence[Charge]) -> None:
        charges = tuple(charges)

        if len(charges) == 0:
            raise PreconditionError("a charge system needs at least one charge")

        for left, right in zip(charges, charges[1:]):
            if left.position == right.position:
                raise PreconditionError(f"duplicate charge position x={left.position}")
            if left.position > right.position:
                raise PreconditionError("charge positions should be strictly increasing")

        self._charges = charges

    @classmethod
    def from_lists(cls, positions: Iterable[RationalLike], amplitudes: Iterable[RationalLike]) -> 'ChargeSystem':
        """ Builds a system from parallel lists, sorting the charges by position. """
        positions, amplitudes = list(positions), list(amplitudes)

        if len(positions) != len(amplitudes):
            raise PreconditionError(f"{len(positions)} positions but {len(amplitudes)} amplitudes")

        charges = [Charge(position, amplitude) for position, amplitude in zip(positions, amplitudes)]
        return cls(sorted(charges, key=lambda charge: charge.position))

    @classmethod
    def normalized(
            cls,
            positions: Iterable[RationalLike],
            amplitudes: Iterable[RationalLike],
    ) -> Tuple['ChargeSystem', Fraction]:
        """
        Normalizing constructor. Translates the charges so that the smallest position is positive:
        when ``min x_j <= 0`` every position is shifted by ``1 - min x_j``, otherwise nothing moves.

        Returns:
            (system, shift): the canonical system and the translation that was added to each position
        """
        system = cls.from_lists(positions, amplitudes)
        return system.canonical()

    def canonical(self) -> Tuple['ChargeSystem', Fraction]:
        lowest = self._charges[0].position
        shift = Fraction(0) if lowest > 0 else 1 - lowest
        return self.translated(shift), shift

    @property
    def charges(self) -> Tuple[Charge, ...]:
        return self._charges

    @property
    def M(self) -> int:
        return len(self._charges)

    @property
    def positions(self) -> List[Fraction]:
        return [charge.position for charge in self._charges]

    @property
    def amplitudes(self) -> List[Fraction]:
        return [charge.amplitude for charge in self._charges]

    @property
    def is_canonical(self) -> bool:
        return self._charges[0].position > 0

    def translated(self, shift: RationalLike) -> 'ChargeSystem':
        shift = parse_rational(shift)
        return ChargeSystem([Charge(c.position + shift, c.amplitude) for c in self._charges])

    def scaled(self, factor: RationalLike) -> 'ChargeSystem':
        """ Multiplies every amplitude by a nonzero rational. """
        factor = parse_rational(factor)
        return ChargeSystem([Charge(c.position, c.amplitude * factor) for c in self._charges])

    def reflected(self, center: RationalLike = 0) -> 'ChargeSystem':
        """ Mirror image under ``x -> 2*center - x``. """
        center = parse_rational(center)
        return ChargeSystem.from_lists(
            [2 * center - c.position for c in self._charges],
            [c.amplitude for c in self._charges],
        )

    def is_charge_point(self, x: Fraction, y: Fraction) -> bool:
        return y == 0 and any(c.position == x for c in self._charges)

    def as_strings(self) -> List[dict]:
        return [
            {'x': format_rational(c.position), 'a': format_rational(c.amplitude)} for c in self._charges
        ]

    def __len__(self) -> int:
        return len(self._charges)

    def __iter__(self):
        return iter(self._charges)

    def __eq__(self, other) -> bool:
        if isinstance(other, ChargeSystem):
            return self._charges == other._charges
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._charges)

    def __repr__(self) -> str:
        body = ', '.join(f"({c.position}, {c.amplitude})" for c in self._charges)
        return f"ChargeSystem([{body}])"
