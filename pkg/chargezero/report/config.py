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

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from omegaconf import MISSING, OmegaConf
from omegaconf.errors import OmegaConfBaseException

from chargezero.errors import ConfigError, PreconditionError
from chargezero.field.rectangle import Rectangle
from chargezero.field.system import ChargeSystem
from chargezero.utils import format_rational, logger, parse_rational


@dataclass
class ChargeSchema:
    x: str = MISSING
    a: str = MISSING


@dataclass
class BoxSchema:
    x_lo: str = MISSING
    x_hi: str = MISSING
    y_lo: str = MISSING
    y_hi: str = MISSING


@dataclass
class OutputSchema:
    report: str = "report.json"
    zeroset_prefix: str = "zeroset"
    polynomial: str = "polynomial.txt"


@dataclass
class RunSchema:
    """ Layout of a run configuration file. Exact quantities are strings such as ``"3"``, ``"-1/2"``, ``"0.125"``. """
    charges: List[ChargeSchema] = field(default_factory=list)
    box: Optional[BoxSchema] = None
    tolerance: Optional[str] = None
    precision: Optional[int] = None
    lmax: Optional[int] = None
    outputs: OutputSchema = field(default_factory=OutputSchema)


@dataclass
class RunConfig:
    """
    Validated run configuration.

    Args:
        original (ChargeSystem): charges as written in the file
        system (ChargeSystem): charges translated into the canonical frame ``0 < x_1 < ... < x_M``
        shift (Fraction): translation added to every position
        box (Rectangle, optional): search box, in the canonical frame
    """
    original: ChargeSystem
    system: ChargeSystem
    shift: Fraction
    box: Optional[Rectangle] = None
    tolerance: Optional[Fraction] = None
    precision: Optional[int] = None
    lmax: Optional[int] = None
    outputs: OutputSchema = field(default_factory=OutputSchema)

    @classmethod
    def from_system(cls, system: ChargeSystem, **kwargs) -> 'RunConfig':
        canonical, shift = system.canonical()
        return cls(original=system, system=canonical, shift=shift, **kwargs)


def _rational(value, name: str) -> Fraction:
    try:
        return parse_rational(value)
    except ValueError as error:
        raise ConfigError(f"{name}: {error}")


def _build(schema) -> RunConfig:
    if len(schema.charges) == 0:
        raise ConfigError("charges: at least one charge is required")

    positions, amplitudes = list(), list()
    for index, charge in enumerate(schema.charges):
        positions.append(_rational(charge.x, f"charges[{index}].x"))
        amplitude = _rational(charge.a, f"charges[{index}].a")
        if amplitude == 0:
            raise ConfigError(f"charges[{index}].a: amplitude should be nonzero")
        amplitudes.append(amplitude)

    if len(set(positions)) != len(positions):
        raise ConfigError(f"charges: duplicate positions in {[str(p) for p in positions]}")

    try:
        original = ChargeSystem.from_lists(positions, amplitudes)
    except PreconditionError as error:
        raise ConfigError(f"charges: {error}")

    system, shift = original.canonical()

    box = None
    if schema.box is not None:
        corners = [_rational(getattr(schema.box, name), f"box.{name}") for name in ('x_lo', 'x_hi', 'y_lo', 'y_hi')]
        if corners[0] > corners[1] or corners[2] > corners[3]:
            raise ConfigError(f"box: inverted bounds {[str(c) for c in corners]}")
        box = Rectangle(*corners).translated(shift)

    tolerance = None if schema.tolerance is None else _rational(schema.tolerance, 'tolerance')
    if tolerance is not None and tolerance <= 0:
        raise ConfigError("tolerance: should be positive")

    if schema.precision is not None and schema.precision < 64:
        raise ConfigError(f"precision: should be at least 64 bits, got {schema.precision}")

    if schema.lmax is not None and schema.lmax < 1:
        raise ConfigError(f"lmax: should be at least 1, got {schema.lmax}")

    return RunConfig(
        original=original,
        system=system,
        shift=shift,
        box=box,
        tolerance=tolerance,
        precision=schema.precision,
        lmax=schema.lmax,
        outputs=OmegaConf.to_object(schema.outputs),
    )


def parse_config(text: str, source: str = '<string>') -> RunConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as error:
        raise ConfigError(f"{source}:{error.lineno}:{error.colno}: {error.msg}")

    if not isinstance(raw, dict):
        raise ConfigError(f"{source}: top level should be an object")

    try:
        schema = OmegaConf.merge(OmegaConf.structured(RunSchema), raw)
        return _build(schema)
    except OmegaConfBaseException as error:
        raise ConfigError(f"{source}: {error}")


def load_config(path: str) -> RunConfig:
    """
    Loads and validates a JSON run configuration.

    Raises:
        ConfigError: unreadable file, malformed JSON (with line and column), unknown keys or invalid charges
    """
    try:
        with open(path, encoding='utf-8') as f:
            text = f.read()
    except OSError as error:
        raise ConfigError(f"{path}: {error}")

    config = parse_config(text, source=path)
    logger.info(f"loaded {config.system.M} charges from {path}, normalization shift {config.shift}")
    return config


def dump_config(config: RunConfig) -> str:
    """ JSON text that loads back into the same configuration (charges in their original frame). """
    payload = {
        'charges': [{'x': format_rational(c.position), 'a': format_rational(c.amplitude)} for c in config.original],
        'outputs': {
            'report': config.outputs.report,
            'zeroset_prefix': config.outputs.zeroset_prefix,
            'polynomial': config.outputs.polynomial,
        },
    }

    if config.box is not None:
        payload['box'] = dict(zip(('x_lo', 'x_hi', 'y_lo', 'y_hi'), config.box.translated(-config.shift).as_strings()))
    if config.tolerance is not None:
        payload['tolerance'] = format_rational(config.tolerance)
    if config.precision is not None:
        payload['precision'] = config.precision
    if config.lmax is not None:
        payload['lmax'] = config.lmax

    return json.dumps(payload, sort_keys=True, indent=2) + '\n'


def apply_overrides(config: RunConfig, settings) -> RunConfig:
    """ Command-line settings that are set win over the file, which wins over the built-in defaults. """
    if getattr(settings, 'tolerance', None) is not None:
        config.tolerance = _rational(settings.tolerance, 'run.tolerance')
    if getattr(settings, 'precision', None) is not None:
        config.precision = int(settings.precision)
    if getattr(settings, 'lmax', None) is not None:
        config.lmax = int(settings.lmax)
    if getattr(settings, 'box_radius', None) is not None:
        config.box = Rectangle.square(_rational(settings.box_radius, 'run.box_radius')).translated(config.shift)
    return config
