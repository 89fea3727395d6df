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

import os
import logging
import platform
from fractions import Fraction
from typing import Union

import flint
import numpy
import sympy


logger = logging.getLogger(__name__)

PRECISION_ENV = 'CHARGEZERO_PRECISION_BITS'
DEFAULT_PRECISION = 128
MIN_PRECISION = 64

RationalLike = Union[Fraction, int, str]


def check_environment() -> None:
    """
    Check execution environment.
    OS, Processor, SymPy version, python-flint version, ... etc.
    """
    logger.info(f"Operating System : {platform.system()} {platform.release()}")
    logger.info(f"Processor : {platform.processor()}")
    logger.info(f"SymPy version : {sympy.__version__}")
    logger.info(f"python-flint version : {flint.__version__}")
    logger.info(f"NumPy version : {numpy.__version__}")
    logger.info(f"Default precision : {default_precision()} bits")


def default_precision() -> int:
    """ Working precision in bits, taken from ``CHARGEZERO_PRECISION_BITS`` when set. """
    value = os.environ.get(PRECISION_ENV)

    if value is None or value.strip() == '':
        return DEFAULT_PRECISION

    try:
        bits = int(value)
    except ValueError:
        raise ValueError("Unsupported precision : {0}={1}".format(PRECISION_ENV, value))

    assert bits >= MIN_PRECISION, f"{PRECISION_ENV} should be at least {MIN_PRECISION}, got {bits}"
    return bits


def parse_rational(value: RationalLike) -> Fraction:
    """
    Parse an exact rational from an integer, a Fraction, a ``"p/q"`` string or a decimal string.
    Floats are refused since they are not exact user input.
    """
    if isinstance(value, bool):
        raise ValueError("Unsupported rational : {0!r}".format(value))

    if isinstance(value, Fraction):
        return value

    if isinstance(value, int):
        return Fraction(value)

    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError("Unsupported rational : {0!r}".format(value))

    raise ValueError("Unsupported rational : {0!r} ({1})".format(value, type(value).__name__))


def format_rational(value: Fraction) -> str:
    """ Canonical ``"p/q"`` string used by every report and export. """
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"
