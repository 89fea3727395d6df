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


class ChargeZeroError(Exception):
    """ Base class of every error raised by the package. """
    pass


class ConfigError(ChargeZeroError, ValueError):
    """ A run configuration could not be parsed or violates a charge-system invariant. """
    pass


class PreconditionError(ChargeZeroError, ValueError):
    """ An operation was called outside of its contract. """
    pass


class SingularPointError(ChargeZeroError, ValueError):
    """ Evaluation requested at a charge position, where the field is undefined. """
    pass


class DegenerateJacobianError(ChargeZeroError, ArithmeticError):
    """ Both partial derivatives of a field component vanish within tolerance. """
    pass


class SizeLimitError(ChargeZeroError, ValueError):
    """ The charge count exceeds the configured expansion limit. """
    pass


class InvariantViolation(ChargeZeroError, AssertionError):
    """ A mathematically impossible outcome was observed. """
    pass


def exit_code(error: ChargeZeroError) -> int:
    """ Process status for a failed command: 2 for invariant violations, 1 for everything the user can fix. """
    if isinstance(error, InvariantViolation):
        return 2
    return 1
