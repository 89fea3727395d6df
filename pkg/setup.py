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

from distutils.core import setup

setup(
    name='ChargeZero',
    version='0.0.0',
    description='Certified zeros and asymptotic directions of the electric field of point charges on a line',
    author='The ChargeZero Authors',
    packages=[
        'chargezero',
        'chargezero.exact',
        'chargezero.field',
        'chargezero.asymptotes',
        'chargezero.sign_product',
        'chargezero.zeros',
        'chargezero.report',
    ],
    install_requires=[
        'sympy',
        'python-flint',
        'numpy',
        'pandas',
        'tqdm',
        'matplotlib',
        'hydra-core>=1.1',
        'omegaconf>=2.1',
    ],
    extras_require={
        'test': ['pytest'],
    },
    keywords=['electrostatics', 'point_charges', 'interval_arithmetic', 'real_algebraic_geometry'],
    python_requires='>=3.7',
)
