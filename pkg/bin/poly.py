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
import sys
import warnings
import hydra
from hydra.core.config_store import ConfigStore
from hydra.utils import to_absolute_path
from omegaconf import OmegaConf, DictConfig

from chargezero.errors import ChargeZeroError, ConfigError, exit_code
from chargezero.report import RunSettings, load_config
from chargezero.sign_product import (
    SignProductConfig,
    build_component_polynomial,
    build_joint_polynomial,
    export_polynomial,
)
from chargezero.utils import check_environment, logger


def poly(config: DictConfig) -> int:
    if config.run.config_path is None:
        raise ConfigError("run.config_path: a run configuration file is required")

    run = load_config(to_absolute_path(config.run.config_path))

    if config.sign_product.mode == 'joint':
        result = build_joint_polynomial(run.system, config.sign_product.max_charges)
    elif config.sign_product.mode == 'single':
        result = build_component_polynomial(run.system, config.sign_product.component, config.sign_product.max_charges)
    else:
        raise ValueError("Unsupported Mode : {0}".format(config.sign_product.mode))

    output_path = os.path.join(os.getcwd(), config.sign_product.output_path)
    with open(output_path, 'w', encoding='utf-8') as f:
        f.write(f"# {result.mode} polynomial, M={result.M}, degree {result.degree}, frame shift {run.shift}\n")
        f.write(export_polynomial(result.P))

    logger.info(f"degree {result.degree} (bound {result.degree_bound}) polynomial written to {output_path}")
    return 0


cs = ConfigStore.instance()
cs.store(group="run", name="base", node=RunSettings)
cs.store(group="sign_product", name="base", node=SignProductConfig)


@hydra.main(config_path=os.path.join('..', "configs"), config_name="poly")
def main(config: DictConfig) -> None:
    warnings.filterwarnings('ignore')
    logger.info(OmegaConf.to_yaml(config))
    check_environment()

    try:
        status = poly(config)
    except ChargeZeroError as error:
        logger.error(f"{type(error).__name__}: {error}")
        status = exit_code(error)

    sys.exit(status)


if __name__ == '__main__':
    main()
