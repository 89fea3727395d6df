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

from chargezero.asymptotes import VerifyConfig
from chargezero.errors import ChargeZeroError, ConfigError, exit_code
from chargezero.report import RunSettings, apply_overrides, load_config, run_pipeline
from chargezero.sign_product import SignProductConfig
from chargezero.utils import check_environment, logger
from chargezero.zeros import ZeroSearchConfig


def analyze(config: DictConfig) -> int:
    if config.run.config_path is None:
        raise ConfigError("run.config_path: a run configuration file is required")

    run = apply_overrides(load_config(to_absolute_path(config.run.config_path)), config.run)
    report = run_pipeline(
        run,
        zero_config=OmegaConf.to_object(config.zeros),
        verify_config=OmegaConf.to_object(config.verify),
        sign_product_config=OmegaConf.to_object(config.sign_product),
    )
    report.write(os.path.join(os.getcwd(), run.outputs.report))

    logger.info(f"{report.zeros.observed_count} zeros, completeness {report.zeros.completeness}")
    if not report.passed:
        logger.error("a verification suite failed")
        return 2
    return 0


cs = ConfigStore.instance()
cs.store(group="run", name="base", node=RunSettings)
cs.store(group="zeros", name="base", node=ZeroSearchConfig)
cs.store(group="sign_product", name="base", node=SignProductConfig)
cs.store(group="verify", name="base", node=VerifyConfig)


@hydra.main(config_path=os.path.join('..', "configs"), config_name="analyze")
def main(config: DictConfig) -> None:
    warnings.filterwarnings('ignore')
    logger.info(OmegaConf.to_yaml(config))
    check_environment()

    try:
        status = analyze(config)
    except ChargeZeroError as error:
        logger.error(f"{type(error).__name__}: {error}")
        status = exit_code(error)

    sys.exit(status)


if __name__ == '__main__':
    main()
