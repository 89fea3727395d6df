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
import pandas as pd
from hydra.core.config_store import ConfigStore
from omegaconf import OmegaConf, DictConfig

from chargezero.asymptotes import VerifyConfig, run_all_suites
from chargezero.errors import ChargeZeroError, exit_code
from chargezero.utils import check_environment, logger


def verify(config: DictConfig) -> int:
    reports = run_all_suites(config.verify.lmax, config.verify.num_workers)

    table = pd.concat([report.to_frame() for report in reports], ignore_index=True)
    output_path = os.path.join(os.getcwd(), config.verify.output_path)
    table.to_csv(output_path, index=False)
    logger.info(f"verification table written to {output_path}")

    for report in reports:
        logger.info(f"{report.name}: {'passed' if report.passed else 'FAILED'} ({len(report.records)} cases)")

    return 0 if all(report.passed for report in reports) else 2


cs = ConfigStore.instance()
cs.store(group="verify", name="base", node=VerifyConfig)


@hydra.main(config_path=os.path.join('..', "configs"), config_name="verify")
def main(config: DictConfig) -> None:
    warnings.filterwarnings('ignore')
    logger.info(OmegaConf.to_yaml(config))
    check_environment()

    try:
        status = verify(config)
    except ChargeZeroError as error:
        logger.error(f"{type(error).__name__}: {error}")
        status = exit_code(error)

    sys.exit(status)


if __name__ == '__main__':
    main()
