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

from chargezero.asymptotes import asymptote_directions
from chargezero.errors import ChargeZeroError, ConfigError, exit_code
from chargezero.field import Rectangle
from chargezero.report import (
    ContourConfig,
    RunSettings,
    load_config,
    plot_level_sets,
    sample_level_sets,
    write_level_sets,
)
from chargezero.utils import check_environment, logger


def contour(config: DictConfig) -> int:
    if config.run.config_path is None:
        raise ConfigError("run.config_path: a run configuration file is required")

    run = load_config(to_absolute_path(config.run.config_path))
    window = Rectangle.square(config.contour.window_radius)

    # sampled in the coordinates of the config file
    samples = sample_level_sets(run.original, window, config.contour.grid_n, config.contour.tolerance)
    prefix = os.path.join(os.getcwd(), config.contour.output_prefix)
    write_level_sets(samples, prefix)

    if config.contour.plot:
        directions = asymptote_directions(run.system)
        slopes = {
            'X': [direction.approximate_slope() for direction in directions.directions_X],
            'Y': [direction.approximate_slope() for direction in directions.directions_Y],
        }
        plot_level_sets(samples, window, f"{prefix}.png", slopes=slopes)

    return 0


cs = ConfigStore.instance()
cs.store(group="run", name="base", node=RunSettings)
cs.store(group="contour", name="base", node=ContourConfig)


@hydra.main(config_path=os.path.join('..', "configs"), config_name="contour")
def main(config: DictConfig) -> None:
    warnings.filterwarnings('ignore')
    logger.info(OmegaConf.to_yaml(config))
    check_environment()

    try:
        status = contour(config)
    except ChargeZeroError as error:
        logger.error(f"{type(error).__name__}: {error}")
        status = exit_code(error)

    sys.exit(status)


if __name__ == '__main__':
    main()
