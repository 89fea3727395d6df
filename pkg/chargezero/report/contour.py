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
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from chargezero.errors import PreconditionError
from chargezero.field.rectangle import Rectangle
from chargezero.field.system import ChargeSystem
from chargezero.utils import logger

MIN_GRID = 16
MAX_REFINEMENTS = 60

# corner order: 0 = (i, j), 1 = (i + 1, j), 2 = (i + 1, j + 1), 3 = (i, j + 1); index bits are corner 0 first.
# Saddles carry two alternatives, chosen by the sign at the cell center.
MARCHING_SQUARES_TABLE = [
    (False, []),  # 0000
    (False, [((0, 3), (2, 3))]),  # 0001
    (False, [((1, 2), (2, 3))]),  # 0010
    (False, [((0, 3), (1, 2))]),  # 0011
    (False, [((0, 1), (1, 2))]),  # 0100
    (True, ([((0, 1), (1, 2)), ((0, 3), (2, 3))], [((0, 1), (0, 3)), ((1, 2), (2, 3))])),  # 0101
    (False, [((0, 1), (2, 3))]),  # 0110
    (False, [((0, 1), (0, 3))]),  # 0111
    (False, [((0, 1), (0, 3))]),  # 1000
    (False, [((0, 1), (2, 3))]),  # 1001
    (True, ([((0, 1), (0, 3)), ((1, 2), (2, 3))], [((0, 1), (1, 2)), ((0, 3), (2, 3))])),  # 1010
    (False, [((0, 1), (1, 2))]),  # 1011
    (False, [((0, 3), (1, 2))]),  # 1100
    (False, [((1, 2), (2, 3))]),  # 1101
    (False, [((0, 3), (2, 3))]),  # 1110
    (False, []),  # 1111
]

CORNER_OFFSETS = ((0, 0), (1, 0), (1, 1), (0, 1))


@dataclass
class CurveSample:
    """
    Sampled level set ``{component = 0}`` as polylines of float vertices.

    Args:
        component (str): ``X`` or ``Y``
        polylines (list): ``(n, 2)`` arrays of ``(x, y)`` vertices
        skipped_cells (list): grid cells left out because they hold a charge or a non-finite corner
        rejected_vertices (list): edge crossings still above the tolerance after refinement, left out of
            the polylines

    Every vertex of ``polylines`` has ``|component| < tolerance``.
    """
    component: str
    polylines: List[np.ndarray] = field(default_factory=list)
    skipped_cells: List[Tuple[int, int]] = field(default_factory=list)
    rejected_vertices: List[Tuple[float, float]] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        rows = [
            (polyline_id, float(x), float(y))
            for polyline_id, polyline in enumerate(self.polylines)
            for x, y in polyline
        ]
        return pd.DataFrame(rows, columns=['polyline_id', 'x', 'y'])

    def write_csv(self, path: str) -> None:
        self.to_frame().to_csv(path, index=False)
        logger.info(f"{len(self.polylines)} {self.component} polylines written to {path}")

    def vertices(self) -> np.ndarray:
        if not self.polylines:
            return np.zeros((0, 2))
        return np.concatenate(self.polylines)


def field_at(system: ChargeSystem, x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """ Floating-point ``(X, Y)`` at the points ``(x, y)``, elementwise over broadcast arrays. """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))
    X = np.zeros_like(x)
    Y = np.zeros_like(y)

    with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
        for charge in system:
            dx = x - float(charge.position)
            weight = float(charge.amplitude) / (dx * dx + y * y) ** 1.5
            X += dx * weight
            Y += y * weight

    return X, Y


def field_on_grid(system: ChargeSystem, xs: np.ndarray, ys: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """ Floating-point ``(X, Y)`` on the grid ``xs x ys``, indexed ``[i, j]`` for ``(xs[i], ys[j])``. """
    grid_x, grid_y = np.meshgrid(xs, ys, indexing='ij')
    return field_at(system, grid_x, grid_y)


def _index(values: Sequence[float]) -> int:
    n = 0
    for value in values:
        n = (n << 1) | int(value > 0)
    return n


def _lerp(p0: np.ndarray, p1: np.ndarray, v0: float, v1: float) -> np.ndarray:
    t = v0 / (v0 - v1) if v0 != v1 else 0.5
    t = min(max(t, 0.0), 1.0)
    return p0 * (1 - t) + t * p1


def _refine(
        evaluate: Callable[[np.ndarray], np.ndarray],
        starts: np.ndarray,
        ends: np.ndarray,
        start_values: np.ndarray,
        points: np.ndarray,
        tolerances: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Bisects each edge ``starts[k] -> ends[k]`` around its sign change until the component at the vertex
    drops below ``tolerances[k]``. Returns the refined vertices and a mask of the ones that made it.
    """
    points = points.copy()
    values = evaluate(points)
    lo, hi = starts.copy(), ends.copy()
    positive = start_values > 0

    for _ in range(MAX_REFINEMENTS):
        pending = ~(np.abs(values) < tolerances)
        if not pending.any():
            break

        middle = (lo[pending] + hi[pending]) / 2
        middle_values = evaluate(middle)
        same = (middle_values > 0) == positive[pending]

        indices = np.nonzero(pending)[0]
        lo[indices[same]] = middle[same]
        hi[indices[~same]] = middle[~same]
        points[pending] = middle
        values[pending] = middle_values

    return points, np.abs(values) < tolerances


def _chain(segments: List[Tuple[tuple, tuple]], points: Dict[tuple, np.ndarray]) -> List[np.ndarray]:
    """ Joins segments that share a grid edge into polylines. """
    neighbours = defaultdict(list)
    for index, (a, b) in enumerate(segments):
        neighbours[a].append(index)
        neighbours[b].append(index)

    used = [False] * len(segments)
    polylines = list()

    def walk(key, path):
        while True:
            following = [index for index in neighbours[key] if not used[index]]
            if not following:
                return
            index = following[0]
            used[index] = True
            a, b = segments[index]
            key = b if a == key else a
            path.append(key)

    # open chains start at an edge used once
    starts = [key for key, indices in neighbours.items() if len(indices) == 1]
    for key in sorted(starts) + sorted(neighbours):
        if all(used[index] for index in neighbours[key]):
            continue
        forward = [key]
        walk(key, forward)
        backward = [key]
        walk(key, backward)
        keys = backward[::-1] + forward[1:]
        polylines.append(np.array([points[k] for k in keys]))

    return polylines


def _contour(
        component: str,
        values: np.ndarray,
        xs: np.ndarray,
        ys: np.ndarray,
        blocked: np.ndarray,
        evaluate: Callable[[np.ndarray], np.ndarray],
        tolerance: Optional[float],
) -> CurveSample:
    sample = CurveSample(component)
    segments = list()
    edges = dict()

    # default tolerance: largest corner magnitude of the cell scaled by the cell diagonal over the window diagonal
    fraction = 1.0 / (len(xs) - 1)

    finite = np.isfinite(values)
    positive = values > 0
    corners = (positive[:-1, :-1], positive[1:, :-1], positive[1:, 1:], positive[:-1, 1:])
    mixed = ~((corners[0] == corners[1]) & (corners[1] == corners[2]) & (corners[2] == corners[3]))
    valid = finite[:-1, :-1] & finite[1:, :-1] & finite[1:, 1:] & finite[:-1, 1:] & ~blocked

    for i, j in zip(*np.nonzero(~valid)):
        sample.skipped_cells.append((int(i), int(j)))

    for i, j in zip(*np.nonzero(mixed & valid)):
        cell_values = [values[i + di, j + dj] for di, dj in CORNER_OFFSETS]
        cell_points = [np.array((xs[i + di], ys[j + dj])) for di, dj in CORNER_OFFSETS]
        cell_tolerance = tolerance if tolerance is not None else max(abs(v) for v in cell_values) * fraction
        saddle, cases = MARCHING_SQUARES_TABLE[_index(cell_values)]

        if saddle:
            center = np.array([((xs[i] + xs[i + 1]) / 2, (ys[j] + ys[j + 1]) / 2)])
            cases = cases[int(evaluate(center)[0] > 0)]

        for (a0, a1), (b0, b1) in cases:
            keys = list()
            for c0, c1 in ((a0, a1), (b0, b1)):
                n0 = (i + CORNER_OFFSETS[c0][0], j + CORNER_OFFSETS[c0][1])
                n1 = (i + CORNER_OFFSETS[c1][0], j + CORNER_OFFSETS[c1][1])
                key = (min(n0, n1), max(n0, n1))
                if key not in edges:
                    guess = _lerp(cell_points[c0], cell_points[c1], cell_values[c0], cell_values[c1])
                    edges[key] = (cell_points[c0], cell_points[c1], cell_values[c0], guess, cell_tolerance)
                keys.append(key)
            segments.append((keys[0], keys[1]))

    if not edges:
        return sample

    edge_keys = list(edges)
    starts, ends, start_values, guesses, tolerances = (np.array(column) for column in zip(*edges.values()))
    refined, accepted = _refine(evaluate, starts, ends, start_values, guesses, tolerances)

    points = {key: refined[k] for k, key in enumerate(edge_keys) if accepted[k]}
    sample.rejected_vertices = [(float(x), float(y)) for (x, y) in refined[~accepted]]
    if sample.rejected_vertices:
        logger.warning(f"{component}: {len(sample.rejected_vertices)} vertices above the contour tolerance dropped")

    segments = [(a, b) for a, b in segments if a in points and b in points]
    sample.polylines = _chain(segments, points)
    return sample


def sample_level_sets(
        system: ChargeSystem,
        window: Rectangle,
        grid_n: int = 512,
        tolerance: Optional[float] = None,
) -> Tuple[CurveSample, CurveSample]:
    """
    Marching-squares contours of ``{X = 0}`` and ``{Y = 0}`` on a ``grid_n x grid_n`` lattice over ``window``,
    with linear interpolation along cell edges. Cells holding a charge are skipped and listed.

    Each interpolated vertex is bisected along its edge until ``|component|`` falls below ``tolerance``;
    vertices that never do are dropped and listed. Without ``tolerance`` the bound of a cell is its
    largest corner magnitude divided by ``grid_n - 1``.
    """
    if grid_n < MIN_GRID:
        raise PreconditionError(f"grid_n should be at least {MIN_GRID}, got {grid_n}")
    if not window.has_area:
        raise PreconditionError(f"contour window {window.as_strings()} has no area")
    if tolerance is not None and not tolerance > 0:
        raise PreconditionError(f"contour tolerance should be positive, got {tolerance}")

    xs = np.linspace(float(window.x_lo), float(window.x_hi), grid_n)
    ys = np.linspace(float(window.y_lo), float(window.y_hi), grid_n)
    X, Y = field_on_grid(system, xs, ys)

    blocked = np.zeros((grid_n - 1, grid_n - 1), dtype=bool)
    for position in system.positions:
        if window.contains_point(position, 0):
            i = np.clip(np.searchsorted(xs, float(position)) - 1, 0, grid_n - 2)
            j = np.clip(np.searchsorted(ys, 0.0) - 1, 0, grid_n - 2)
            blocked[max(i - 1, 0):i + 2, max(j - 1, 0):j + 2] = True

    def evaluate(index: int) -> Callable[[np.ndarray], np.ndarray]:
        def value(points: np.ndarray) -> np.ndarray:
            return field_at(system, points[:, 0], points[:, 1])[index]
        return value

    samples = (
        _contour('X', X, xs, ys, blocked, evaluate(0), tolerance),
        _contour('Y', Y, xs, ys, blocked, evaluate(1), tolerance),
    )

    for sample in samples:
        if sample.skipped_cells:
            logger.info(f"{sample.component}: skipped {len(sample.skipped_cells)} cells around charges")

    return samples


def write_level_sets(samples: Sequence[CurveSample], prefix: str) -> List[str]:
    """ One CSV per component, ``<prefix>_X.csv`` and ``<prefix>_Y.csv``, columns ``polyline_id, x, y``. """
    directory = os.path.dirname(prefix)
    if directory:
        os.makedirs(directory, exist_ok=True)

    paths = list()
    for sample in samples:
        path = f"{prefix}_{sample.component}.csv"
        sample.write_csv(path)
        paths.append(path)
    return paths


def plot_level_sets(
        samples: Sequence[CurveSample],
        window: Rectangle,
        path: str,
        slopes: Optional[Dict[str, List[Optional[float]]]] = None,
) -> None:
    """ Renders the sampled curves, and the asymptotic direction rays when ``slopes`` is given, to a PNG. """
    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt

    colors = {'X': 'tab:blue', 'Y': 'tab:red'}
    fig, ax = plt.subplots(figsize=(8, 8))

    for sample in samples:
        for index, polyline in enumerate(sample.polylines):
            label = f"{{{sample.component} = 0}}" if index == 0 else None
            ax.plot(polyline[:, 0], polyline[:, 1], color=colors[sample.component], linewidth=0.8, label=label)

    reach = float(max(abs(window.x_lo), abs(window.x_hi), abs(window.y_lo), abs(window.y_hi)))
    for component, values in (slopes or dict()).items():
        for slope in values:
            if slope is None:
                ax.axvline(0.0, color=colors[component], linestyle='--', linewidth=0.6)
            else:
                ax.plot([-reach, reach], [-reach * slope, reach * slope],
                        color=colors[component], linestyle='--', linewidth=0.6)

    ax.set_xlim(float(window.x_lo), float(window.x_hi))
    ax.set_ylim(float(window.y_lo), float(window.y_hi))
    ax.set_aspect('equal')
    ax.legend(loc='upper right')
    fig.savefig(path, dpi=150)
    plt.close(fig)
    logger.info(f"level sets plotted to {path}")
