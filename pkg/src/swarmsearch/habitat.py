"""Toroidal altitude lattices sampled from benchmark functions, and the
scripted schedule of landscape/goal switches applied to them."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from swarmsearch.benchmarks import BenchmarkFunction, get_function
from swarmsearch.domain import Domain2D, Goal

__all__ = [
    "DIRECTIONS",
    "local_extrema",
    "ChangeFlags",
    "Domain2D",
    "Goal",
    "Habitat",
    "ScheduleEvent",
    "apply_schedule",
    "cell_centers",
    "neighbors8",
    "sample_function",
    "validate_schedule",
]

# Compass offsets (dx, dy), clockwise from North; +y is North.  A heading is an
# index into this table, and so is the position of a cell in neighbors8().
DIRECTIONS = np.array(
    [(0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1)],
    dtype=np.int64,
)
DIRECTION_NAMES = ("N", "NE", "E", "SE", "S", "SW", "W", "NW")


@dataclass(frozen=True, eq=False)
class Habitat:
    """Altitude lattice indexed ``altitude[cx, cy]`` with wrap-around moves.

    Rows of the array run along x (cell column ``cx``), columns along y.
    """

    fn_id: str
    domain: Domain2D
    altitude: np.ndarray
    goal: Goal = Goal.MAXIMIZE

    @property
    def width(self) -> int:
        return self.altitude.shape[0]

    @property
    def height(self) -> int:
        return self.altitude.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.altitude.shape

    def point(self, cx: int, cy: int) -> tuple[float, float]:
        xs, ys = cell_centers(self.domain, self.width, self.height)
        return float(xs[cx]), float(ys[cy])

    def nearest_cell(self, x: float, y: float) -> tuple[int, int]:
        cx = int(np.floor((x - self.domain.x_min) / self.domain.width * self.width))
        cy = int(np.floor((y - self.domain.y_min) / self.domain.height * self.height))
        return min(max(cx, 0), self.width - 1), min(max(cy, 0), self.height - 1)

    def with_goal(self, goal: Goal) -> Habitat:
        return dataclasses.replace(self, goal=goal)


def cell_centers(domain: Domain2D, width: int, height: int) -> tuple[np.ndarray, np.ndarray]:
    xs = domain.x_min + (np.arange(width) + 0.5) * (domain.width / width)
    ys = domain.y_min + (np.arange(height) + 0.5) * (domain.height / height)
    return xs, ys


def sample_function(
    fn: str | BenchmarkFunction,
    domain: Domain2D | None = None,
    width: int = 100,
    height: int = 100,
    goal: Goal = Goal.MAXIMIZE,
) -> Habitat:
    """Evaluate ``fn`` at every cell center of a ``width`` x ``height`` lattice.

    ``domain`` defaults to the function's own default domain.  Raises
    ``KeyError`` for an unknown id and ``ValueError`` if any sample is not
    finite.
    """
    bench = get_function(fn) if isinstance(fn, str) else fn
    if width < 3 or height < 3:
        raise ValueError(f"lattice must be at least 3x3, got {width}x{height}")
    domain = domain or bench.default_domain
    xs, ys = cell_centers(domain, width, height)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    z = np.asarray(bench.evaluator(gx, gy), dtype=float)
    bad = np.argwhere(~np.isfinite(z))
    if len(bad):
        cx, cy = bad[0]
        raise ValueError(f"{bench.id} is not finite at cell ({cx}, {cy}) = ({xs[cx]!r}, {ys[cy]!r})")
    z.setflags(write=False)
    return Habitat(bench.id, domain, z, goal)


def neighbors8(cell: tuple[int, int], width: int, height: int) -> list[tuple[int, int]]:
    """The eight wrapped neighbors of ``cell``, clockwise from North."""
    cx, cy = cell
    if not (0 <= cx < width and 0 <= cy < height):
        raise ValueError(f"cell {cell} outside {width}x{height} lattice")
    return [((cx + dx) % width, (cy + dy) % height) for dx, dy in DIRECTIONS.tolist()]


@dataclass(frozen=True)
class ScheduleEvent:
    at_step: int
    new_function: str | None = None
    new_goal: Goal | None = None
    domain: Domain2D | None = None

    def __post_init__(self):
        if self.at_step < 1:
            raise ValueError(f"schedule step must be positive, got {self.at_step}")
        if self.new_function is None and self.new_goal is None:
            raise ValueError(f"event at t={self.at_step} changes neither function nor goal")


class ChangeFlags(NamedTuple):
    landscape_changed: bool = False
    goal_changed: bool = False

    def __bool__(self):
        return self.landscape_changed or self.goal_changed


def validate_schedule(events: Sequence[ScheduleEvent], t_max: int | None = None) -> None:
    steps = [e.at_step for e in events]
    if len(set(steps)) != len(steps):
        dupes = sorted({s for s in steps if steps.count(s) > 1})
        raise ValueError(f"duplicate schedule steps: {dupes}")
    if steps != sorted(steps):
        raise ValueError("schedule events must be ordered by step")
    if t_max is not None and steps and steps[-1] > t_max:
        raise ValueError(f"schedule event at t={steps[-1]} is past t_max={t_max}")


def apply_schedule(habitat: Habitat, events: Sequence[ScheduleEvent], t: int) -> tuple[Habitat, ChangeFlags]:
    """Apply the event firing at step ``t``, if any.

    A new function is sampled over the event's domain, falling back to that
    function's default domain, at the current lattice size.
    """
    validate_schedule(events)
    for event in events:
        if event.at_step == t:
            break
    else:
        return habitat, ChangeFlags()

    goal = event.new_goal if event.new_goal is not None else habitat.goal
    landscape_changed = event.new_function is not None
    if landscape_changed:
        habitat = sample_function(event.new_function, event.domain, habitat.width, habitat.height, goal)
    else:
        habitat = habitat.with_goal(goal)
    return habitat, ChangeFlags(landscape_changed, event.new_goal is not None)


def local_extrema(altitude: np.ndarray, kind: Goal = Goal.MINIMIZE) -> np.ndarray:
    """Boolean mask of cells strictly below (MINIMIZE) or above (MAXIMIZE) all
    eight wrapped neighbors."""
    z = np.asarray(altitude)
    mask = np.ones(z.shape, dtype=bool)
    for dx, dy in DIRECTIONS.tolist():
        neighbor = np.roll(z, shift=(-dx, -dy), axis=(0, 1))
        mask &= (z < neighbor) if kind is Goal.MINIMIZE else (z > neighbor)
    return mask
