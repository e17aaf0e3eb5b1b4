"""Swarm Search Algorithm: ants on a toroidal altitude lattice, steered by a
shared pheromone field that they reinforce in proportion to altitude.

One step, per ant and in freshly shuffled order: weigh the eight neighbors by
pheromone sensitivity times a turning penalty, move to a free one (or stay
put when all are taken), then deposit pheromone on the arrival cell.  When
every ant has moved the whole field evaporates once.

The inner loop is compiled with numba.  All randomness comes from a numpy
``Generator`` owned by the colony, consumed as ``2 * n_ants`` uniforms per
step (first half shuffles the ant order, second half picks the moves), so
running ``n`` single steps and one ``n``-step block give identical results.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numba
import numpy as np

from swarmsearch.domain import Goal
from swarmsearch.habitat import DIRECTIONS, Habitat, ScheduleEvent, apply_schedule, validate_schedule
from swarmsearch.metrics import MetricsRecord, OptimumView, default_radius

DEFAULT_DIRECTION_WEIGHTS = (1.0, 1.0 / 2.0, 1.0 / 4.0, 1.0 / 12.0, 1.0 / 20.0)

EVAPORATION_MODES = ("rate", "retention", "subtract")


@dataclass(frozen=True)
class SsaParams:
    """Colony tunables.

    ``evaporation="rate"`` multiplies the field by ``1 - k`` each step,
    ``"retention"`` multiplies it by ``k`` and ``"subtract"`` removes ``k`` from
    every cell, flooring at zero.  ``reset_extremes`` controls whether
    the colony's running altitude extremes are rebuilt when the landscape is
    replaced mid-run.
    """

    n_ants: int = 3000
    t_max: int = 1000
    k: float = 0.015
    eta: float = 0.07
    beta: float = 3.5
    gamma: float = 0.2
    p: float = 1.93
    direction_weights: tuple[float, ...] = DEFAULT_DIRECTION_WEIGHTS
    rng_seed: int = 0
    evaporation: str = "rate"
    reset_extremes: bool = True

    def __post_init__(self):
        if self.n_ants < 1:
            raise ValueError(f"n_ants must be positive, got {self.n_ants}")
        if self.t_max < 0:
            raise ValueError(f"t_max must be non-negative, got {self.t_max}")
        if not 0.0 <= self.k <= 1.0:
            raise ValueError(f"k outside [0,1]: {self.k}")
        for name in ("eta", "beta", "gamma", "p"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be finite and non-negative, got {value}")
        if len(self.direction_weights) != 5 or any(w < 0 or not math.isfinite(w) for w in self.direction_weights):
            raise ValueError(f"direction_weights needs 5 non-negative reals, got {self.direction_weights}")
        if self.evaporation not in EVAPORATION_MODES:
            raise ValueError(f"evaporation must be one of {EVAPORATION_MODES}, got {self.evaporation!r}")

    @property
    def evaporation_terms(self) -> tuple[float, float]:
        """(factor, offset) such that one evaporation maps v to max(0, v*factor - offset)."""
        if self.evaporation == "rate":
            return 1.0 - self.k, 0.0
        if self.evaporation == "retention":
            return self.k, 0.0
        return 1.0, self.k

    def replace(self, **changes) -> SsaParams:
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class AntState:
    cell: tuple[int, int]
    heading: int


class PheromoneField:
    """Non-negative density per cell, indexed ``values[cx, cy]``."""

    def __init__(self, values: np.ndarray):
        values = np.ascontiguousarray(values, dtype=np.float64)
        if values.ndim != 2:
            raise ValueError("pheromone field must be 2-D")
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise ValueError("pheromone densities must be finite and non-negative")
        self.values = values

    @classmethod
    def zeros(cls, width: int, height: int) -> PheromoneField:
        return cls(np.zeros((width, height)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def total(self) -> float:
        return float(self.values.sum())

    def copy(self) -> PheromoneField:
        return PheromoneField(self.values.copy())


# -- equations ---------------------------------------------------------------


def pheromone_weight(sigma: float, beta: float, gamma: float) -> float:
    """Sensing weight ``(1 + sigma / (1 + gamma*sigma)) ** beta``; saturates at
    ``(1 + 1/gamma) ** beta`` for large densities."""
    if sigma < 0:
        raise ValueError(f"pheromone density must be non-negative, got {sigma}")
    return (1.0 + sigma / (1.0 + gamma * sigma)) ** beta


def direction_delta(heading: int, candidate: int) -> int:
    """Turn size in 45-degree steps between two compass indices (0 ahead, 4 U-turn)."""
    d = abs(heading - candidate) % 8
    return min(d, 8 - d)


def deposit_amount(z: float, z_min_seen: float, z_max_seen: float, goal: Goal, eta: float, p: float) -> float:
    """Pheromone dropped on a cell of altitude ``z``.

    ``eta`` plus ``p`` times the cell's distance from the worst altitude seen
    so far, relative to the seen altitude range.  A flat range gives ``eta``.
    """
    span = abs(z_max_seen - z_min_seen)
    if span == 0.0:
        return eta
    ref = z_min_seen if goal is Goal.MAXIMIZE else z_max_seen
    return eta + p * abs(z - ref) / span


def evaporate(pher: PheromoneField, k: float, mode: str = "rate") -> PheromoneField:
    if not 0.0 <= k <= 1.0:
        raise ValueError(f"k outside [0,1]: {k}")
    if mode == "rate":
        return PheromoneField(pher.values * (1.0 - k))
    if mode == "retention":
        return PheromoneField(pher.values * k)
    if mode == "subtract":
        return PheromoneField(np.maximum(pher.values - k, 0.0))
    raise ValueError(f"unknown evaporation mode {mode!r}")


def transition_probabilities(
    ant: AntState,
    pher: PheromoneField,
    occupied: Callable[[tuple[int, int]], bool],
    params: SsaParams,
) -> dict[tuple[int, int], float]:
    """Move distribution over the free neighbors of ``ant``; empty when blocked."""
    width, height = pher.shape
    cx, cy = ant.cell
    weights = {}
    for d, (dx, dy) in enumerate(DIRECTIONS.tolist()):
        cell = ((cx + dx) % width, (cy + dy) % height)
        if occupied(cell):
            continue
        w = pheromone_weight(float(pher.values[cell]), params.beta, params.gamma)
        weights[cell] = w * params.direction_weights[direction_delta(ant.heading, d)]
    total = sum(weights.values())
    if total <= 0.0:
        return {}
    return {cell: w / total for cell, w in weights.items()}


# -- compiled colony update ----------------------------------------------------


@numba.njit(cache=True)
def _evaporate_inplace(values, factor, offset):
    width, height = values.shape
    for i in range(width):
        for j in range(height):
            v = values[i, j] * factor - offset
            values[i, j] = v if v > 0.0 else 0.0


@numba.njit(cache=True)
def _colony_steps(ax, ay, hd, occ, values, altitude, uniforms, dir_dx, dir_dy, dir_weight,
                  beta, gamma, eta, p, maximize, extremes, evap_factor, evap_offset):
    n = ax.shape[0]
    width, height = values.shape
    order = np.empty(n, dtype=np.int64)
    w = np.empty(8)
    n_steps = uniforms.shape[0]
    for s in range(n_steps):
        u = uniforms[s]
        for i in range(n):
            order[i] = i
        for i in range(n - 1, 0, -1):
            j = int(u[i] * (i + 1))
            tmp = order[i]
            order[i] = order[j]
            order[j] = tmp
        for pos in range(n):
            a = order[pos]
            x = ax[a]
            y = ay[a]
            h = hd[a]
            total = 0.0
            for d in range(8):
                nx = (x + dir_dx[d]) % width
                ny = (y + dir_dy[d]) % height
                if occ[nx, ny]:
                    w[d] = 0.0
                else:
                    sigma = values[nx, ny]
                    turn = abs(h - d)
                    if turn > 4:
                        turn = 8 - turn
                    w[d] = (1.0 + sigma / (1.0 + gamma * sigma)) ** beta * dir_weight[turn]
                total += w[d]
            if total > 0.0:
                r = u[n + pos] * total
                acc = 0.0
                chosen = -1
                for d in range(8):
                    if w[d] > 0.0:
                        chosen = d
                        acc += w[d]
                        if r < acc:
                            break
                occ[x, y] = False
                x = (x + dir_dx[chosen]) % width
                y = (y + dir_dy[chosen]) % height
                occ[x, y] = True
                ax[a] = x
                ay[a] = y
                hd[a] = chosen
            z = altitude[x, y]
            if z < extremes[0]:
                extremes[0] = z
            if z > extremes[1]:
                extremes[1] = z
            span = extremes[1] - extremes[0]
            if span > 0.0:
                if maximize:
                    gain = abs(z - extremes[0])
                else:
                    gain = abs(z - extremes[1])
                values[x, y] += eta + p * gain / span
            else:
                values[x, y] += eta
        _evaporate_inplace(values, evap_factor, evap_offset)


class PlacementError(ValueError):
    pass


@dataclass
class ColonyState:
    """Mutable colony: ant positions/headings, occupancy, field, running
    altitude extremes, step counter and the colony's random stream."""

    ax: np.ndarray
    ay: np.ndarray
    heading: np.ndarray
    occupied: np.ndarray
    field: PheromoneField
    z_min_seen: float
    z_max_seen: float
    rng: np.random.Generator
    t: int = 0

    @classmethod
    def place(cls, habitat: Habitat, params: SsaParams, rng: np.random.Generator | None = None) -> ColonyState:
        """Random distinct cells and uniform random headings, field empty."""
        width, height = habitat.shape
        n_cells = width * height
        if params.n_ants >= n_cells:
            raise PlacementError(f"{params.n_ants} ants do not fit on {width}x{height} with a free cell to spare")
        rng = rng if rng is not None else np.random.default_rng(params.rng_seed)
        flat = rng.choice(n_cells, size=params.n_ants, replace=False)
        heading = rng.integers(0, 8, size=params.n_ants)
        ax, ay = np.divmod(flat, height)
        occupied = np.zeros((width, height), dtype=np.bool_)
        occupied[ax, ay] = True
        z = habitat.altitude[ax, ay]
        return cls(
            ax=ax.astype(np.int64),
            ay=ay.astype(np.int64),
            heading=heading.astype(np.int64),
            occupied=occupied,
            field=PheromoneField.zeros(width, height),
            z_min_seen=float(z.min()),
            z_max_seen=float(z.max()),
            rng=rng,
        )

    @property
    def n_ants(self) -> int:
        return len(self.ax)

    @property
    def ants(self) -> list[AntState]:
        return [AntState((int(x), int(y)), int(h)) for x, y, h in zip(self.ax, self.ay, self.heading)]

    def reset_extremes(self, habitat: Habitat) -> None:
        """Rebuild the running extremes from the altitudes under the ants."""
        z = habitat.altitude[self.ax, self.ay]
        self.z_min_seen = float(z.min())
        self.z_max_seen = float(z.max())

    def check(self) -> None:
        """Assert the structural invariants; used by tests."""
        cells = set(zip(self.ax.tolist(), self.ay.tolist()))
        assert len(cells) == self.n_ants, "two ants share a cell"
        assert int(self.occupied.sum()) == self.n_ants, "occupancy map out of sync"
        assert all(self.occupied[c] for c in cells), "occupancy map out of sync"
        assert np.all(np.isfinite(self.field.values)) and np.all(self.field.values >= 0)
        assert self.z_min_seen <= self.z_max_seen


_DIR_DX = np.ascontiguousarray(DIRECTIONS[:, 0])
_DIR_DY = np.ascontiguousarray(DIRECTIONS[:, 1])


def _advance(state: ColonyState, habitat: Habitat, params: SsaParams, n_steps: int) -> None:
    if n_steps <= 0:
        return
    uniforms = state.rng.random((n_steps, 2 * state.n_ants))
    extremes = np.array([state.z_min_seen, state.z_max_seen])
    _colony_steps(
        state.ax, state.ay, state.heading, state.occupied, state.field.values,
        np.ascontiguousarray(habitat.altitude), uniforms, _DIR_DX, _DIR_DY,
        np.asarray(params.direction_weights, dtype=np.float64),
        float(params.beta), float(params.gamma), float(params.eta), float(params.p),
        habitat.goal is Goal.MAXIMIZE, extremes, *params.evaporation_terms,
    )
    state.z_min_seen, state.z_max_seen = float(extremes[0]), float(extremes[1])
    state.t += n_steps


def step_colony(state: ColonyState, habitat: Habitat, params: SsaParams) -> ColonyState:
    """Advance the colony by one step in place and return it."""
    _advance(state, habitat, params, 1)
    return state


def advance(state: ColonyState, habitat: Habitat, params: SsaParams, n_steps: int, chunk: int = 4096) -> ColonyState:
    """``n_steps`` calls of :func:`step_colony` on a fixed habitat, without telemetry."""
    while n_steps > 0:
        block = min(chunk, n_steps)
        _advance(state, habitat, params, block)
        n_steps -= block
    return state


# -- full runs -------------------------------------------------------------------

# observer(t, state, habitat, observed_field, record); record is None at t=0.
Observer = Callable[[int, ColonyState, Habitat, np.ndarray, "MetricsRecord | None"], None]


@dataclass
class SsaRun:
    state: ColonyState
    habitat: Habitat
    records: list[MetricsRecord] = field(default_factory=list)
    switches: list[tuple[int, bool, bool]] = field(default_factory=list)


def run_ssa(
    habitat: Habitat,
    params: SsaParams,
    schedule: Sequence[ScheduleEvent] = (),
    observers: Sequence[Observer] = (),
    radius: float | None = None,
) -> SsaRun:
    """Place the colony and run ``t_max`` steps, applying the schedule event
    (if any) at the start of each step.  Telemetry and observers see the state
    at the end of each step, after evaporation."""
    validate_schedule(schedule, params.t_max)
    radius = default_radius(*habitat.shape) if radius is None else radius
    state = ColonyState.place(habitat, params)
    run = SsaRun(state, habitat)
    for obs in observers:
        obs(0, state, habitat, state.field.values, None)
    view = OptimumView(habitat, radius)
    for t in range(1, params.t_max + 1):
        habitat, flags = apply_schedule(habitat, schedule, t)
        if flags:
            run.switches.append((t, flags.landscape_changed, flags.goal_changed))
            if flags.landscape_changed and params.reset_extremes:
                state.reset_extremes(habitat)
            view = OptimumView(habitat, radius)
        _advance(state, habitat, params, 1)
        record = view.record(t, habitat.altitude, state.ax, state.ay, state.field.values)
        run.records.append(record)
        for obs in observers:
            obs(t, state, habitat, state.field.values, record)
    run.habitat = habitat
    return run
