"""Bacterial foraging optimization on a continuous 2-D landscape (minimization).

Loop structure: elimination-dispersal events, each holding ``n_re``
reproduction generations of ``nc`` chemotactic steps.  In a chemotactic step
every bacterium tumbles to a random unit direction, moves ``step_size``, and
keeps swimming that way (up to ``ns`` extra moves) while the landscape cost
plus the cell-to-cell swarming term strictly improves.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from swarmsearch.domain import Domain2D

Landscape = Callable[[float, float], float]


@dataclass(frozen=True)
class BfoaParams:
    s: int = 50
    nc: int = 100
    ns: int = 4
    n_re: int = 4
    n_ed: int = 1
    p_ed: float = 0.25
    step_size: float | None = None  # None: 0.1 * domain width / 30
    d_attract: float = 0.1
    w_attract: float = 0.2
    h_repel: float = 0.1
    w_repel: float = 10.0
    rng_seed: int = 0

    def __post_init__(self):
        if self.s < 2 or self.s % 2:
            raise ValueError(f"s (population size) must be even and >= 2, got {self.s}")
        for name in ("nc", "n_re", "n_ed"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if self.ns < 0:
            raise ValueError("ns must be non-negative")
        if not 0.0 <= self.p_ed <= 1.0:
            raise ValueError(f"p_ed outside [0,1]: {self.p_ed}")
        if self.step_size is not None and self.step_size < 0:
            raise ValueError("step_size must be non-negative")

    @property
    def swarm_coeffs(self) -> tuple[float, float, float, float]:
        return (self.d_attract, self.w_attract, self.h_repel, self.w_repel)

    def resolved_step(self, domain: Domain2D) -> float:
        return self.step_size if self.step_size is not None else 0.1 * domain.width / 30.0

    def replace(self, **changes) -> BfoaParams:
        return dataclasses.replace(self, **changes)


@dataclass
class Bacterium:
    position: np.ndarray
    health: float = 0.0


def swarming_cost(position, population: np.ndarray, coeffs: Sequence[float]) -> float:
    """Attraction/repulsion sum over ``population`` (an ``(s, 2)`` array)."""
    d_att, w_att, h_rep, w_rep = coeffs
    dx = population[:, 0] - position[0]
    dy = population[:, 1] - position[1]
    sq = dx * dx + dy * dy
    return float(np.sum(h_rep * np.exp(-w_rep * sq) - d_att * np.exp(-w_att * sq)))


def _clamp(point: np.ndarray, domain: Domain2D) -> np.ndarray:
    return np.array([min(max(float(point[0]), domain.x_min), domain.x_max),
                     min(max(float(point[1]), domain.y_min), domain.y_max)])


@dataclass
class StepResult:
    bacterium: Bacterium
    evaluations: int
    swims: int
    best_point: np.ndarray
    best_cost: float


def chemotactic_step(
    bacterium: Bacterium,
    population: np.ndarray,
    landscape: Landscape,
    params: BfoaParams,
    domain: Domain2D,
    rng: np.random.Generator,
    swarming: bool = True,
) -> StepResult:
    """One tumble plus swim run.  ``population`` is the frozen snapshot used
    for the swarming term.  The best raw landscape cost among visited points
    is reported alongside."""
    step = params.resolved_step(domain)
    coeffs = params.swarm_coeffs

    def combined(point):
        raw = float(landscape(float(point[0]), float(point[1])))
        return raw, raw + (swarming_cost(point, population, coeffs) if swarming else 0.0)

    _, j_last = combined(bacterium.position)
    angle = rng.uniform(0.0, 2.0 * math.pi)
    direction = np.array([math.cos(angle), math.sin(angle)])

    pos = _clamp(bacterium.position + step * direction, domain)
    raw, j = combined(pos)
    evaluations = 2
    health = bacterium.health + j
    best_point, best_cost = pos, raw
    swims = 0
    while swims < params.ns and j < j_last:
        j_last = j
        pos = _clamp(pos + step * direction, domain)
        raw, j = combined(pos)
        evaluations += 1
        swims += 1
        health += j
        if raw < best_cost:
            best_point, best_cost = pos, raw
    return StepResult(Bacterium(pos, health), evaluations, swims, best_point, best_cost)


def reproduce(population: Sequence[Bacterium]) -> list[Bacterium]:
    """Healthiest half (lowest accumulated cost, stable order) survives twice;
    health resets."""
    s = len(population)
    if s % 2:
        raise ValueError(f"reproduction needs an even population, got {s}")
    order = np.argsort([b.health for b in population], kind="stable")
    survivors = [population[i] for i in order[: s // 2]]
    return [Bacterium(b.position.copy(), 0.0) for b in survivors + survivors]


def disperse(population: Sequence[Bacterium], p_ed: float, domain: Domain2D, rng: np.random.Generator) -> list[Bacterium]:
    out = []
    for b in population:
        if rng.random() < p_ed:
            out.append(Bacterium(_random_point(domain, rng), 0.0))
        else:
            out.append(b)
    return out


def _random_point(domain: Domain2D, rng: np.random.Generator) -> np.ndarray:
    return np.array([rng.uniform(domain.x_min, domain.x_max), rng.uniform(domain.y_min, domain.y_max)])


@dataclass(frozen=True)
class TraceRecord:
    global_step: int
    best_x: float
    best_y: float
    best_cost: float


@dataclass
class BfoaRun:
    trace: list[TraceRecord] = field(default_factory=list)
    snapshots: dict[int, np.ndarray] = field(default_factory=dict)
    population_sizes: list[int] = field(default_factory=list)
    evaluations: int = 0
    population: list[Bacterium] = field(default_factory=list)


def run_bfoa(
    landscape: Landscape,
    domain: Domain2D,
    params: BfoaParams,
    snapshot_steps: Sequence[int] = (),
    observers: Sequence[Callable[[int, list[Bacterium], TraceRecord], None]] = (),
) -> BfoaRun:
    """Full elimination-dispersal / reproduction / chemotaxis loop.

    Emits one best-so-far record per chemotactic step on a global counter
    ``1 .. n_ed * n_re * nc``.  ``snapshot_steps`` collects bacterial
    positions (an ``(s, 2)`` array) after the given global steps; step 0 is
    the initial population.
    """
    rng = np.random.default_rng(params.rng_seed)
    population = [Bacterium(_random_point(domain, rng)) for _ in range(params.s)]
    run = BfoaRun()
    wanted = set(snapshot_steps)
    if 0 in wanted:
        run.snapshots[0] = np.array([b.position for b in population])

    costs = [float(landscape(float(b.position[0]), float(b.position[1]))) for b in population]
    i_best = int(np.argmin(costs))
    best_point, best_cost = population[i_best].position.copy(), costs[i_best]
    run.evaluations += len(population)

    t = 0
    for _ in range(params.n_ed):
        for _ in range(params.n_re):
            for _ in range(params.nc):
                t += 1
                snapshot = np.array([b.position for b in population])
                for i, b in enumerate(population):
                    res = chemotactic_step(b, snapshot, landscape, params, domain, rng)
                    population[i] = res.bacterium
                    run.evaluations += res.evaluations
                    if res.best_cost < best_cost:
                        best_point, best_cost = res.best_point.copy(), res.best_cost
                record = TraceRecord(t, float(best_point[0]), float(best_point[1]), float(best_cost))
                run.trace.append(record)
                if t in wanted:
                    run.snapshots[t] = np.array([b.position for b in population])
                for obs in observers:
                    obs(t, population, record)
            population = reproduce(population)
            run.population_sizes.append(len(population))
        population = disperse(population, params.p_ed, domain, rng)
        run.population_sizes.append(len(population))
    run.population = population
    return run
