"""Stigmergic swarm search on dynamic lattice landscapes, with a bacterial
foraging baseline."""

from swarmsearch.benchmarks import BenchmarkFunction, GaussianMixtureLandscape, evaluate, get_function, passino_landscape
from swarmsearch.habitat import Domain2D, Goal, Habitat, ScheduleEvent, apply_schedule, neighbors8, sample_function
from swarmsearch.ssa import ColonyState, PheromoneField, SsaParams, run_ssa, step_colony

__all__ = [
    "BenchmarkFunction",
    "ColonyState",
    "Domain2D",
    "GaussianMixtureLandscape",
    "Goal",
    "Habitat",
    "PheromoneField",
    "ScheduleEvent",
    "SsaParams",
    "apply_schedule",
    "evaluate",
    "get_function",
    "neighbors8",
    "passino_landscape",
    "run_ssa",
    "sample_function",
    "step_colony",
]

__version__ = "0.1.0"
