"""Two-variable benchmark landscapes.

Classical test functions (De Jong sphere, weighted sphere, Schwefel 1.2,
Rosenbrock, Rastrigin, Schwefel sine), the peak/valley pair ``F0a``/``F0b``
and Gaussian-mixture nutrient landscapes (``P1``, ``P2``).  Every evaluator
accepts scalars or numpy arrays and broadcasts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from swarmsearch.domain import Domain2D, Goal

Evaluator = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class KnownOptimum:
    point: tuple[float, float]
    value: float
    kind: Goal


@dataclass(frozen=True)
class BenchmarkFunction:
    id: str
    evaluator: Evaluator
    default_domain: Domain2D
    known_optimum: KnownOptimum | None = None
    description: str = ""
    arity: int = 2

    def __call__(self, x, y):
        return self.evaluator(x, y)


@dataclass(frozen=True)
class GaussianMixtureLandscape:
    """``plateau + sum(w * exp(-((x-cx)**2 + (y-cy)**2) / spread))``."""

    terms: tuple[tuple[float, tuple[float, float], float], ...]
    plateau: float = 0.0

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a Gaussian mixture needs at least one term")
        for weight, center, spread in self.terms:
            if not spread > 0:
                raise ValueError(f"spread must be positive, got {spread}")
            if not np.all(np.isfinite([weight, *center])):
                raise ValueError("term weights and centers must be finite")

    def __call__(self, x, y):
        if isinstance(x, (float, int)) and isinstance(y, (float, int)):
            z = float(self.plateau)
            for weight, (cx, cy), spread in self.terms:
                z += weight * math.exp(-((x - cx) ** 2 + (y - cy) ** 2) / spread)
            return z
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        z = np.full(np.broadcast(x, y).shape, float(self.plateau))
        for weight, (cx, cy), spread in self.terms:
            z = z + weight * np.exp(-((x - cx) ** 2 + (y - cy) ** 2) / spread)
        return z if z.ndim else float(z)


def _f0a(x, y):
    return x * np.exp(-0.2 * (x * x + y * y))


def _f0b(x, y):
    return -_f0a(x, y)


def _f1(x, y):
    return x * x + y * y


def _f2(x, y):
    return 1.0 * x * x + 2.0 * y * y


def _f3(x, y):
    # Schwefel 1.2: sum of squared partial sums.
    return x * x + (x + y) ** 2


def _f4(x, y):
    return 100.0 * (y - x * x) ** 2 + (1.0 - x) ** 2


def _f5(x, y):
    return 20.0 + (x * x - 10.0 * np.cos(2.0 * np.pi * x)) + (y * y - 10.0 * np.cos(2.0 * np.pi * y))


def _f6(x, y):
    return -x * np.sin(np.sqrt(np.abs(x))) - y * np.sin(np.sqrt(np.abs(y)))


SCHWEFEL_ARGMIN = 420.9687
# Direct evaluation of _f6 at (SCHWEFEL_ARGMIN, SCHWEFEL_ARGMIN); n * 418.9829 in magnitude.
SCHWEFEL_MIN_2D = -837.9657745448674

_F0A_PEAK_X = float(np.sqrt(2.5))
_F0A_PEAK = float(_F0A_PEAK_X * np.exp(-0.5))

# Nutrient landscape with several peaks and pits; the global minimum sits near (15, 5).
P1_TERMS = (
    (5.0, (15.0, 20.0), 10.0),
    (-2.0, (20.0, 15.0), 12.5),
    (3.0, (25.0, 10.0), 12.5),
    (2.0, (5.0, 10.0), 10.0),
    (-2.0, (5.0, 5.0), 2.0),
    (-4.0, (15.0, 5.0), 10.0),
    (-2.0, (8.0, 25.0), 2.0),
    (-2.0, (21.0, 25.0), 2.0),
    (2.0, (25.0, 16.0), 2.0),
    (2.0, (5.0, 14.0), 2.0),
)
# Single dome: zero at (15, 15), falling to a flat plateau of -1 far from the center.
P2_PLATEAU = -1.0
P2_TERMS = ((1.0, (15.0, 15.0), 40.0),)

PASSINO_DOMAIN = Domain2D.square(0.0, 30.0)


def passino_landscape(preset: str | None = None, terms: Sequence | None = None, plateau: float = 0.0) -> GaussianMixtureLandscape:
    """Build a nutrient landscape from a named preset (``P1``/``P2``) or custom terms."""
    if preset is not None:
        key = preset.upper()
        if key == "P1":
            return GaussianMixtureLandscape(P1_TERMS, 0.0)
        if key == "P2":
            return GaussianMixtureLandscape(P2_TERMS, P2_PLATEAU)
        raise KeyError(f"unknown nutrient landscape preset {preset!r}")
    if not terms:
        raise ValueError("custom nutrient landscape needs a non-empty term list")
    normalized = tuple((float(w), (float(c[0]), float(c[1])), float(s)) for w, c, s in terms)
    return GaussianMixtureLandscape(normalized, float(plateau))


def _registry() -> dict[str, BenchmarkFunction]:
    mn, mx = Goal.MINIMIZE, Goal.MAXIMIZE
    dejong = Domain2D.square(-5.12, 5.12)
    fns = [
        BenchmarkFunction("F0a", _f0a, Domain2D.square(-5.0, 5.0),
                          KnownOptimum((_F0A_PEAK_X, 0.0), _F0A_PEAK, mx), "one peak and one valley"),
        BenchmarkFunction("F0b", _f0b, Domain2D.square(-5.0, 5.0),
                          KnownOptimum((-_F0A_PEAK_X, 0.0), _F0A_PEAK, mx), "F0a mirrored in z"),
        BenchmarkFunction("F1", _f1, dejong, KnownOptimum((0.0, 0.0), 0.0, mn), "De Jong sphere"),
        BenchmarkFunction("F2", _f2, dejong, KnownOptimum((0.0, 0.0), 0.0, mn), "axis-parallel hyper-ellipsoid"),
        BenchmarkFunction("F3", _f3, Domain2D.square(-65.536, 65.536),
                          KnownOptimum((0.0, 0.0), 0.0, mn), "Schwefel 1.2 rotated hyper-ellipsoid"),
        BenchmarkFunction("F4", _f4, Domain2D.square(-2.048, 2.048),
                          KnownOptimum((1.0, 1.0), 0.0, mn), "Rosenbrock valley"),
        BenchmarkFunction("F5", _f5, dejong, KnownOptimum((0.0, 0.0), 0.0, mn), "Rastrigin"),
        BenchmarkFunction("F6", _f6, Domain2D.square(-500.0, 500.0),
                          KnownOptimum((SCHWEFEL_ARGMIN, SCHWEFEL_ARGMIN), SCHWEFEL_MIN_2D, mn), "Schwefel sine"),
        BenchmarkFunction("P1", passino_landscape("P1"), PASSINO_DOMAIN, None, "multimodal nutrient landscape"),
        BenchmarkFunction("P2", passino_landscape("P2"), PASSINO_DOMAIN,
                          KnownOptimum((15.0, 15.0), 0.0, mx), "nutrient dome over a plateau"),
    ]
    return {f.id: f for f in fns}


REGISTRY: dict[str, BenchmarkFunction] = _registry()


def register(fn: BenchmarkFunction) -> None:
    REGISTRY[fn.id] = fn


def get_function(fn_id: str) -> BenchmarkFunction:
    try:
        return REGISTRY[fn_id]
    except KeyError:
        raise KeyError(f"unknown benchmark function {fn_id!r}; known: {', '.join(REGISTRY)}") from None


def evaluate(fn_id: str, x: float, y: float) -> float:
    return float(get_function(fn_id).evaluator(float(x), float(y)))
