"""Per-step colony telemetry and localization/adaptation measures.

All distances are Euclidean in cell units and do not wrap around the torus:
the lattice wraps for movement, but the sampled functions are not periodic.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from swarmsearch.domain import Goal

DEFAULT_PROFILE_RADIUS = 10

CSV_COLUMNS = (
    "t",
    "best_z",
    "mean_z",
    "pher_argmax_x",
    "pher_argmax_y",
    "dist_to_opt",
    "mass_fraction_r",
    "ants_near_opt",
)


def default_radius(width: int, height: int) -> int:
    """5 cells on a 100-cell side, 2 on a 30-cell side; 5% of the side otherwise, at least 1."""
    side = min(width, height)
    if side <= 30:
        return 2
    return max(1, round(0.05 * side))


def grid_optimum(habitat, goal: Goal | None = None) -> tuple[tuple[int, int], float]:
    """Exhaustive argmax/argmin over the lattice; ties go to the lowest (cx, cy)."""
    goal = goal or habitat.goal
    z = habitat.altitude
    flat = np.argmax(z) if goal is Goal.MAXIMIZE else np.argmin(z)
    cx, cy = np.unravel_index(flat, z.shape)
    return (int(cx), int(cy)), float(z[cx, cy])


def field_argmax(values: np.ndarray) -> tuple[int, int]:
    cx, cy = np.unravel_index(np.argmax(values), values.shape)
    return int(cx), int(cy)


def distance_grid(shape: tuple[int, int], center: tuple[int, int]) -> np.ndarray:
    cx = np.arange(shape[0])[:, None] - center[0]
    cy = np.arange(shape[1])[None, :] - center[1]
    return np.sqrt(cx * cx + cy * cy)


def mass_fraction(values: np.ndarray, center: tuple[int, int], radius: float) -> float:
    """Share of the total field within ``radius`` of ``center``; 0 for an empty field."""
    total = float(values.sum())
    if total <= 0.0:
        return 0.0
    inside = float(values[distance_grid(values.shape, center) <= radius].sum())
    return min(1.0, inside / total)


@dataclass(frozen=True)
class MetricsRecord:
    t: int
    best_z: float
    mean_z: float
    pher_argmax: tuple[int, int]
    dist_to_opt: float
    mass_fraction_r: float
    ants_near_opt: float
    radius: float = 5
    # radial_mass[r]: pheromone share within integer radius r of the optimum cell.
    radial_mass: tuple[float, ...] = field(default=(), repr=False, compare=False)

    def mass_fraction_at(self, radius: int) -> float:
        if radius == self.radius:
            return self.mass_fraction_r
        if radius < 0:
            return 0.0
        if int(radius) != radius:
            raise ValueError(f"radial profile is stored for integer radii only, got {radius}")
        if radius >= len(self.radial_mass):
            raise ValueError(f"radius {radius} beyond stored profile (max {len(self.radial_mass) - 1})")
        return self.radial_mass[int(radius)]

    def row(self) -> list[str]:
        return [
            str(self.t),
            _fmt(self.best_z),
            _fmt(self.mean_z),
            str(self.pher_argmax[0]),
            str(self.pher_argmax[1]),
            _fmt(self.dist_to_opt),
            _fmt(self.mass_fraction_r),
            _fmt(self.ants_near_opt),
        ]


def _fmt(value: float) -> str:
    return f"{value:.9g}"


class OptimumView:
    """Caches the optimum cell and its distance rings for one (habitat, goal)."""

    def __init__(self, habitat, radius: float, profile_radius: int = DEFAULT_PROFILE_RADIUS):
        self.cell, self.value = grid_optimum(habitat)
        self.goal = habitat.goal
        self.radius = radius
        self.dist = distance_grid(habitat.shape, self.cell)
        self.inside = self.dist <= radius
        self.profile_radius = max(profile_radius, int(np.ceil(radius)))
        ring = np.ceil(self.dist - 1e-12).astype(np.int64)
        self.ring = np.minimum(ring, self.profile_radius + 1).ravel()

    def record(self, t: int, altitude: np.ndarray, ax: np.ndarray, ay: np.ndarray, values: np.ndarray) -> MetricsRecord:
        z = altitude[ax, ay]
        best = float(z.max() if self.goal is Goal.MAXIMIZE else z.min())
        total = float(values.sum())
        am = field_argmax(values)
        dist = float(np.hypot(am[0] - self.cell[0], am[1] - self.cell[1]))
        if total > 0.0:
            rings = np.bincount(self.ring, weights=values.ravel(), minlength=self.profile_radius + 2)
            profile = np.minimum(np.cumsum(rings[: self.profile_radius + 1]) / total, 1.0)
            frac = min(1.0, float(values[self.inside].sum()) / total)
        else:
            profile = np.zeros(self.profile_radius + 1)
            frac = 0.0
        near = float(np.count_nonzero(self.inside[ax, ay])) / len(ax) if len(ax) else 0.0
        return MetricsRecord(
            t=t,
            best_z=best,
            mean_z=float(z.mean()),
            pher_argmax=am,
            dist_to_opt=dist,
            mass_fraction_r=frac,
            ants_near_opt=near,
            radius=self.radius,
            radial_mass=tuple(float(v) for v in profile),
        )


def adaptation_time(records: Sequence[MetricsRecord], switch_step: int, radius: int, threshold: float) -> int | None:
    """Steps after ``switch_step`` until the pheromone mass within ``radius`` of
    the (post-switch) optimum first reaches ``threshold``; ``None`` if never."""
    if not records:
        raise ValueError("no records")
    steps = [r.t for r in records]
    if not steps[0] <= switch_step <= steps[-1]:
        raise ValueError(f"switch step {switch_step} outside recorded range {steps[0]}..{steps[-1]}")
    for rec in records:
        if rec.t >= switch_step and rec.mass_fraction_at(radius) >= threshold:
            return rec.t - switch_step
    return None


def write_csv(records: Iterable[MetricsRecord], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.row())


def to_csv_text(records: Iterable[MetricsRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()
