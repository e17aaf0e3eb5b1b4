"""Shared value types: rectangular function domains and optimization goals."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Goal(enum.Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"

    @classmethod
    def parse(cls, text: str) -> Goal:
        key = text.strip().lower()
        aliases = {"max": "maximize", "min": "minimize"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ValueError(f"unknown goal {text!r} (expected maximize or minimize)") from None


@dataclass(frozen=True)
class Domain2D:
    """Axis-aligned rectangle in function space."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError(f"degenerate domain {self}")

    @classmethod
    def square(cls, lo: float, hi: float) -> Domain2D:
        return cls(lo, hi, lo, hi)

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    def contains(self, x: float, y: float) -> bool:
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x_min, self.x_max, self.y_min, self.y_max)
