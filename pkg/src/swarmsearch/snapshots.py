"""Grid and point-list file writers.

Grid files (CSV and plain PGM) put North up: row ``i`` holds ``cy = height-1-i``
and column ``j`` holds ``cx = j``.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np


def _north_up(values: np.ndarray) -> np.ndarray:
    return np.asarray(values).T[::-1]


def pgm_text(values: np.ndarray, comment: str = "") -> str:
    """Plain (P2) grayscale image, linearly scaled so the field maximum is 255.
    An all-zero field maps to an all-zero image."""
    grid = _north_up(values)
    peak = float(grid.max()) if grid.size else 0.0
    if peak > 0.0:
        scaled = np.rint(grid / peak * 255.0).astype(np.int64)
    else:
        scaled = np.zeros(grid.shape, dtype=np.int64)
    height, width = grid.shape
    lines = ["P2"]
    if comment:
        lines.append(f"# {comment}")
    lines += [f"{width} {height}", "255"]
    lines += [" ".join(str(v) for v in row) for row in scaled]
    return "\n".join(lines) + "\n"


def read_pgm(path) -> np.ndarray:
    """Parse a P2 file back into an ``[cx, cy]`` array (tests and tooling)."""
    tokens = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0]
        tokens += line.split()
    assert tokens[0] == "P2", "not a plain PGM file"
    width, height, _ = int(tokens[1]), int(tokens[2]), int(tokens[3])
    pixels = np.array([int(t) for t in tokens[4:]], dtype=np.int64).reshape(height, width)
    return pixels[::-1].T


def write_pgm(path, values: np.ndarray, comment: str = "") -> None:
    Path(path).write_text(pgm_text(values, comment))


def write_grid_csv(path, values: np.ndarray) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for row in _north_up(values):
            writer.writerow([f"{v:.9g}" for v in row])


def read_grid_csv(path) -> np.ndarray:
    rows = np.loadtxt(path, delimiter=",", ndmin=2)
    return rows[::-1].T


def write_points_csv(path, points: np.ndarray, header=("x", "y")) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for x, y in np.asarray(points):
            writer.writerow([f"{x:.9g}", f"{y:.9g}"])
