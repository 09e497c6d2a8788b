"""Brute-force scan of a 2-D objective on a uniform lattice."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np


@dataclass
class GridScan:
    x1: np.ndarray          # (n1,)
    x2: np.ndarray          # (n2,)
    values: np.ndarray      # (n1, n2), values[i, j] = f(x1[i], x2[j])
    argmax: tuple[int, int]

    @property
    def best_value(self) -> float:
        return float(self.values[self.argmax])

    @property
    def best_point(self) -> tuple[float, float]:
        i, j = self.argmax
        return float(self.x1[i]), float(self.x2[j])

    def rows(self):
        for i, a in enumerate(self.x1):
            for j, b in enumerate(self.x2):
                yield float(a), float(b), float(self.values[i, j])


def lattice(lo: float, hi: float, n: int) -> np.ndarray:
    if n < 2:
        raise ValueError("need at least two lattice points per axis")
    step = (hi - lo) / (n - 1)
    return np.array([lo + k * step for k in range(n)])


def grid_scan(objective: Callable, bounds: Sequence[tuple[float, float]], n1: int = 200,
              n2: int = 200) -> GridScan:
    """Evaluate on the inclusive n1 x n2 lattice. x1 is the outer loop; the
    argmax follows a >= scan, so the last maximal cell wins."""
    if len(bounds) != 2:
        raise ValueError("grid_scan needs a two-dimensional box")
    if hasattr(bounds, "bounds") and callable(bounds.bounds):
        bounds = bounds.bounds()
    x1 = lattice(*bounds[0], n1)
    x2 = lattice(*bounds[1], n2)
    vals = np.empty((n1, n2))
    batch = getattr(objective, "evaluate_many", None)
    for i, a in enumerate(x1):
        pts = np.column_stack([np.full(n2, a), x2])
        if batch is not None:
            vals[i] = batch(pts)
        else:
            vals[i] = [float(objective(p)) for p in pts]
    best, arg = -np.inf, (0, 0)
    for i in range(n1):
        for j in range(n2):
            if vals[i, j] >= best:
                best, arg = vals[i, j], (i, j)
    return GridScan(x1, x2, vals, arg)
