"""Planar geometry primitives: path angles, positions, move regions, arrays."""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PathAngles:
    """Elevation and azimuth of one propagation path, in radians.

    No range check is applied here: the trigonometric formulas are total on
    the reals, and the sampling range [-pi/2, pi/2] is enforced where the
    angles are drawn.
    """

    elevation: float
    azimuth: float


@dataclass(frozen=True)
class Position2D:
    """A point in a local 2D coordinate system, in meters."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"position coordinates must be finite, got ({self.x}, {self.y})")


ORIGIN = Position2D(0.0, 0.0)


@dataclass(frozen=True)
class MoveRegion:
    """Square placement region [-half_side, +half_side]^2 around the local origin.

    The origin (the fixed-antenna reference position) is always contained,
    including in the degenerate half_side = 0 case.
    """

    half_side: float

    def __post_init__(self):
        if not (math.isfinite(self.half_side) and self.half_side >= 0.0):
            raise ValueError(f"half_side must be finite and >= 0, got {self.half_side}")

    @property
    def side(self) -> float:
        return 2.0 * self.half_side

    def contains(self, p: Position2D) -> bool:
        return abs(p.x) <= self.half_side and abs(p.y) <= self.half_side

    def clamp(self, x: float, y: float) -> tuple[float, float]:
        h = self.half_side
        return (min(max(x, -h), h), min(max(y, -h), h))


@dataclass(frozen=True)
class AntennaArray:
    """Fixed transmit antenna positions in the transmitter's local plane."""

    elements: tuple[Position2D, ...]

    def __post_init__(self):
        if len(self.elements) < 1:
            raise ValueError("array needs at least one element")
        seen = {(e.x, e.y) for e in self.elements}
        if len(seen) != len(self.elements):
            raise ValueError("array elements must be pairwise distinct")

    @property
    def size(self) -> int:
        return len(self.elements)

    def xs(self) -> np.ndarray:
        return np.array([e.x for e in self.elements])

    def ys(self) -> np.ndarray:
        return np.array([e.y for e in self.elements])


def planar_array(n_elements: int, spacing: float) -> AntennaArray:
    """Uniform planar array, centered on the local origin.

    Uses the most-square factorization of ``n_elements`` (rows x cols with
    rows the largest divisor not exceeding sqrt(n)); prime counts degrade to
    a line.  Element order is row-major.
    """
    if n_elements < 1:
        raise ValueError("n_elements must be >= 1")
    if not (math.isfinite(spacing) and spacing > 0.0):
        raise ValueError("spacing must be positive")
    rows = 1
    for d in range(1, int(math.isqrt(n_elements)) + 1):
        if n_elements % d == 0:
            rows = d
    cols = n_elements // rows
    elements = []
    for r in range(rows):
        for c in range(cols):
            x = (c - (cols - 1) / 2.0) * spacing
            y = (r - (rows - 1) / 2.0) * spacing
            elements.append(Position2D(x, y))
    return AntennaArray(tuple(elements))
