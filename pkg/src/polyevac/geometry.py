"""Regular polygon geometry on the unit circle.

Vertices of the regular n-gon are indexed 1..n, vertex i sitting at angle
2*i*pi/n on the circle of radius 1 centered at the origin.  Chord distances
are computed from the sine identity

    |V_i - V_j| = 2 * sin(pi * mod(|i - j|, n) / n)

rather than from coordinates, so that symmetric pairs get bit-identical
values; coordinates and chords agree to ~1e-15 either way.

All public interfaces are 1-based in the vertex index.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np


class InvalidPolygonError(ValueError):
    """Polygon order n is below 3."""


class Point2(NamedTuple):
    """A point of the plane, unit-disk coordinates."""

    x: float
    y: float


def distance(a, b) -> float:
    """Euclidean distance between two points (Point2 or any (x, y) pair)."""
    ax, ay = a
    bx, by = b
    return math.hypot(ax - bx, ay - by)


class PolygonGeometry:
    """Vertex coordinates, edge length and chord table of a regular n-gon.

    Immutable after construction; safe to share across threads.
    """

    __slots__ = ("n", "vertices", "edge_length", "_coords", "_chords")

    def __init__(self, n: int):
        if n < 3:
            raise InvalidPolygonError(f"polygon needs at least 3 vertices, got {n}")
        self.n = n
        ang = 2.0 * np.pi * np.arange(1, n + 1) / n
        self._coords = np.column_stack([np.cos(ang), np.sin(ang)])
        self.vertices = tuple(Point2(float(x), float(y)) for x, y in self._coords)
        self.edge_length = 2.0 * math.sin(math.pi / n)
        gaps = np.minimum(np.arange(n), n - np.arange(n))  # mod-distance 0..n-1
        by_gap = 2.0 * np.sin(np.pi * gaps / n)
        idx = np.abs(np.subtract.outer(np.arange(n), np.arange(n)))
        self._chords = by_gap[np.minimum(idx, n - idx)]

    def vertex(self, i: int) -> Point2:
        """Vertex i (1-based)."""
        self._check_index(i)
        return self.vertices[i - 1]

    def vertex_array(self, i: int) -> np.ndarray:
        """Vertex i as a numpy view (1-based)."""
        self._check_index(i)
        return self._coords[i - 1]

    @property
    def coords(self) -> np.ndarray:
        """(n, 2) array of vertex coordinates, row i-1 is vertex i."""
        return self._coords

    def chord(self, i: int, j: int) -> float:
        """Chord distance between vertices i and j (1-based, symmetric)."""
        self._check_index(i)
        self._check_index(j)
        return float(self._chords[i - 1, j - 1])

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexError(f"vertex index {i} out of range 1..{self.n}")

    def __repr__(self) -> str:
        return f"PolygonGeometry(n={self.n})"


def make_polygon(n: int) -> PolygonGeometry:
    """Build the regular n-gon inscribed in the unit circle.

    Raises InvalidPolygonError for n < 3.
    """
    return PolygonGeometry(n)


def chord_distance(g: PolygonGeometry, i: int, j: int) -> float:
    """Chord distance between vertices i and j of g (1-based)."""
    return g.chord(i, j)
