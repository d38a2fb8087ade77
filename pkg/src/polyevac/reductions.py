"""Disk lower bounds derived from polygon lower bounds.

Any strategy on the disk that runs shorter than 1 + 2*pi/((k+1)*n) leaves
some inscribed n-gon entirely unexplored, so a polygon lower bound lifts to
the disk:

    priority evacuation:  1 + 2*pi/((k+1)*n) + polygon_lower
    weighted two-agent:   1 + pi/n + polygon_lower          (k = 1)

At k = 1 the two formulas coincide, 2*pi/(2*n) = pi/n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class InvalidBoundError(ValueError):
    """Polygon lower bounds below the universal 1 are not accepted here."""


@dataclass(frozen=True)
class DiskBound:
    n: int
    k: int
    w: float
    polygon_lower: float
    disk_lower: float
    formula: str                 # "priority" | "weighted"


def disk_lower_bound(n: int, k: int, polygon_lower: float) -> DiskBound:
    """Priority-evacuation disk bound from an n-gon bound for k Servants."""
    if n < 3 or k < 1:
        raise ValueError(f"need n >= 3 and k >= 1, got ({n}, {k})")
    if polygon_lower < 1.0:
        raise InvalidBoundError(
            f"polygon lower bound {polygon_lower} is below the universal 1; "
            f"pass the clamped bound")
    value = 1.0 + 2.0 * math.pi / ((k + 1) * n) + polygon_lower
    return DiskBound(n, k, 0.0, polygon_lower, value, "priority")


def wdisk_lower_bound(n: int, w: float, wobj: float) -> DiskBound:
    """Weighted-search disk bound from the n-gon weighted bound at w."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"w must lie in [0, 1], got {w}")
    value = 1.0 + math.pi / n + wobj
    return DiskBound(n, 1, w, wobj, value, "weighted")


def best_disk_bound(records, k: int) -> DiskBound:
    """Strongest priority disk bound over a set of polygon BoundRecords."""
    records = list(records)
    if not records:
        raise ValueError("need at least one bound record")
    best = None
    for rec in records:
        if rec.k != k:
            raise ValueError(f"record for k={rec.k} in a k={k} reduction")
        cand = disk_lower_bound(rec.n, k, rec.lower_value)
        if best is None or cand.disk_lower > best.disk_lower:
            best = cand
    return best
