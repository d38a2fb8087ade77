"""Configurations (s, rho): visitation order and visiting-agent assignment.

A configuration fixes, for a search on the n-gon with k Servants, the order
rho in which vertices are visited and the agent s[i] in {0..k} (0 = Queen)
that visits the i-th vertex.  This module canonicalizes, filters and
enumerates configurations, and provides the two cheap bounds used by the
search layer: a per-configuration traversal lower bound and the naive
two-algorithm upper bound used as the initial incumbent.

Enumeration order is lexicographic by rho, then by s, so streams are
deterministic and chunkable by contiguous index ranges.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .geometry import PolygonGeometry


@dataclass(frozen=True)
class Configuration:
    """A visitation plan: stage i visits vertex rho[i-1] by agent s[i-1]."""

    n: int
    k: int
    rho: tuple
    s: tuple

    def __post_init__(self):
        if sorted(self.rho) != list(range(1, self.n + 1)):
            raise ValueError(f"rho must be a permutation of 1..{self.n}: {self.rho}")
        if len(self.s) != self.n or any(a < 0 or a > self.k for a in self.s):
            raise ValueError(f"s must be length {self.n} over 0..{self.k}: {self.s}")

    def text(self) -> str:
        """Canonical one-line text form used by logs and checkpoints."""
        rho = ",".join(str(v) for v in self.rho)
        s = ",".join(str(a) for a in self.s)
        return f"n={self.n} k={self.k} rho={rho} s={s}"

    @classmethod
    def from_text(cls, line: str) -> "Configuration":
        try:
            fields = dict(tok.split("=", 1) for tok in line.split())
            n = int(fields["n"])
            k = int(fields["k"])
            rho = tuple(int(v) for v in fields["rho"].split(","))
            s = tuple(int(a) for a in fields["s"].split(","))
        except (KeyError, ValueError) as exc:
            raise ValueError(f"bad configuration text: {line!r}") from exc
        return cls(n, k, rho, s)

    def sort_key(self):
        return (self.rho, self.s)


@dataclass(frozen=True)
class FilterOptions:
    """Symmetry and dominance filters applied during enumeration."""

    fix_first_vertex: bool = True
    halve_second_vertex: bool = True
    queen_consecutive_rule: bool = True
    canonical_servant_labels: bool = True

    @classmethod
    def none(cls) -> "FilterOptions":
        return cls(False, False, False, False)

    @classmethod
    def all(cls) -> "FilterOptions":
        return cls()


def canonicalize_servants(c: Configuration) -> Configuration:
    """Relabel servants so first occurrences appear in increasing label order.

    Idempotent; the Queen label 0 is never touched.
    """
    relabel = {0: 0}
    nxt = 1
    out = []
    for a in c.s:
        if a not in relabel:
            relabel[a] = nxt
            nxt += 1
        out.append(relabel[a])
    return Configuration(c.n, c.k, c.rho, tuple(out))


def mirror(c: Configuration) -> Configuration:
    """Reflect the visitation order across the axis through vertex 1.

    The vertex map is v -> mod(n + 1 - v, n) + 1, which fixes vertex 1 and
    swaps 2 with n, 3 with n-1, and so on.  Involution; s is unchanged.
    """
    n = c.n
    rho = tuple(((n + 1 - v) % n) + 1 for v in c.rho)
    return Configuration(n, c.k, rho, c.s)


def _canonical_labels_ok(s: Sequence[int]) -> bool:
    nxt = 1
    for a in s:
        if a == 0:
            continue
        if a > nxt:
            return False
        if a == nxt:
            nxt += 1
    return True


def _queen_rule_ok(s: Sequence[int]) -> bool:
    # once the Queen takes two consecutive stages, everything after is hers
    n = len(s)
    for j in range(n - 1):
        if s[j] == 0 and s[j + 1] == 0:
            return all(a == 0 for a in s[j + 2:])
    return True


def s_candidates(n: int, k: int, opts: FilterOptions) -> list:
    """All agent strings passing the s-level filters, in lexicographic order."""
    out = []
    for s in itertools.product(range(k + 1), repeat=n):
        if opts.canonical_servant_labels and not _canonical_labels_ok(s):
            continue
        if opts.queen_consecutive_rule and not _queen_rule_ok(s):
            continue
        out.append(s)
    return out


def rho_candidates(n: int, opts: FilterOptions) -> Iterator[tuple]:
    """Visitation orders passing the rho-level filters, in lexicographic order."""
    half = math.ceil(n / 2)
    if opts.fix_first_vertex:
        heads = [(1,)]
        rest_pool = range(2, n + 1)
        for rest in itertools.permutations(rest_pool):
            rho = (1,) + rest
            if opts.halve_second_vertex and rho[1] > half:
                continue
            yield rho
    else:
        for rho in itertools.permutations(range(1, n + 1)):
            if opts.halve_second_vertex and rho[1] > half:
                continue
            yield rho


def rho_candidate_count(n: int, opts: FilterOptions) -> int:
    first = 1 if opts.fix_first_vertex else n
    if not opts.halve_second_vertex:
        return first * math.factorial(n - 1)
    half = math.ceil(n / 2)
    if opts.fix_first_vertex:
        # second entry drawn from {2..half}
        return (half - 1) * math.factorial(n - 2)
    # count directly; only needed at small n
    return sum(1 for _ in rho_candidates(n, opts))


def enumerate_configurations(n: int, k: int, opts: FilterOptions | None = None
                             ) -> Iterator[Configuration]:
    """Stream configurations in lexicographic (rho, s) order.

    With all filters cleared the stream has exactly n! * (k+1)^n elements.
    """
    if n < 3 or k < 1:
        raise ValueError(f"need n >= 3, k >= 1 (got n={n}, k={k})")
    if opts is None:
        opts = FilterOptions()
    scand = s_candidates(n, k, opts)
    for rho in rho_candidates(n, opts):
        for s in scand:
            yield Configuration(n, k, rho, s)


def traversal_lower_bound(c: Configuration, g: PolygonGeometry) -> float:
    """Max over agents of the chord length of their assigned vertex path.

    Chained speed constraints and the triangle inequality make this a valid
    lower bound on the LP value of c; it costs microseconds, so the search
    layer uses it to skip hopeless configurations.
    """
    if g.n != c.n:
        raise ValueError(f"geometry is for n={g.n}, configuration for n={c.n}")
    best = 0.0
    for i in range(c.k + 1):
        path = [c.rho[j] for j in range(c.n) if c.s[j] == i]
        tot = 0.0
        for q in range(len(path) - 1):
            tot += g.chord(path[q], path[q + 1])
        if tot > best:
            best = tot
    return best


def naive_upper_bound(n: int, k: int, g: PolygonGeometry) -> float:
    """Cost of the better of the two naive sweep algorithms.

    One keeps the Queen at the center (evacuation hop 1), the other puts all
    k+1 agents on the polygon (hop at most 2); both sweep adjacent vertices.
    """
    e = g.edge_length
    a1 = 1.0 + (math.ceil(n / k) - 1) * e
    a2 = 2.0 + (math.ceil(n / (k + 1)) - 1) * e
    return min(a1, a2)


def config_count_estimate(n: int, k: int, opts: FilterOptions) -> int:
    """Upper estimate of the post-filter stream size, cheap to compute.

    rho-level filters are counted exactly; the s string count is bounded by
    (k+1)^n without enumerating, so the estimate is conservative.
    """
    return rho_candidate_count(n, opts) * (k + 1) ** n
