"""Metric-relaxation linear program for a fixed configuration.

For a configuration (s, rho) the exact minimax program over agent
trajectories is relaxed by keeping, for every pair of (agent, stage) points,
only the metric-space axioms on their pairwise distances and dropping planar
embeddability.  What remains is a MINIMIZED linear program over

    t_0..t_n   stage times, t_0 = -1 and t_1 = 0 pinned,
    y          epigraph variable for the worst-case cost,
    d_pq       one distance variable per unordered point pair,

with speed rows t_{j+1} - t_j >= d((i,j+1),(i,j)), all 3*C(m,3) triangle
inequalities, distances pinned to polygon chords between visit points and to
1 from the origin, and objective rows

    y >= t_j + (d((0,j),(s_j,j)) + w * d((1,j),(s_j,j))) / (1 + w)

which at w = 0 reduce row-for-row to the unweighted cost.  Its optimum is a
certified lower bound on the best (s, rho)-algorithm.

All stage-0 points collapse to a single origin point: the agents start
together and the per-agent stage-0 points would be constrained identically.

The solver behind ``solve_certified`` is HiGHS via scipy.linprog; optimality
is accepted only with a primal-dual gap and feasibility residual below 1e-9,
both recomputed here from the returned multipliers rather than trusted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.optimize import linprog

from .configspace import Configuration
from .geometry import PolygonGeometry

CERT_GAP_TOL = 1e-9

ORIGIN = (0, 0)  # collapsed stage-0 point, printed as agent 0 stage 0


class UnsupportedWeightedK(ValueError):
    """w > 0 is only defined for the two-agent problem (k = 1)."""


class LpNumericError(RuntimeError):
    """The solver could not certify optimality within its budget."""


_TRIANGLE_CACHE: dict = {}


def _triangle_block(m: int):
    """CSR block of the 3*C(m,3) triangle rows over C(m,2) pair variables.

    Depends only on the point count, so it is cached and shared.
    """
    if m in _TRIANGLE_CACHE:
        return _TRIANGLE_CACHE[m]
    npair = m * (m - 1) // 2
    pidx = np.zeros((m, m), dtype=np.int64)
    c = 0
    for a in range(m):
        for b in range(a + 1, m):
            pidx[a, b] = pidx[b, a] = c
            c += 1
    triples = np.array(list(itertools.combinations(range(m), 3)), dtype=np.int64)
    if len(triples) == 0:
        block = sp.csr_matrix((0, npair))
        _TRIANGLE_CACHE[m] = (block, pidx)
        return block, pidx
    ab = pidx[triples[:, 0], triples[:, 1]]
    ac = pidx[triples[:, 0], triples[:, 2]]
    bc = pidx[triples[:, 1], triples[:, 2]]
    nt = len(triples)
    rows = np.repeat(np.arange(3 * nt), 3)
    cols = np.concatenate([
        np.column_stack([ab, ac, bc]).ravel(),
        np.column_stack([ac, ab, bc]).ravel(),
        np.column_stack([bc, ab, ac]).ravel(),
    ])
    # interleave the three row families in (triple-major) order
    cols = np.empty(9 * nt, dtype=np.int64)
    cols[0::9], cols[1::9], cols[2::9] = ab, ac, bc
    cols[3::9], cols[4::9], cols[5::9] = ac, ab, bc
    cols[6::9], cols[7::9], cols[8::9] = bc, ab, ac
    data = np.tile([1.0, -1.0, -1.0], 3 * nt)
    block = sp.csr_matrix((data, (rows, cols)), shape=(3 * nt, npair))
    _TRIANGLE_CACHE[m] = (block, pidx)
    return block, pidx


@dataclass
class MetricLpModel:
    """Assembled LP for one configuration: matrices plus labeling metadata."""

    config: Configuration
    weight_w: float
    point_labels: list          # index -> (agent, stage); ORIGIN first
    c: np.ndarray
    a_ub: sp.csr_matrix
    b_ub: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    n_speed_rows: int
    n_objective_rows: int
    n_triangle_rows: int
    reduced: bool = False
    _pair_index: np.ndarray = field(repr=False, default=None)

    @property
    def num_points(self) -> int:
        return len(self.point_labels)

    @property
    def num_time_vars(self) -> int:
        return self.config.n + 1

    @property
    def num_distance_vars(self) -> int:
        m = self.num_points
        return m * (m - 1) // 2

    def var_index(self, p, q) -> int:
        """Column of the distance variable between point labels p and q."""
        i = self.point_labels.index(p)
        j = self.point_labels.index(q)
        return self.num_time_vars + 1 + int(self._pair_index[i, j])

    def _dvar_name(self, i: int, j: int) -> str:
        p, q = sorted((self.point_labels[i], self.point_labels[j]))
        return f"d_{p[0]}_{p[1]}_{q[0]}_{q[1]}"

    def dump_lp_text(self) -> str:
        """Human-readable LP text (one constraint per line) for cross-checks."""
        n = self.config.n
        names = [f"t{j}" for j in range(n + 1)] + ["y"]
        m = self.num_points
        order = []
        for i in range(m):
            for j in range(i + 1, m):
                order.append((int(self._pair_index[i, j]), self._dvar_name(i, j)))
        dnames = [nm for _, nm in sorted(order)]
        names += dnames
        lines = ["Minimize", " obj: y", "Subject To"]
        a = self.a_ub.tocsr()
        tags = (["speed"] * self.n_speed_rows + ["cost"] * self.n_objective_rows
                + ["tri"] * self.n_triangle_rows)
        counts: dict = {}
        for r in range(a.shape[0]):
            tag = tags[r]
            counts[tag] = counts.get(tag, 0) + 1
            terms = []
            row = a.getrow(r)
            for col, coef in zip(row.indices, row.data):
                sign = "+" if coef >= 0 else "-"
                mag = abs(coef)
                coefs = "" if mag == 1.0 else f"{mag:.12g} "
                terms.append(f"{sign} {coefs}{names[col]}")
            body = " ".join(terms).lstrip("+ ")
            lines.append(f" {tag}{counts[tag]}: {body} <= 0")
        lines.append("Bounds")
        for v in range(len(self.c)):
            lo, up = self.lower[v], self.upper[v]
            if lo == up:
                lines.append(f" {names[v]} = {lo:.17g}")
            elif np.isneginf(lo) and np.isposinf(up):
                lines.append(f" {names[v]} free")
            elif np.isposinf(up):
                lines.append(f" {names[v]} >= {lo:.17g}")
            else:
                lines.append(f" {lo:.17g} <= {names[v]} <= {up:.17g}")
        lines.append("End")
        return "\n".join(lines) + "\n"


@dataclass
class LpSolution:
    """Certified optimum of a MetricLpModel."""

    status: str                  # optimal | infeasible | unbounded | numeric-failure
    value: float
    times: tuple
    certificate_gap: float
    model: MetricLpModel = field(repr=False)
    _x: np.ndarray = field(repr=False, default=None)

    def distance(self, p, q) -> float:
        """Distance between point labels p, q in the solution."""
        if p == q:
            return 0.0
        return float(self._x[self.model.var_index(p, q)])

    def all_distances(self) -> np.ndarray:
        return self._x[self.model.num_time_vars + 1:]


def _active_points(c: Configuration, w: float, reduce_points: bool) -> list:
    """Point labels to model; reduction drops servant points that provably
    embed as duplicates (before first / after last visit, or no visit at all).

    Valid only at w = 0, where servant positions never enter the objective.
    """
    pts = [ORIGIN]
    if not reduce_points or w != 0.0:
        for j in range(1, c.n + 1):
            for i in range(c.k + 1):
                pts.append((i, j))
        return pts
    spans = {}
    for i in range(1, c.k + 1):
        vis = [j for j in range(1, c.n + 1) if c.s[j - 1] == i]
        if vis:
            spans[i] = (vis[0], vis[-1])
    for j in range(1, c.n + 1):
        pts.append((0, j))
        for i in range(1, c.k + 1):
            span = spans.get(i)
            if span and span[0] <= j <= span[1]:
                pts.append((i, j))
    return pts


def build_lp(c: Configuration, g: PolygonGeometry, w: float = 0.0, *,
             presets: bool = False, reduce_points: bool = False) -> MetricLpModel:
    """Assemble the LP for configuration c on geometry g with weight w.

    ``presets`` pins to 0 the visit times of the leading pairwise-distinct
    servants (they may start on their first vertices without loss).
    ``reduce_points`` drops provably redundant servant points; the optimum is
    unchanged (duplicate-point embedding), only the model is smaller.  The
    default full model has 1 + n*(k+1) points.
    """
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"weight w must lie in [0, 1], got {w}")
    if w > 0.0 and c.k != 1:
        raise UnsupportedWeightedK(f"w > 0 requires k = 1, got k = {c.k}")
    if g.n != c.n:
        raise ValueError(f"geometry n={g.n} does not match configuration n={c.n}")

    n, k = c.n, c.k
    pts = _active_points(c, w, reduce_points)
    index = {p: q for q, p in enumerate(pts)}
    m = len(pts)
    tri, pidx = _triangle_block(m)

    ntv = n + 1
    npair = m * (m - 1) // 2
    nvar = ntv + 1 + npair
    iy = ntv

    def pt(i, j):
        return 0 if j == 0 else index[(i, j)]

    def dv(a, b):
        return ntv + 1 + int(pidx[a, b])

    lower = np.full(nvar, -np.inf)
    upper = np.full(nvar, np.inf)
    lower[ntv + 1:] = 0.0
    lower[0] = upper[0] = -1.0
    lower[1] = upper[1] = 0.0

    for l in range(1, n + 1):
        v = dv(0, pt(c.s[l - 1], l))
        lower[v] = upper[v] = 1.0
    for j in range(1, n + 1):
        for l in range(j + 1, n + 1):
            v = dv(pt(c.s[j - 1], j), pt(c.s[l - 1], l))
            lower[v] = upper[v] = g.chord(c.rho[j - 1], c.rho[l - 1])
    if presets:
        seen = set()
        for j in range(1, n + 1):
            a = c.s[j - 1]
            if a in seen:
                break
            seen.add(a)
            if a != 0:
                lower[j] = upper[j] = 0.0

    rows, cols, data = [], [], []
    r = 0
    for j in range(n):
        for i in range(k + 1):
            if (i, j + 1) not in index:
                continue
            prev_active = j == 0 or (i, j) in index
            a = pt(i, j + 1)
            if prev_active:
                b, tcol = pt(i, j), j
            else:
                # agent enters the reduced model at stage j+1; charge the hop
                # from the origin against the full elapsed time t_{j+1} - t_0
                b, tcol = 0, 0
            rows += [r, r, r]
            cols += [dv(a, b), j + 1, tcol]
            data += [1.0, -1.0, 1.0]
            r += 1
    n_speed = r
    for j in range(1, n + 1):
        rows += [r, r]
        cols += [j, iy]
        data += [1.0, -1.0]
        vpt = pt(c.s[j - 1], j)
        if c.s[j - 1] != 0:
            rows.append(r)
            cols.append(dv(*sorted((pt(0, j), vpt))))
            data.append(1.0 / (1.0 + w))
        if w > 0.0 and c.s[j - 1] != 1:
            rows.append(r)
            cols.append(dv(*sorted((pt(1, j), vpt))))
            data.append(w / (1.0 + w))
        r += 1
    n_obj = r - n_speed

    small = sp.csr_matrix((data, (rows, cols)), shape=(r, nvar))
    tri_full = sp.hstack([sp.csr_matrix((tri.shape[0], ntv + 1)), tri], format="csr")
    a_ub = sp.vstack([small, tri_full], format="csr")
    cvec = np.zeros(nvar)
    cvec[iy] = 1.0
    return MetricLpModel(
        config=c, weight_w=w, point_labels=pts, c=cvec, a_ub=a_ub,
        b_ub=np.zeros(a_ub.shape[0]), lower=lower, upper=upper,
        n_speed_rows=n_speed, n_objective_rows=n_obj,
        n_triangle_rows=tri.shape[0], reduced=reduce_points and w == 0.0,
        _pair_index=pidx,
    )


def _certify(model: MetricLpModel, res) -> float:
    """Primal-dual gap recomputed from the returned multipliers, plus the
    worst primal constraint violation; the max of the two is the certificate."""
    lam = res.ineqlin.marginals
    mlo = res.lower.marginals
    mup = res.upper.marginals
    lo = np.where(np.isfinite(model.lower), model.lower, 0.0)
    up = np.where(np.isfinite(model.upper), model.upper, 0.0)
    dual = float(lam @ model.b_ub + mlo @ lo + mup @ up)
    gap = abs(res.fun - dual)
    primal_viol = float(np.max(model.a_ub @ res.x - model.b_ub, initial=0.0))
    bound_viol = float(max(np.max(model.lower - res.x, initial=0.0),
                           np.max(res.x - model.upper, initial=0.0)))
    # dual feasibility of the reported multipliers
    dual_viol = float(np.max(lam, initial=0.0))
    stat = model.c - model.a_ub.T @ lam - mlo - mup
    return max(gap, primal_viol, bound_viol, dual_viol, float(np.abs(stat).max()))


_SOLVER_OPTIONS = (
    {},
    {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10},
)


def solve_certified(model: MetricLpModel) -> LpSolution:
    """Solve to certified optimality (gap and residuals below 1e-9).

    If HiGHS reports optimal but the recomputed certificate exceeds the
    tolerance, the solve is retried with tighter settings; a still
    uncertified result comes back with status ``numeric-failure``.
    """
    bounds = np.column_stack([model.lower, model.upper])
    last = None
    for opts in _SOLVER_OPTIONS:
        res = linprog(model.c, A_ub=model.a_ub, b_ub=model.b_ub,
                      bounds=bounds, method="highs", options=dict(opts))
        last = res
        if res.status == 2:
            return LpSolution("infeasible", float("nan"), (), float("inf"), model)
        if res.status == 3:
            return LpSolution("unbounded", float("-inf"), (), float("inf"), model)
        if res.status == 0:
            gap = _certify(model, res)
            if gap <= CERT_GAP_TOL:
                times = tuple(float(v) for v in res.x[: model.num_time_vars])
                return LpSolution("optimal", float(res.fun), times, gap, model,
                                  _x=res.x)
    gap = _certify(model, last) if last is not None and last.status == 0 else float("inf")
    value = float(last.fun) if last is not None and last.status == 0 else float("nan")
    return LpSolution("numeric-failure", value, (), gap, model)


def config_lp_value(c: Configuration, g: PolygonGeometry, w: float = 0.0,
                    presets: bool = False) -> float:
    """Build and solve; returns the certified optimum value.

    Raises LpNumericError if certification fails (callers doing enumeration
    must then treat the configuration as unpruned).
    """
    sol = solve_certified(build_lp(c, g, w, presets=presets))
    if sol.status != "optimal":
        raise LpNumericError(
            f"LP for {c.text()} (w={w}) ended with status {sol.status}")
    return sol.value
