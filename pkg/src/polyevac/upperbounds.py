"""Feasible search trajectories and their certified worst-case costs.

Three layers:

* ``evaluate_trajectory`` re-verifies a trajectory's invariants (assigned
  vertices hit exactly, unit speed between stage positions) and computes the
  per-stage evacuation costs and their maximum,
* ``solve_plan`` instantiates a built-in plan from the catalog by solving
  its residual system with a safeguarded Newton method (numeric Jacobian,
  bisection fallback for one-parameter systems, [0,1] parameter boxes),
* ``local_minimax_optimize`` runs plain local descent on a log-sum-exp
  smoothing of the exact minimax objective with an annealed quadratic
  penalty on speed violations, followed by a repair pass that restores
  feasibility by delaying stage times; no global optimality is claimed.

Servant positions are reconstructed by earliest-arrival simulation: a
servant parks on its first assigned vertex at time 0 and afterwards moves at
full speed along its assigned vertex sequence, waiting on a vertex whenever
it arrives early.  Positions after an agent's last assignment hold still.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .catalog import PLAN_INDEX, PLANS, QueenPlan
from .configspace import Configuration
from .geometry import PolygonGeometry, make_polygon
from .lp import build_lp, solve_certified
from . import references

FEAS_TOL = 1e-9
RESIDUAL_TOL = 1e-10


class InfeasibleTrajectoryError(ValueError):
    def __init__(self, stage, msg):
        super().__init__(msg)
        self.stage = stage


class NoConvergenceError(RuntimeError):
    """Newton could not drive the plan residuals to tolerance."""


class NoKnownConfigurationError(KeyError):
    """No stored configuration or plan for this (n, k, w)."""


@dataclass
class Trajectory:
    """Timed stage positions for all agents; stage 0 is the shared origin."""

    n: int
    k: int
    times: tuple                 # t_0..t_n with t_0 = -1, t_1 = 0
    positions: np.ndarray        # (k+1, n+1, 2)
    config: Configuration


@dataclass
class CostBreakdown:
    per_stage: tuple             # stage j cost, j = 1..n
    worst_case: float
    argmax_stages: tuple         # 1-based stages within 1e-9 of the max


def evaluate_trajectory(tr: Trajectory, g: PolygonGeometry,
                        w: float = 0.0) -> CostBreakdown:
    """Verify feasibility, then compute the exact worst-case evacuation cost.

    At w = 0 the stage-j cost is t_j plus the Queen's distance to the vertex
    discovered at stage j; at w > 0 (two agents) the distances of both
    agents enter with weights 1 and w, normalized by 1 + w.
    """
    n, k = tr.n, tr.k
    if w > 0.0 and k != 1:
        raise ValueError("weighted cost requires k = 1")
    t = tr.times
    if abs(t[0] + 1.0) > FEAS_TOL or abs(t[1]) > FEAS_TOL:
        raise InfeasibleTrajectoryError(0, f"times must start t0=-1, t1=0, got "
                                           f"{t[0]}, {t[1]}")
    for j in range(n):
        if t[j + 1] < t[j] - FEAS_TOL:
            raise InfeasibleTrajectoryError(j + 1, f"stage times decrease at "
                                                   f"stage {j + 1}")
    for j in range(1, n + 1):
        vj = g.vertex_array(tr.config.rho[j - 1])
        agent = tr.config.s[j - 1]
        gap = float(np.linalg.norm(tr.positions[agent, j] - vj))
        if gap > FEAS_TOL:
            raise InfeasibleTrajectoryError(
                j, f"agent {agent} misses its vertex at stage {j} by {gap:.3g}")
    for i in range(k + 1):
        for j in range(n):
            hop = float(np.linalg.norm(tr.positions[i, j + 1] - tr.positions[i, j]))
            if hop > t[j + 1] - t[j] + FEAS_TOL:
                raise InfeasibleTrajectoryError(
                    j + 1, f"agent {i} exceeds unit speed into stage {j + 1}: "
                           f"{hop:.9f} > {t[j + 1] - t[j]:.9f}")
    costs = []
    for j in range(1, n + 1):
        vj = g.vertex_array(tr.config.rho[j - 1])
        c = float(np.linalg.norm(tr.positions[0, j] - vj))
        if w > 0.0:
            c = (c + w * float(np.linalg.norm(tr.positions[1, j] - vj))) / (1.0 + w)
        costs.append(t[j] + c)
    worst = max(costs)
    argmax = tuple(j + 1 for j, c in enumerate(costs) if c >= worst - 1e-9)
    return CostBreakdown(tuple(costs), worst, argmax)


# ------------------------------------------------------------------ plans

def _coord(theta):
    return -1.0 + 2.0 * theta


def _resolve(spec, g: PolygonGeometry, theta):
    kind = spec[0]
    if kind == "vertex":
        return g.vertex_array(spec[1]).copy()
    if kind == "origin":
        return np.zeros(2)
    if kind == "point":
        return np.array(spec[1:3], dtype=float)
    if kind == "point_fn":
        return np.asarray(spec[1](g), dtype=float)
    if kind == "mix":
        a = _resolve(spec[1], g, theta)
        b = _resolve(spec[2], g, theta)
        l = theta[spec[3]]
        return (1.0 - l) * a + l * b
    if kind == "free":
        return np.array([_coord(theta[spec[1]]), _coord(theta[spec[2]])])
    if kind == "xaxis":
        return np.array([_coord(theta[spec[1]]), 0.0])
    if kind == "yaxis":
        return np.array([0.0, _coord(theta[spec[1]])])
    if kind == "shift":
        return _resolve(spec[1], g, theta) + np.asarray(spec[2](g), dtype=float)
    raise ValueError(f"unknown anchor spec {spec!r}")


def _plan_residual_fn(plan: QueenPlan, g: PolygonGeometry):
    def fn(theta):
        anchors = [_resolve(a, g, theta) for a in plan.anchors]
        return np.array([r(g, theta, anchors) for r in plan.residuals])
    return fn


def _newton_box(fn, x0, tol=RESIDUAL_TOL, max_iter=200):
    """Damped Newton on [0,1]^p with central-difference Jacobians.

    For single-parameter systems a sign-bracketing bisection takes over when
    the damped step stalls; multi-parameter stalls raise NoConvergenceError.
    """
    x = np.array(x0, dtype=float)
    p = len(x)
    if p == 0:
        return x, 0.0
    h = 1e-7
    for _ in range(max_iter):
        f = fn(x)
        nf = float(np.linalg.norm(f))
        if nf <= tol:
            return x, nf
        jac = np.zeros((len(f), p))
        for q in range(p):
            xp = x.copy()
            xm = x.copy()
            xp[q] = min(1.0, x[q] + h)
            xm[q] = max(0.0, x[q] - h)
            jac[:, q] = (fn(xp) - fn(xm)) / (xp[q] - xm[q])
        try:
            step = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(jac, -f, rcond=None)[0]
        damp = 1.0
        for _ in range(60):
            xn = np.clip(x + damp * step, 0.0, 1.0)
            if float(np.linalg.norm(fn(xn))) < nf:
                x = xn
                break
            damp *= 0.5
        else:
            if p == 1:
                return _bisect_box(fn, tol)
            raise NoConvergenceError(
                f"Newton stalled at residual {nf:.3g} (params {x})")
    nf = float(np.linalg.norm(fn(x)))
    if nf <= tol:
        return x, nf
    if p == 1:
        return _bisect_box(fn, tol)
    raise NoConvergenceError(f"Newton budget exhausted at residual {nf:.3g}")


def _bisect_box(fn, tol, max_iter=200):
    grid = np.linspace(0.0, 1.0, 65)
    vals = [float(fn(np.array([t]))[0]) for t in grid]
    for q in range(len(grid) - 1):
        if vals[q] == 0.0:
            return np.array([grid[q]]), 0.0
        if vals[q] * vals[q + 1] < 0:
            lo, hi = grid[q], grid[q + 1]
            flo = vals[q]
            for _ in range(max_iter):
                mid = 0.5 * (lo + hi)
                fm = float(fn(np.array([mid]))[0])
                if abs(fm) <= tol:
                    return np.array([mid]), abs(fm)
                if flo * fm < 0:
                    hi = mid
                else:
                    lo, flo = mid, fm
            return np.array([0.5 * (lo + hi)]), abs(fm)
    raise NoConvergenceError("no sign change inside the [0,1] parameter box")


def _servant_positions(plan_rho, plan_s, n, k, g, times):
    """Earliest-arrival stage positions for agents 1..k."""
    pos = np.zeros((k + 1, n + 1, 2))
    for i in range(1, k + 1):
        stages = [j for j in range(1, n + 1) if plan_s[j - 1] == i]
        if not stages:
            continue
        events = [(0.0, g.vertex_array(plan_rho[stages[0] - 1]).copy())]
        for q in range(1, len(stages)):
            prev_j, cur_j = stages[q - 1], stages[q]
            p0 = g.vertex_array(plan_rho[prev_j - 1])
            p1 = g.vertex_array(plan_rho[cur_j - 1])
            depart = max(times[prev_j], events[-1][0])
            events.append((depart + float(np.linalg.norm(p1 - p0)), p1.copy()))

        def at(tt):
            if tt <= events[0][0]:
                return events[0][1]
            for q in range(1, len(events)):
                (t0, p0), (t1, p1) = events[q - 1], events[q]
                if tt <= t1:
                    if t1 == t0:
                        return p1
                    lam = max(0.0, (tt - t0) / (t1 - t0))
                    return p0 + lam * (p1 - p0)
            return events[-1][1]

        for j in range(1, n + 1):
            pos[i, j] = at(times[j])
    return pos


def solve_plan(plan: QueenPlan, g: PolygonGeometry):
    """Solve the plan's residual system and instantiate its trajectory.

    Returns (parameters, trajectory); parameters are the plan's named values
    in natural units.  The returned trajectory has been re-verified by
    ``evaluate_trajectory``.
    """
    if g.n != plan.n:
        raise ValueError(f"geometry n={g.n} does not match plan n={plan.n}")
    theta, resid = _newton_box(_plan_residual_fn(plan, g), plan.theta0())
    if resid > RESIDUAL_TOL:
        raise NoConvergenceError(f"plan ({plan.n},{plan.k}) residual {resid:.3g}")
    anchors = [_resolve(a, g, theta) for a in plan.anchors]
    n, k = plan.n, plan.k
    times = [0.0] * (n + 1)
    times[0] = -1.0
    for j in range(1, n + 1):
        spec = plan.times[j - 1]
        if spec[0] == "edges":
            times[j] = spec[1] * g.edge_length
        elif spec[0] == "queen":
            prev = anchors[j - 2] if j >= 2 else np.zeros(2)
            times[j] = times[j - 1] + float(np.linalg.norm(anchors[j - 1] - prev))
        elif spec[0] == "sync":
            times[j] = times[j - 1]
        elif spec[0] == "expr":
            times[j] = float(spec[1](g))
        else:
            raise ValueError(f"unknown time spec {spec!r}")
    pos = _servant_positions(plan.rho, plan.s, n, k, g, times)
    for j in range(1, n + 1):
        pos[0, j] = anchors[j - 1]
    tr = Trajectory(n, k, tuple(times), pos,
                    Configuration(n, k, plan.rho, plan.s))
    evaluate_trajectory(tr, g)  # sanity: plans must instantiate feasibly
    return plan.natural(theta), tr


def catalog():
    """All built-in plans, k-major then n-ascending."""
    return list(PLANS)


def catalog_plan(n: int, k: int) -> QueenPlan:
    try:
        return PLAN_INDEX[(n, k)]
    except KeyError:
        raise NoKnownConfigurationError(f"no built-in plan for (n={n}, k={k})")


# -------------------------------------------------------------- optimizer

_ANNEAL = ((1e-1, 1e2), (1e-2, 1e3), (1e-3, 1e4), (1e-4, 1e5), (1e-5, 1e6))


def local_minimax_optimize(c: Configuration, g: PolygonGeometry,
                           w: float = 0.0, seed: Trajectory | None = None,
                           budget: int = 500) -> Trajectory:
    """Locally optimize the exact minimax cost over trajectories for c.

    Decision variables are the stage times t_2..t_n and every stage position
    not pinned to a visited vertex.  The smoothed objective (log-sum-exp
    over stage costs, temperature annealed downward) plus an annealed
    quadratic penalty on speed violations is descended with L-BFGS; the
    final iterate is repaired to exact feasibility by delaying stage times.
    The result never costs more than the seed.
    """
    if w > 0.0 and c.k != 1:
        raise ValueError("weighted objective requires k = 1")
    n, k = c.n, c.k
    verts = {j: g.vertex_array(c.rho[j - 1]) for j in range(1, n + 1)}
    pinned = {(c.s[j - 1], j): verts[j] for j in range(1, n + 1)}
    free = [(i, j) for j in range(1, n + 1) for i in range(k + 1)
            if (i, j) not in pinned]
    free_pos = {p: q for q, p in enumerate(free)}
    ntv = n - 1

    if seed is not None:
        x0 = np.empty(ntv + 2 * len(free))
        x0[:ntv] = seed.times[2:]
        for (i, j), q in free_pos.items():
            x0[ntv + 2 * q: ntv + 2 * q + 2] = seed.positions[i, j]
    else:
        sol = solve_certified(build_lp(c, g, w))
        lp_times = sol.times if sol.status == "optimal" else \
            tuple([-1.0, 0.0] + [j * g.edge_length for j in range(1, n)])
        cent = np.zeros((k + 1, 2))
        for i in range(k + 1):
            mine = [verts[j] for j in range(1, n + 1) if c.s[j - 1] == i]
            if mine:
                cent[i] = np.mean(mine, axis=0)
        x0 = np.empty(ntv + 2 * len(free))
        x0[:ntv] = lp_times[2:]
        for (i, j), q in free_pos.items():
            x0[ntv + 2 * q: ntv + 2 * q + 2] = cent[i]

    def unpack(x):
        t = np.empty(n + 1)
        t[0], t[1] = -1.0, 0.0
        t[2:] = x[:ntv]
        pos = np.zeros((k + 1, n + 1, 2))
        for j in range(1, n + 1):
            for i in range(k + 1):
                pos[i, j] = pinned.get((i, j), 0.0)
        for (i, j), q in free_pos.items():
            pos[i, j] = x[ntv + 2 * q: ntv + 2 * q + 2]
        return t, pos

    def stage_costs(t, pos):
        out = np.empty(n)
        for j in range(1, n + 1):
            cst = float(np.linalg.norm(pos[0, j] - verts[j]))
            if w > 0.0:
                cst = (cst + w * float(np.linalg.norm(pos[1, j] - verts[j]))) \
                    / (1.0 + w)
            out[j - 1] = t[j] + cst
        return out

    def objective(x, tau, mu):
        t, pos = unpack(x)
        cs = stage_costs(t, pos)
        mx = cs.max()
        z = np.exp((cs - mx) / tau)
        zsum = z.sum()
        f = mx + tau * math.log(zsum)
        grad = np.zeros_like(x)
        wj = z / zsum
        for j in range(1, n + 1):
            if j >= 2:
                grad[j - 2] += wj[j - 1]
            for (agent, scale) in ((0, 1.0 / (1.0 + w) if w > 0 else 1.0),
                                   (1, w / (1.0 + w) if w > 0 else 0.0)):
                if scale == 0.0 or (agent, j) not in free_pos:
                    continue
                dvec = pos[agent, j] - verts[j]
                nrm = float(np.linalg.norm(dvec))
                if nrm > 1e-12:
                    q = free_pos[(agent, j)]
                    grad[ntv + 2 * q: ntv + 2 * q + 2] += \
                        wj[j - 1] * scale * dvec / nrm
        for i in range(k + 1):
            for j in range(n):
                dvec = pos[i, j + 1] - pos[i, j]
                dist = float(np.linalg.norm(dvec))
                viol = dist - (t[j + 1] - t[j])
                if viol <= 0.0:
                    continue
                f += mu * viol * viol
                gd = 2.0 * mu * viol
                if dist > 1e-12:
                    u = dvec / dist
                    if (i, j + 1) in free_pos:
                        q = free_pos[(i, j + 1)]
                        grad[ntv + 2 * q: ntv + 2 * q + 2] += gd * u
                    if j >= 1 and (i, j) in free_pos:
                        q = free_pos[(i, j)]
                        grad[ntv + 2 * q: ntv + 2 * q + 2] -= gd * u
                if j + 1 >= 2:
                    grad[j - 1] -= gd
                if j >= 2:
                    grad[j - 2] += gd
        return f, grad

    x = x0
    per_stage_iters = max(50, budget // len(_ANNEAL))
    for (tau, mu) in _ANNEAL:
        res = minimize(objective, x, args=(tau, mu), jac=True,
                       method="L-BFGS-B", options={"maxiter": per_stage_iters})
        x = res.x

    t, pos = unpack(x)
    # t_1 - t_0 = 1 is not adjustable, so stage-1 points must stay inside
    # the unit disk; later violations are repaired by delaying times
    for i in range(k + 1):
        if (i, 1) in free_pos:
            nrm = float(np.linalg.norm(pos[i, 1]))
            if nrm > 1.0:
                pos[i, 1] /= nrm
    tr_times = t.copy()
    for j in range(n):
        need = max(float(np.linalg.norm(pos[i, j + 1] - pos[i, j]))
                   for i in range(k + 1))
        tr_times[j + 1] = max(t[j + 1], tr_times[j] + need)
    result = Trajectory(n, k, tuple(float(v) for v in tr_times), pos, c)
    cost = evaluate_trajectory(result, g, w).worst_case
    if seed is not None:
        seed_cost = evaluate_trajectory(seed, g, w).worst_case
        if seed_cost < cost:
            return seed
    return result


def known_config(n: int, k: int, w: float = 0.0) -> Configuration:
    """Stored known-good configuration for the optimize path of ub_for."""
    if w > 0.0 and k == 1 and n in references.WEIGHTED_UB_CONFIGS:
        rho, s = references.WEIGHTED_UB_CONFIGS[n]
        return Configuration(n, 1, rho, s)
    try:
        row = references.lp_row(n, k)
    except KeyError:
        raise NoKnownConfigurationError(
            f"no stored configuration for (n={n}, k={k}); supply one")
    return Configuration(n, k, row.rho, row.s)


def ub_for(n: int, k: int, w: float = 0.0, method: str = "catalog",
           seed: Trajectory | None = None, budget: int = 500):
    """Upper bound and witnessing trajectory for (n, k) at weight w.

    ``catalog`` solves the built-in plan (w = 0 only); ``optimize`` runs the
    local minimax optimizer over the stored known-good configuration,
    seeding from the catalog trajectory when one exists.
    """
    g = make_polygon(n)
    if method == "catalog":
        if w != 0.0:
            raise ValueError("catalog plans are unweighted; use method=optimize")
        plan = catalog_plan(n, k)
        _params, tr = solve_plan(plan, g)
        return evaluate_trajectory(tr, g).worst_case, tr
    if method != "optimize":
        raise ValueError(f"unknown method {method!r}")
    c = known_config(n, k, w)
    if seed is None and w == 0.0 and (n, k) in PLAN_INDEX:
        plan = PLAN_INDEX[(n, k)]
        if plan.rho == c.rho and plan.s == c.s:
            _params, seed = solve_plan(plan, g)
    tr = local_minimax_optimize(c, g, w, seed=seed, budget=budget)
    return evaluate_trajectory(tr, g, w).worst_case, tr
