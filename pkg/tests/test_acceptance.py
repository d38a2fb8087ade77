"""Acceptance suite: every criterion at its stated tolerance.

Each criterion prints one pass/fail line (run pytest with -s to see them).
The single known-defective reference row is exercised by its own
strictly-expected-failure test; see the reference-table notes.
"""

import itertools
import math

import numpy as np
import pytest

from polyevac.configspace import (
    Configuration,
    FilterOptions,
    enumerate_configurations,
    traversal_lower_bound,
)
from polyevac.geometry import make_polygon
from polyevac.lp import build_lp, config_lp_value, solve_certified
from polyevac.reductions import disk_lower_bound, wdisk_lower_bound
from polyevac.search import min_over_configs
from polyevac.upperbounds import (
    catalog,
    catalog_plan,
    evaluate_trajectory,
    local_minimax_optimize,
    solve_plan,
    ub_for,
)
from polyevac import references

from conftest import random_config

LP_TOL = 1e-8
SUMMARY_TOL = 1e-4
CLOSED_FORM_TOL = 1e-10

KNOWN_DEFECT = (6, 1)


def _line(tag: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[{status}] {tag}{suffix}")


@pytest.fixture(scope="module")
def lp_row_values():
    """Computed LP optimum for every reference row (shared by criteria 1, 4)."""
    values = {}
    for row in references.LP_ROWS:
        g = make_polygon(row.n)
        c = Configuration(row.n, row.k, row.rho, row.s)
        values[(row.n, row.k)] = config_lp_value(c, g, presets=True)
    return values


def test_criterion_1_single_configuration_lp_regression(lp_row_values):
    """Every printed per-configuration LP optimum reproduces at 1e-8."""
    bad = []
    for row in references.LP_ROWS:
        if (row.n, row.k) == KNOWN_DEFECT:
            continue
        delta = lp_row_values[(row.n, row.k)] - row.value
        if abs(delta) > LP_TOL:
            bad.append((row.n, row.k, delta))
    ok = not bad
    _line("criterion 1: single-configuration LP regression", ok,
          f"{len(references.LP_ROWS) - 1} rows at 1e-8; "
          f"defective (6,1) row covered separately")
    assert ok, bad


@pytest.mark.xfail(strict=True, reason=(
    "the printed value for (n=6, k=1) lies 2.59e-8 below the certified "
    "optimum 2+sqrt(3)/2 of its own LP (exact dual certificate; matching "
    "closed-form trajectory), so no correct solver can land within 1e-8 "
    "of the printed digits"))
def test_criterion_1_defective_row_as_stated(lp_row_values):
    row = references.lp_row(*KNOWN_DEFECT)
    assert lp_row_values[KNOWN_DEFECT] == pytest.approx(row.value, abs=LP_TOL)


def test_criterion_1_defective_row_matches_certified_value(lp_row_values):
    certified = references.KNOWN_DEFECTIVE_LP_ROWS[KNOWN_DEFECT]["certified"]
    ok = abs(lp_row_values[KNOWN_DEFECT] - certified) <= LP_TOL
    _line("criterion 1 (addendum): (6,1) row equals its certified optimum", ok)
    assert ok


FULL_PAIRS = ((3, 1), (4, 1), (5, 1), (6, 1), (7, 1),
              (3, 2), (4, 2), (5, 2), (6, 2),
              (3, 3), (4, 3), (5, 3),
              (3, 4), (4, 4), (5, 4), (6, 4))


def test_criterion_2_full_enumeration_lower_bounds():
    """Exhaustive desk-scale minima reproduce the summary lower bounds."""
    bad = []
    sub_unit = None
    for (n, k) in FULL_PAIRS:
        rec = min_over_configs(n, k)
        l_ref = references.SUMMARY[(n, k)][1]
        if abs(rec.lower_value - l_ref) > SUMMARY_TOL:
            bad.append((n, k, rec.lower_value, l_ref))
        if (n, k) == (5, 4):
            sub_unit = rec
    ok = not bad
    _line("criterion 2: full-enumeration lower bounds", ok,
          f"{len(FULL_PAIRS)} pairs at 1e-4")
    assert ok, bad
    assert sub_unit is not None
    assert sub_unit.raw_min == pytest.approx(0.95106, abs=1e-4)
    assert sub_unit.lower_value == 1.0


def test_criterion_3_catalog_upper_bounds():
    """Catalog trajectories reproduce the summary upper bounds."""
    bad = []
    for plan in catalog():
        g = make_polygon(plan.n)
        params, tr = solve_plan(plan, g)
        cost = evaluate_trajectory(tr, g).worst_case
        u_ref = references.SUMMARY[(plan.n, plan.k)][0]
        if abs(cost - u_ref) > SUMMARY_TOL:
            bad.append((plan.n, plan.k, cost, u_ref))
    spot_ok = True
    for (n, k), closed in [
        ((6, 1), 2.0 + math.sqrt(3.0) / 2.0),
        ((4, 1), -1.0 + math.sqrt(2.0) + math.sqrt(3.0)),
        ((8, 4), 1.0 + math.sqrt(2.0 - math.sqrt(2.0))),
    ]:
        g = make_polygon(n)
        _, tr = solve_plan(catalog_plan(n, k), g)
        if abs(evaluate_trajectory(tr, g).worst_case - closed) > CLOSED_FORM_TOL:
            spot_ok = False
    params91, _ = solve_plan(catalog_plan(9, 1), make_polygon(9))
    params_ok = (abs(params91["l1"] - 0.06031) <= 1e-4
                 and abs(params91["l2"] - 0.32635) <= 1e-4)
    ok = not bad and spot_ok and params_ok
    _line("criterion 3: catalog upper bounds", ok,
          f"{len(catalog())} plans at 1e-4; closed forms at 1e-10")
    assert ok, (bad, spot_ok, params_ok)
    assert (13, 1) in {(p.n, p.k) for p in catalog()}
    assert references.SUMMARY[(12, 1)][0] == 3.38511
    assert references.SUMMARY[(13, 1)][0] == 3.36362


def test_criterion_4_disk_reductions(lp_row_values):
    """Disk table entries recompute from criterion-1 polygon values.

    The published disk table shows 24 populated cells; the (10, 3) cell has
    no published polygon bound behind it, so the 23 derivable entries are
    checked, plus the two headline constants.
    """
    bad = []
    for (n, k), ref in references.DISK_ROWS.items():
        poly = max(lp_row_values[(n, k)], 1.0)
        got = disk_lower_bound(n, k, poly).disk_lower
        if abs(got - ref) > SUMMARY_TOL:
            bad.append((n, k, got, ref))
    best1 = max(disk_lower_bound(n, 1, max(lp_row_values[(n, 1)], 1.0)).disk_lower
                for n in range(6, 14))
    best2 = max(disk_lower_bound(n, 2, max(lp_row_values[(n, 2)], 1.0)).disk_lower
                for n in range(6, 12))
    heads_ok = (abs(best1 - 4.64666) <= SUMMARY_TOL
                and abs(best2 - 3.65332) <= SUMMARY_TOL)
    ok = not bad and heads_ok
    _line("criterion 4: disk reductions", ok,
          f"{len(references.DISK_ROWS)} derivable entries at 1e-4; "
          f"best bounds 4.64666 / 3.65332")
    assert ok, (bad, best1, best2)


W_GRID = (0.0, 0.35, 0.7, 1.0)


def test_criterion_5_weighted_consistency(rng):
    """w = 0 model identity, formula agreement, and curve ordering at n=7."""
    g6 = make_polygon(6)
    identity_ok = True
    for _ in range(20):
        c = random_config(6, 1, rng)
        plain = solve_certified(build_lp(c, g6)).value
        weighted0 = solve_certified(build_lp(c, g6, w=0.0)).value
        if plain != weighted0:
            identity_ok = False

    formula_ok = all(
        disk_lower_bound(n, 1, 1.5).disk_lower
        == wdisk_lower_bound(n, 0.0, 1.5).disk_lower
        for n in range(3, 14))

    curve_ok = True
    floor = references.UNIVERSAL_WDISK_FLOOR
    for w in W_GRID:
        rec = min_over_configs(7, 1, w)
        upper, _tr = ub_for(7, 1, w, method="optimize")
        disk = wdisk_lower_bound(7, w, rec.lower_value).disk_lower
        if rec.lower_value > upper + 1e-9:
            curve_ok = False
        if disk > 1.0 + math.pi / 7 + upper + 1e-9:
            curve_ok = False
        if w >= 0.7 and disk > floor + 1e-9:
            # beyond w ~ 0.7 the 7-gon bound is weaker than the 1+pi floor
            curve_ok = False
    ok = identity_ok and formula_ok and curve_ok
    _line("criterion 5: w-weighted consistency", ok,
          f"model identity x20, formula identity n=3..13, grid {W_GRID} at n=7")
    assert ok, (identity_ok, formula_ok, curve_ok)


def _metric_ok(sol, tol=1e-9):
    labels = sol.model.point_labels
    m = len(labels)
    d = np.zeros((m, m))
    for a in range(m):
        for b in range(a + 1, m):
            d[a, b] = d[b, a] = sol.distance(labels[a], labels[b])
    if d.min() < -tol:
        return False
    for a, b, c in itertools.combinations(range(m), 3):
        if d[a, b] > d[a, c] + d[c, b] + tol or \
           d[a, c] > d[a, b] + d[b, c] + tol or \
           d[b, c] > d[a, b] + d[a, c] + tol:
            return False
    return True


def test_criterion_6_property_suites(rng):
    """Metric axioms, dominance, symmetry invariance, soundness, determinism."""
    # metric axioms hold in LP solutions
    metric_ok = True
    probes = [(3, 1), (4, 1), (5, 2), (6, 3)]
    for (n, k) in probes:
        row = references.lp_row(n, k)
        g = make_polygon(n)
        sol = solve_certified(build_lp(Configuration(n, k, row.rho, row.s), g))
        if sol.status != "optimal" or not _metric_ok(sol):
            metric_ok = False
    _line("criterion 6a: metric axioms in LP solutions", metric_ok)

    # relaxation dominance on all catalog pairs
    dominance_ok = True
    for plan in catalog():
        g = make_polygon(plan.n)
        _, tr = solve_plan(plan, g)
        cost = evaluate_trajectory(tr, g).worst_case
        lp = config_lp_value(Configuration(plan.n, plan.k, plan.rho, plan.s),
                             g, presets=True)
        if lp > cost + 1e-7:
            dominance_ok = False
    _line("criterion 6b: relaxation dominance on catalog pairs", dominance_ok)

    # mirror / relabel LP-value invariance on 50 random configurations
    from polyevac.configspace import canonicalize_servants, mirror
    invariance_ok = True
    for (n, k, reps) in [(5, 1, 25), (4, 2, 25)]:
        g = make_polygon(n)
        for _ in range(reps):
            c = random_config(n, k, rng)
            base = config_lp_value(c, g)
            if abs(config_lp_value(mirror(c), g) - base) > 1e-9:
                invariance_ok = False
            if abs(config_lp_value(canonicalize_servants(c), g) - base) > 1e-9:
                invariance_ok = False
    _line("criterion 6c: mirror/relabel LP-value invariance", invariance_ok)

    # pruning and filter soundness
    soundness_ok = True
    for (n, k) in [(4, 1), (5, 1), (3, 2), (4, 2)]:
        filt = min_over_configs(n, k)
        raw = min_over_configs(n, k, opts=FilterOptions.none())
        if abs(filt.raw_min - raw.raw_min) > 1e-10:
            soundness_ok = False
    no_prune = min_over_configs(4, 1, prune=False)
    if no_prune.raw_min != min_over_configs(4, 1).raw_min:
        soundness_ok = False
    _line("criterion 6d: pruning and filter soundness", soundness_ok)

    # thread-count determinism
    recs = [min_over_configs(5, 1, threads=t) for t in (1, 2, 8)]
    det_ok = all(r.raw_min == recs[0].raw_min for r in recs) and \
        all(r.argmin_config == recs[0].argmin_config for r in recs)
    _line("criterion 6e: thread-count determinism on (5,1)", det_ok)

    # traversal bound below the LP value, exhaustively
    tlb_ok = True
    for (n, k) in [(3, 1), (4, 1), (3, 2)]:
        g = make_polygon(n)
        for c in enumerate_configurations(n, k, FilterOptions.none()):
            if traversal_lower_bound(c, g) > config_lp_value(c, g) + 1e-9:
                tlb_ok = False
                break
    _line("criterion 6f: traversal bound below LP value (exhaustive)", tlb_ok)

    assert metric_ok and dominance_ok and invariance_ok and soundness_ok \
        and det_ok and tlb_ok


def test_optimizer_acceptance_targets():
    """The local optimizer attains the published costs it is specified to."""
    row = references.lp_row(12, 1)
    tr = local_minimax_optimize(Configuration(12, 1, row.rho, row.s),
                                make_polygon(12))
    cost12 = evaluate_trajectory(tr, make_polygon(12)).worst_case
    ok12 = cost12 <= 3.38511 + 1e-3

    c = Configuration(3, 2, (1, 2, 3), (1, 2, 0))
    tr = local_minimax_optimize(c, make_polygon(3))
    cost32 = evaluate_trajectory(tr, make_polygon(3)).worst_case
    ok32 = cost32 <= 1.0 + 1e-6
    _line("optimizer targets: (12,1) and (3,2)", ok12 and ok32,
          f"{cost12:.6f} vs 3.38611, {cost32:.8f} vs 1.000001")
    assert ok12 and ok32
