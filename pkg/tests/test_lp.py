import itertools
import math

import numpy as np
import pytest

from polyevac.configspace import Configuration, FilterOptions, \
    enumerate_configurations, traversal_lower_bound
from polyevac.geometry import make_polygon
from polyevac.lp import (
    UnsupportedWeightedK,
    build_lp,
    config_lp_value,
    solve_certified,
)
from polyevac import references

from conftest import random_config


def test_model_shape_3_1():
    g = make_polygon(3)
    c = Configuration(3, 1, (1, 2, 3), (1, 0, 1))
    m = build_lp(c, g)
    assert m.num_points == 7
    assert m.num_distance_vars == 21
    assert m.n_triangle_rows == 3 * math.comb(7, 3)


def test_model_shape_5_2():
    g = make_polygon(5)
    c = Configuration(5, 2, (1, 2, 3, 5, 4), (1, 2, 0, 1, 2))
    m = build_lp(c, g)
    assert m.num_points == 16
    assert m.num_distance_vars == 120
    assert m.n_triangle_rows == 1680


def test_weighted_model_reduces_at_w_zero():
    g = make_polygon(6)
    c = Configuration(6, 1, (1, 2, 6, 3, 5, 4), (1, 0, 1, 0, 1, 0))
    plain = build_lp(c, g)
    weighted_at_zero = build_lp(c, g, w=0.0)
    assert (plain.a_ub != weighted_at_zero.a_ub).nnz == 0
    assert np.array_equal(plain.lower, weighted_at_zero.lower)
    assert np.array_equal(plain.upper, weighted_at_zero.upper)
    assert np.array_equal(plain.c, weighted_at_zero.c)
    # and for small positive w each objective row gains the servant column
    ww = build_lp(c, g, w=0.5)
    assert ww.a_ub.nnz > plain.a_ub.nnz


def test_weighted_requires_single_servant():
    g = make_polygon(4)
    c = Configuration(4, 2, (1, 2, 3, 4), (1, 2, 0, 0))
    with pytest.raises(UnsupportedWeightedK):
        build_lp(c, g, w=0.3)


def test_geometry_mismatch_rejected():
    c = Configuration(4, 1, (1, 2, 4, 3), (1, 0, 1, 0))
    with pytest.raises(ValueError):
        build_lp(c, make_polygon(5))


@pytest.mark.parametrize("n,k", [(3, 1), (4, 1), (5, 2), (9, 3), (12, 1)])
def test_reference_rows_reproduce(n, k):
    row = references.lp_row(n, k)
    g = make_polygon(n)
    c = Configuration(n, k, row.rho, row.s)
    value = config_lp_value(c, g, presets=True)
    assert value == pytest.approx(row.value, abs=1e-9)


def test_certificate_and_solution_structure():
    g = make_polygon(4)
    c = Configuration(4, 1, (1, 2, 4, 3), (1, 0, 1, 0))
    sol = solve_certified(build_lp(c, g))
    assert sol.status == "optimal"
    assert sol.certificate_gap <= 1e-9
    # pinned times and monotone stage times
    assert sol.times[0] == -1.0 and sol.times[1] == 0.0
    assert all(sol.times[j + 1] >= sol.times[j] - 1e-12 for j in range(4))


def metric_axioms_hold(sol, tol=1e-9):
    labels = sol.model.point_labels
    m = len(labels)
    d = np.zeros((m, m))
    for a in range(m):
        for b in range(a + 1, m):
            d[a, b] = d[b, a] = sol.distance(labels[a], labels[b])
    if np.min(d) < -tol:
        return False
    for a, b, c in itertools.combinations(range(m), 3):
        if d[a, b] > d[a, c] + d[c, b] + tol:
            return False
        if d[a, c] > d[a, b] + d[b, c] + tol:
            return False
        if d[b, c] > d[a, b] + d[a, c] + tol:
            return False
    return True


def test_solution_is_a_metric_and_respects_pins():
    g = make_polygon(4)
    c = Configuration(4, 1, (1, 2, 4, 3), (1, 0, 1, 0))
    sol = solve_certified(build_lp(c, g))
    assert metric_axioms_hold(sol)
    # origin sits at distance exactly 1 from every visit point
    for j in range(1, 5):
        assert sol.distance((0, 0), (c.s[j - 1], j)) == pytest.approx(1.0, abs=1e-9)
    # pinned chords between visit points
    for j in range(1, 5):
        for l in range(j + 1, 5):
            got = sol.distance((c.s[j - 1], j), (c.s[l - 1], l))
            assert got == pytest.approx(g.chord(c.rho[j - 1], c.rho[l - 1]),
                                        abs=1e-9)


def test_presets_match_unpreset_at_minimizing_config():
    row = references.lp_row(5, 2)
    g = make_polygon(5)
    c = Configuration(5, 2, row.rho, row.s)
    a = config_lp_value(c, g, presets=False)
    b = config_lp_value(c, g, presets=True)
    assert abs(a - b) <= 1e-9


def test_presets_never_decrease_value(rng):
    g = make_polygon(5)
    for _ in range(15):
        c = random_config(5, 1, rng)
        free = config_lp_value(c, g, presets=False)
        pinned = config_lp_value(c, g, presets=True)
        assert pinned >= free - 1e-9


def test_reduced_model_equals_full_exhaustive_small():
    for (n, k) in [(3, 1), (3, 2)]:
        g = make_polygon(n)
        for c in enumerate_configurations(n, k, FilterOptions.none()):
            full = solve_certified(build_lp(c, g)).value
            red = solve_certified(build_lp(c, g, reduce_points=True)).value
            assert red == pytest.approx(full, abs=1e-10)


def test_reduced_model_equals_full_sampled(rng):
    for (n, k) in [(4, 2), (5, 2), (6, 4)]:
        g = make_polygon(n)
        for _ in range(8):
            c = random_config(n, k, rng)
            full = solve_certified(build_lp(c, g)).value
            red = solve_certified(build_lp(c, g, reduce_points=True)).value
            assert red == pytest.approx(full, abs=1e-9)


def test_traversal_bound_below_lp_exhaustive_3_1():
    g = make_polygon(3)
    for c in enumerate_configurations(3, 1, FilterOptions.none()):
        assert traversal_lower_bound(c, g) <= config_lp_value(c, g) + 1e-9


def test_lp_text_dump_layout():
    g = make_polygon(3)
    c = Configuration(3, 1, (1, 2, 3), (1, 0, 1))
    text = build_lp(c, g).dump_lp_text()
    lines = text.splitlines()
    assert lines[0] == "Minimize"
    assert lines[1] == " obj: y"
    assert "Subject To" in lines
    assert "Bounds" in lines and lines[-1] == "End"
    assert " t0 = -1" in text
    assert " t1 = 0" in text
    # distance names carry agent/stage pairs, smaller point first
    assert "d_0_0_1_1" in text
    assert "d_1_1_0_0" not in text
