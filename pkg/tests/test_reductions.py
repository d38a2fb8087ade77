import math

import pytest

from polyevac.reductions import (
    InvalidBoundError,
    best_disk_bound,
    disk_lower_bound,
    wdisk_lower_bound,
)
from polyevac.search import BoundRecord
from polyevac import references


def rec(n, k, lower):
    return BoundRecord(n, k, 0.0, lower, lower, None, 0, 0, 0.0)


def test_priority_formula_examples():
    assert disk_lower_bound(6, 1, 2.86602).disk_lower == pytest.approx(
        4.38962, abs=1e-4)
    assert disk_lower_bound(12, 1, 3.38486).disk_lower == pytest.approx(
        4.64666, abs=1e-4)
    assert disk_lower_bound(11, 2, 2.46291).disk_lower == pytest.approx(
        3.65332, abs=1e-4)


def test_weighted_formula_examples():
    assert wdisk_lower_bound(12, 0.0, 3.38486).disk_lower == pytest.approx(
        1.0 + math.pi / 12 + 3.38486, abs=1e-12)
    assert wdisk_lower_bound(7, 0.0, 2.95125).disk_lower == pytest.approx(
        4.40005, abs=1e-4)
    x = 1.2345
    assert wdisk_lower_bound(3, 1.0, x).disk_lower == pytest.approx(
        1.0 + math.pi / 3 + x, abs=1e-12)


def test_formulas_coincide_at_k1_w0():
    for n in range(3, 14):
        x = 1.5
        a = disk_lower_bound(n, 1, x).disk_lower
        b = wdisk_lower_bound(n, 0.0, x).disk_lower
        assert a == b  # 2*pi/(2n) and pi/n round identically


def test_monotonicity():
    lowers = [disk_lower_bound(8, 2, x).disk_lower for x in (1.0, 1.5, 2.0)]
    assert lowers == sorted(lowers)
    assert lowers[0] < lowers[2]
    by_n = [disk_lower_bound(n, 2, 1.7).disk_lower for n in range(3, 12)]
    assert all(a > b for a, b in zip(by_n, by_n[1:]))


def test_best_disk_bound_examples():
    records = [rec(n, 1, references.lp_row(n, 1).value) for n in range(6, 14)]
    best = best_disk_bound(records, 1)
    assert best.n == 12
    assert best.disk_lower == pytest.approx(4.64666, abs=1e-4)

    records = [rec(n, 3, references.lp_row(n, 3).value) for n in range(6, 10)]
    best = best_disk_bound(records, 3)
    assert best.n == 6
    assert best.disk_lower == pytest.approx(3.12782, abs=1e-4)

    single = best_disk_bound([rec(7, 2, 2.08348)], 2)
    assert single.disk_lower == pytest.approx(
        disk_lower_bound(7, 2, 2.08348).disk_lower, abs=0)


def test_input_validation():
    with pytest.raises(InvalidBoundError):
        disk_lower_bound(6, 1, 0.95)
    with pytest.raises(ValueError):
        best_disk_bound([], 1)
    with pytest.raises(ValueError):
        best_disk_bound([rec(6, 1, 2.0)], 2)
    with pytest.raises(ValueError):
        wdisk_lower_bound(7, 1.5, 2.0)
