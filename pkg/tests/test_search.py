import json
import math

import pytest

from polyevac.configspace import Configuration, FilterOptions, naive_upper_bound
from polyevac.geometry import make_polygon
from polyevac.lp import config_lp_value
from polyevac.search import (
    BudgetExceededError,
    CheckpointMismatchError,
    CheckpointParseError,
    load_checkpoint,
    min_over_configs,
    resume,
    w_sweep,
)
from polyevac import references


def test_min_3_1_matches_reference():
    rec = min_over_configs(3, 1)
    assert rec.raw_min == pytest.approx(math.sqrt(3.0), abs=1e-9)
    assert rec.lower_value == pytest.approx(math.sqrt(3.0), abs=1e-9)
    # the published minimizing configuration attains the same minimum
    row = references.lp_row(3, 1)
    published = config_lp_value(Configuration(3, 1, row.rho, row.s),
                                make_polygon(3))
    assert published == pytest.approx(rec.raw_min, abs=1e-9)
    # the returned argmin attains it as well
    got = config_lp_value(rec.argmin_config, make_polygon(3))
    assert got == pytest.approx(rec.raw_min, abs=1e-9)


@pytest.mark.parametrize("n,k", [(3, 2), (4, 1), (4, 2), (4, 3)])
def test_small_minima_match_reference_rows(n, k):
    rec = min_over_configs(n, k)
    assert rec.raw_min == pytest.approx(references.lp_row(n, k).value, abs=1e-8)
    assert rec.raw_min <= naive_upper_bound(n, k, make_polygon(n)) + 1e-12
    assert rec.lower_value == max(rec.raw_min, 1.0)


def test_sub_unit_raw_minimum_is_clamped():
    rec = min_over_configs(5, 4)
    assert rec.raw_min == pytest.approx(0.9510565163, abs=1e-8)
    assert rec.lower_value == 1.0


def test_pruning_soundness_3_2():
    assert min_over_configs(3, 2, prune=False).raw_min == \
        min_over_configs(3, 2, prune=True).raw_min


def test_filters_off_same_minimum_4_1():
    a = min_over_configs(4, 1)
    b = min_over_configs(4, 1, opts=FilterOptions.none())
    assert a.raw_min == pytest.approx(b.raw_min, abs=1e-10)


def test_thread_count_invariance_4_2():
    recs = [min_over_configs(4, 2, threads=t) for t in (1, 2)]
    assert recs[0].raw_min == recs[1].raw_min
    assert recs[0].argmin_config == recs[1].argmin_config
    assert recs[0].solved_count == recs[1].solved_count


def test_pool_path_with_many_chunks(monkeypatch):
    # shrink chunks so the process pool actually runs several work units
    import polyevac.search as search_mod
    monkeypatch.setattr(search_mod, "CHUNK_SIZE", 16)
    seq = min_over_configs(4, 1, threads=1)
    par = min_over_configs(4, 1, threads=2)
    assert par.raw_min == seq.raw_min
    assert par.argmin_config == seq.argmin_config
    assert par.solved_count + par.pruned_count == seq.solved_count + seq.pruned_count


def test_budget_guardrail():
    with pytest.raises(BudgetExceededError):
        min_over_configs(10, 4)
    # explicit budget raises the launch gate
    rec = min_over_configs(3, 1, budget=10 ** 6)
    assert rec.raw_min > 0


def test_checkpoint_roundtrip_and_resume(tmp_path):
    path = tmp_path / "run.ckpt"
    rec = min_over_configs(4, 1, checkpoint_path=str(path))
    lines = path.read_text().splitlines()
    header = json.loads(lines[0])
    assert header["n"] == 4 and header["k"] == 1 and header["w"] == 0.0
    assert set(header["filters"]) == {
        "fix_first_vertex", "halve_second_vertex",
        "queen_consecutive_rule", "canonical_servant_labels"}
    chunk0 = json.loads(lines[1])
    assert chunk0["chunk"][0] == 0 and "incumbent" in chunk0 and "config" in chunk0

    # completed checkpoint: resume returns the stored bounds without solving
    again = resume(str(path))
    assert again.raw_min == rec.raw_min
    assert again.argmin_config == rec.argmin_config
    assert again.solved_count == rec.solved_count
    assert again.pruned_count == rec.pruned_count


def test_interrupted_resume_matches_uninterrupted(tmp_path):
    path = tmp_path / "part.ckpt"
    full = min_over_configs(5, 1, checkpoint_path=str(path))
    lines = path.read_text().splitlines()
    assert len(lines) >= 2
    # simulate an interrupt: keep the header and the first chunk only
    partial = tmp_path / "partial.ckpt"
    partial.write_text("\n".join(lines[:2]) + "\n")
    resumed = resume(str(partial))
    assert resumed.raw_min == full.raw_min
    assert resumed.argmin_config == full.argmin_config


def test_checkpoint_mismatch_and_corruption(tmp_path):
    path = tmp_path / "a.ckpt"
    min_over_configs(3, 1, checkpoint_path=str(path))
    with pytest.raises(CheckpointMismatchError):
        min_over_configs(3, 2, checkpoint_path=str(path))
    with pytest.raises(CheckpointMismatchError):
        resume(str(path), expect={"n": 4})
    bad = tmp_path / "bad.ckpt"
    bad.write_text("not json\n")
    with pytest.raises(CheckpointParseError):
        load_checkpoint(str(bad))


def test_w_sweep_grid_and_w0_equivalence():
    recs = w_sweep(3, 0.0, 0.02, 0.01)
    assert [round(r.w, 4) for r in recs] == [0.0, 0.01, 0.02]
    assert recs[0].raw_min == pytest.approx(math.sqrt(3.0), abs=1e-9)
    # weighted minima never exceed the unweighted one at these weights
    assert recs[1].raw_min <= recs[0].raw_min + 1e-9


def test_invalid_arguments():
    with pytest.raises(ValueError):
        min_over_configs(3, 2, w=0.5)
    with pytest.raises(ValueError):
        min_over_configs(2, 1)
    with pytest.raises(ValueError):
        w_sweep(3, 0.5, 0.2, 0.1)
