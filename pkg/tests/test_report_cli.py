import json
import os

import pytest

from polyevac.cli import cli_main
from polyevac.report import (
    FAIL,
    KNOWN_DEFECT,
    PASS,
    RunReport,
    curve_rows,
    disk_table,
    emit_curve,
    emit_trajectory,
    read_curve,
    verify,
)
from polyevac.reductions import wdisk_lower_bound
from polyevac.search import BoundRecord
from polyevac.upperbounds import ub_for
from polyevac.geometry import make_polygon
from polyevac import references


@pytest.fixture(scope="module")
def fast_report():
    return verify("fast")


def test_fast_suite_passes_with_one_known_defect(fast_report):
    assert fast_report.passed
    assert len(fast_report.failures) == 0
    defects = fast_report.known_defects
    assert [d.name for d in defects] == ["lp-value n=6 k=1"]
    assert "certified" in defects[0].note
    # composition: every LP row, every plan, spot checks, disk table
    names = [e.name for e in fast_report.entries]
    assert sum(n.startswith("lp-value") for n in names) == len(references.LP_ROWS)
    assert sum(n.startswith("catalog-cost") for n in names) == 32
    assert sum(n.startswith("disk-bound") for n in names) == len(references.DISK_ROWS)
    assert "best-disk-bound k=1" in names and "best-disk-bound k=2" in names


def test_report_text_rendering(fast_report):
    text = fast_report.render_text()
    assert "lp-value n=3 k=1" in text
    assert "KNOWN-DEFECT" in text
    assert "0 failed" in text


def test_report_csv_roundtrip_reproduces_status(tmp_path, fast_report):
    path = tmp_path / "table.csv"
    fast_report.write_csv(str(path))
    loaded = RunReport.read_csv(str(path))
    again = loaded.re_verify()
    assert [e.status for e in again.entries] == \
        [e.status for e in fast_report.entries]
    assert [e.computed for e in again.entries] == \
        [e.computed for e in fast_report.entries]


def test_verify_rejects_unknown_suite():
    with pytest.raises(ValueError):
        verify("medium")


def test_cli_verify_exit_codes(monkeypatch, capsys):
    rc = cli_main(["verify", "--suite", "fast"])
    assert rc == 0
    # corrupt one reference constant: verification must fail with exit 1
    broken = dict(references.SUMMARY)
    broken[(9, 1)] = (9.99999, 9.99999)
    monkeypatch.setattr(references, "SUMMARY", broken)
    rc = cli_main(["verify", "--suite", "fast"])
    assert rc == 1
    out = capsys.readouterr().out
    assert "FAIL" in out.upper()


def test_cli_usage_errors():
    assert cli_main(["no-such-command"]) == 2
    assert cli_main(["lb", "--n", "3"]) == 2          # missing --k
    assert cli_main(["lb", "--n", "10", "--k", "4"]) == 2  # budget guardrail


def test_cli_lb_and_lb_config(capsys):
    assert cli_main(["lb", "--n", "3", "--k", "1"]) == 0
    out = capsys.readouterr().out
    assert "lower_value 1.7320508076" in out
    assert "argmin n=3 k=1 rho=" in out

    assert cli_main([
        "lb-config", "--config",
        "n=12 k=1 rho=1,2,3,12,4,11,10,5,9,8,6,7 s=1,0,0,1,0,1,1,0,1,1,0,1",
    ]) == 0
    assert capsys.readouterr().out.strip() == "3.3848655007"


def test_cli_ub_and_disk_lb(capsys):
    assert cli_main(["ub", "--n", "6", "--k", "1"]) == 0
    out = capsys.readouterr().out
    assert "upper_value 2.8660254038" in out

    assert cli_main(["disk-lb", "--k", "1", "--n-list", "6,7,8,9"]) == 0
    out = capsys.readouterr().out
    got = [float(line.split("disk_lower ")[1])
           for line in out.splitlines() if line.startswith("n=")]
    assert got == pytest.approx([4.38962, 4.40005, 4.3959, 4.56798], abs=1e-4)
    assert "best n=9" in out


def test_emit_curve_roundtrip_and_figure(tmp_path):
    recs = [BoundRecord(7, 1, w, 2.9, 2.9, None, 0, 0, 0.0)
            for w in (0.0, 0.5, 1.0)]
    rows = curve_rows(recs) + curve_rows(
        [wdisk_lower_bound(7, w, 2.9) for w in (0.0, 0.5, 1.0)])
    rows.append((0.5, 3.0, "upper", 7))
    out = tmp_path / "curve.csv"
    files = emit_curve(rows, str(out))
    assert read_curve(str(out)) == rows
    assert str(out) in files
    assert any(f.endswith(".json") for f in files)
    assert any(f.endswith(".png") for f in files)
    assert all(os.path.exists(f) for f in files)


def test_emit_disk_table_rows(tmp_path):
    rows = disk_table(1, [6, 7, 8, 9])
    values = [round(d.disk_lower, 5) for d in rows]
    assert values == pytest.approx([4.38962, 4.40005, 4.39591, 4.56798],
                                   abs=1e-4)
    files = emit_curve(rows, str(tmp_path / "disk.csv"))
    assert all(os.path.exists(f) for f in files)


def test_emit_trajectory_files(tmp_path):
    g = make_polygon(9)
    _value, tr = ub_for(9, 1, method="catalog")
    out = tmp_path / "traj.csv"
    files = emit_trajectory(tr, g, str(out))
    assert os.path.exists(out)
    header = out.read_text().splitlines()[0].split(",")
    assert header == ["stage", "t", "x0", "y0", "x1", "y1"]
    jl = [json.loads(line) for line in
          (tmp_path / "traj_paths.jsonl").read_text().splitlines()]
    assert [rec["agent"] for rec in jl] == [0, 1]
    assert len(jl[0]["points"]) == 10
    assert any(f.endswith(".png") and os.path.exists(f) for f in files)


def test_cli_export_table_roundtrip(tmp_path, capsys):
    out = tmp_path / "report.csv"
    assert cli_main(["export", "--what", "table", "--out", str(out)]) == 0
    loaded = RunReport.read_csv(str(out))
    again = loaded.re_verify()
    assert [e.status for e in again.entries] == [e.status for e in loaded.entries]
    assert (tmp_path / "report.json").exists()


def test_cli_export_curve_wsweep(tmp_path, capsys):
    out = tmp_path / "c.csv"
    rc = cli_main(["export", "--what", "curve", "--n", "3", "--from", "0",
                   "--to", "0.5", "--step", "0.5", "--out", str(out)])
    assert rc == 0
    rows = read_curve(str(out))
    kinds = {(kind, w) for (w, _v, kind, _n) in rows}
    assert ("lower", 0.0) in kinds and ("disk", 0.5) in kinds


def test_solver_threads_env(monkeypatch):
    from polyevac.search import _resolve_threads
    monkeypatch.delenv("SOLVER_THREADS", raising=False)
    assert _resolve_threads(None) == 1
    monkeypatch.setenv("SOLVER_THREADS", "4")
    assert _resolve_threads(None) == 4
    assert _resolve_threads(2) == 2
