import pandas as pd

from config.defaults import EXIT_CODES
from modules.errors import GeneratorCapExceeded
from modules.evaluator import (
    REPORT_COLUMNS,
    VerificationReport,
    empty_row,
    evaluate_lower_bound_row,
    evaluate_theorem_row,
    format_report_for_display,
    formula_value,
    skipped_status,
)


def _row(graph_id, s, reg, ind_match=2, status=None):
    row = empty_row(graph_id, "test", s, 0)
    row.update({"n": 5, "m": 5, "match": 2, "ind_match": ind_match, "reg_symbolic": reg})
    row["status"] = status or evaluate_theorem_row(row)
    return row


def test_formula_value():
    assert formula_value(2, 2) == 5
    assert formula_value(1, None) is None


def test_theorem_and_lower_bound_rows():
    assert _row("cw0001", 2, 5)["status"] == "ok"
    assert _row("cw0001", 2, 6)["status"] == "violated"
    row = _row("cg0001", 2, 6)
    assert evaluate_lower_bound_row(row) == "ok"
    row["reg_symbolic"] = 4
    assert evaluate_lower_bound_row(row) == "violated"


def test_skipped_status():
    assert skipped_status(GeneratorCapExceeded("generators", 10, 12)) == "skipped:generators=10"


def test_exit_codes():
    ok = _row("cw0001", 1, 3)
    bad = _row("cw0002", 1, 4)
    skipped = _row("cw0003", 1, None, status="skipped:generators=10")
    assert VerificationReport("theorem", [ok, skipped]).exit_code == EXIT_CODES["ok"]
    assert VerificationReport("theorem", [ok, bad, skipped]).exit_code == EXIT_CODES["violated"]
    assert VerificationReport("theorem", [skipped]).exit_code == EXIT_CODES["all_skipped"]
    assert VerificationReport("theorem", []).exit_code == EXIT_CODES["ok"]


def test_frame_and_canonical_rows():
    rows = [_row("cw0002", 1, 3), _row("cw0001", 2, 5), _row("cw0001", 1, 3)]
    rows[0]["elapsed_ms"] = 17
    report = VerificationReport("theorem", rows)
    frame = report.to_frame()
    assert list(frame.columns) == REPORT_COLUMNS
    assert frame["reg_ordinary"].dtype == pd.Int64Dtype()
    assert frame["reg_ordinary"].isna().all()
    canonical = report.canonical_rows()
    assert [(row["graph_id"], row["s"]) for row in canonical] == [("cw0001", 1), ("cw0001", 2), ("cw0002", 1)]
    assert all("elapsed_ms" not in row for row in canonical)


def test_display_lists_violations_and_skips():
    report = VerificationReport(
        "theorem",
        [_row("cw0001", 1, 3), _row("cw0002", 2, 9), _row("cw0003", 1, None, status="skipped:generators=10")],
    )
    text = format_report_for_display(report)
    assert "🟢 ok: 1" in text
    assert "🔴 violated: 1" in text
    assert "- cw0002 s=2: reg=9 formula=5 (test)" in text
    assert "- generators=10: 1" in text
