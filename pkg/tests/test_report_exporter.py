import json

import pytest

from modules.evaluator import REPORT_COLUMNS, VerificationReport, build_metadata, empty_row
from modules.pdf_reporter import generate_pdf_report, write_pdf_report
from modules.report_exporter import ReportExporter


def _report():
    ok = empty_row("cw0001", "star(m=1)", 1, 0)
    ok.update({"n": 2, "m": 1, "match": 1, "ind_match": 1, "reg_symbolic": 2, "formula_value": 2, "status": "ok"})
    bad = empty_row("cw0002", "star(m=2)", 1, 0)
    bad.update({"n": 3, "m": 2, "match": 1, "ind_match": 1, "reg_symbolic": 3, "formula_value": 2, "status": "violated"})
    bad["detail"] = {"reg_polarization": 2, "pairs": [(1, 2)]}
    return VerificationReport("theorem", [ok, bad], build_metadata("theorem", {"s_values": [1]}))


def test_csv_has_fixed_header():
    text = ReportExporter("csv").render(_report())
    lines = text.splitlines()
    assert lines[0] == ",".join(REPORT_COLUMNS)
    assert lines[1] == "cw0001,star(m=1),2,1,1,1,1,0,2,,2,ok,0"
    assert len(lines) == 3


def test_json_keeps_detail_and_metadata():
    data = json.loads(ReportExporter("json").render(_report()))
    assert data["metadata"]["kind"] == "theorem"
    assert data["metadata"]["config"] == {"s_values": [1]}
    assert data["status_counts"] == {"ok": 1, "violated": 1, "skipped": 0}
    assert "detail" not in data["rows"][0]
    assert data["rows"][1]["detail"] == {"reg_polarization": 2, "pairs": [[1, 2]]}


def test_export_writes_file(tmp_path):
    path = tmp_path / "out" / "report.csv"
    text = ReportExporter("csv").export_results(_report(), str(path))
    assert path.read_text(encoding="utf-8") == text


def test_unsupported_format():
    with pytest.raises(ValueError):
        ReportExporter("xlsx")


def test_pdf_report(tmp_path):
    data = generate_pdf_report(_report())
    assert data.startswith(b"%PDF")
    path = tmp_path / "report.pdf"
    write_pdf_report(_report(), str(path))
    assert path.read_bytes().startswith(b"%PDF")
