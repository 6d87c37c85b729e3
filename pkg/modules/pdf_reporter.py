"""
PDFレポート生成モジュール
"""
from typing import Any, Dict, List
import io
import sys
import os

from reportlab.lib import colors
from reportlab.lib.enums import TA_CENTER
from reportlab.lib.pagesizes import A4
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.lib.units import cm
from reportlab.pdfbase import pdfmetrics
from reportlab.pdfbase.ttfonts import TTFont
from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config.defaults import STATUS_LEVELS, get_status_level
from modules.evaluator import VerificationReport

FONT_CANDIDATES = [
    ("/usr/share/fonts/truetype/noto/NotoSansCJK-Regular.ttc", {"subfontIndex": 0}),
    ("/usr/share/fonts/opentype/noto/NotoSansCJK-Regular.ttc", {"subfontIndex": 0}),
    ("/usr/share/fonts/opentype/ipafont-gothic/ipagp.ttf", {}),
]

STATUS_COLORS = {
    "ok": colors.HexColor("#C8E6C9"),
    "violated": colors.HexColor("#FFCDD2"),
    "skipped": colors.HexColor("#FFF9C4"),
}

# 詳細表に載せる行数
MAX_TABLE_ROWS = 200


def _register_font() -> str:
    """日本語フォントを登録（見つからなければ Helvetica）"""
    for path, options in FONT_CANDIDATES:
        try:
            pdfmetrics.registerFont(TTFont("Japanese", path, **options))
            return "Japanese"
        except Exception:
            continue
    return "Helvetica"


def _summary_table(report: VerificationReport, style: ParagraphStyle, font: str) -> Table:
    counts = report.status_counts
    data = [[Paragraph("ステータス", style), Paragraph("件数", style), Paragraph("説明", style)]]
    for level, info in STATUS_LEVELS.items():
        data.append([
            Paragraph(level, style),
            Paragraph(str(counts.get(level, 0)), style),
            Paragraph(info["description"], style),
        ])
    table = Table(data, colWidths=[3 * cm, 2 * cm, 11 * cm])
    commands = [
        ("BACKGROUND", (0, 0), (-1, 0), colors.HexColor("#1565C0")),
        ("TEXTCOLOR", (0, 0), (-1, 0), colors.whitesmoke),
        ("FONTNAME", (0, 0), (-1, -1), font),
        ("VALIGN", (0, 0), (-1, -1), "TOP"),
        ("GRID", (0, 0), (-1, -1), 0.5, colors.grey),
    ]
    for index, level in enumerate(STATUS_LEVELS, start=1):
        commands.append(("BACKGROUND", (0, index), (0, index), STATUS_COLORS[level]))
    table.setStyle(TableStyle(commands))
    return table


def _rows_table(rows: List[Dict[str, Any]], font: str) -> Table:
    header = ["graph_id", "n", "m", "s", "ind_match", "reg", "formula", "status"]
    data = [header]
    for row in rows[:MAX_TABLE_ROWS]:
        data.append([
            row["graph_id"],
            row["n"],
            row["m"],
            "" if row["s"] is None else row["s"],
            "" if row["ind_match"] is None else row["ind_match"],
            "" if row["reg_symbolic"] is None else row["reg_symbolic"],
            "" if row["formula_value"] is None else row["formula_value"],
            row["status"],
        ])
    table = Table(data, repeatRows=1)
    commands = [
        ("BACKGROUND", (0, 0), (-1, 0), colors.lightgrey),
        ("FONTNAME", (0, 0), (-1, -1), font),
        ("FONTSIZE", (0, 0), (-1, -1), 8),
        ("GRID", (0, 0), (-1, -1), 0.25, colors.grey),
    ]
    for index, row in enumerate(rows[:MAX_TABLE_ROWS], start=1):
        level = get_status_level(row["status"])
        if level in STATUS_COLORS:
            commands.append(("BACKGROUND", (-1, index), (-1, index), STATUS_COLORS[level]))
    table.setStyle(TableStyle(commands))
    return table


def generate_pdf_report(report: VerificationReport) -> bytes:
    """
    検証レポートの要約 PDF を生成

    Args:
        report: VerificationReport

    Returns:
        PDFデータ（バイト列）
    """
    font = _register_font()
    buffer = io.BytesIO()
    doc = SimpleDocTemplate(buffer, pagesize=A4, rightMargin=2 * cm, leftMargin=2 * cm, topMargin=2 * cm, bottomMargin=2 * cm)
    styles = getSampleStyleSheet()
    title_style = ParagraphStyle("CustomTitle", parent=styles["Heading1"], fontName=font, fontSize=20, alignment=TA_CENTER, spaceAfter=20)
    heading_style = ParagraphStyle("CustomHeading", parent=styles["Heading2"], fontName=font, fontSize=14, spaceAfter=10)
    normal_style = ParagraphStyle("JapaneseNormal", parent=styles["Normal"], fontName=font, fontSize=10, leading=14)

    metadata = report.metadata
    story = [
        Paragraph(f"検証レポート: {report.kind}", title_style),
        Paragraph(f"ツールバージョン: {metadata.get('tool_version', '')}", normal_style),
        Paragraph(f"実行日時: {metadata.get('timestamp', '')}", normal_style),
        Spacer(1, 0.5 * cm),
        Paragraph("集計", heading_style),
        _summary_table(report, normal_style, font),
        Spacer(1, 0.8 * cm),
        Paragraph(f"行ごとの結果（先頭 {min(len(report.rows), MAX_TABLE_ROWS)} 行）", heading_style),
    ]
    if report.rows:
        story.append(_rows_table(report.rows, font))
    else:
        story.append(Paragraph("対象となる行はありません。", normal_style))

    doc.build(story)
    pdf_data = buffer.getvalue()
    buffer.close()
    return pdf_data


def write_pdf_report(report: VerificationReport, path: str) -> None:
    with open(path, "wb") as f:
        f.write(generate_pdf_report(report))
