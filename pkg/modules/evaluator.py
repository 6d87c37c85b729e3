"""
検証結果の判定・集計ロジック
"""
from typing import Any, Dict, List, Optional
from dataclasses import dataclass, field
from datetime import datetime, timezone
import sys
import os

import pandas as pd

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config.defaults import EXIT_CODES, STATUS_LEVELS, TOOL_VERSION, get_status_level
from modules.errors import CapExceeded

REPORT_COLUMNS = [
    "graph_id",
    "provenance",
    "n",
    "m",
    "match",
    "ind_match",
    "s",
    "field_char",
    "reg_symbolic",
    "reg_ordinary",
    "formula_value",
    "status",
    "elapsed_ms",
]

INTEGER_COLUMNS = ["n", "m", "match", "ind_match", "s", "field_char", "reg_symbolic", "reg_ordinary", "formula_value", "elapsed_ms"]


def formula_value(s: int, ind_match: Optional[int]) -> Optional[int]:
    """2s + ind-match(G) − 1"""
    if ind_match is None or s is None:
        return None
    return 2 * s + ind_match - 1


def status_from(holds: bool) -> str:
    return "ok" if holds else "violated"


def skipped_status(error: CapExceeded) -> str:
    return f"skipped:{error.reason}"


def empty_row(graph_id: str, provenance: str, s: Optional[int], field_char: int) -> Dict[str, Any]:
    """全列を持つ行（未計算の値は None）"""
    row: Dict[str, Any] = {column: None for column in REPORT_COLUMNS}
    row.update({"graph_id": graph_id, "provenance": provenance, "s": s, "field_char": field_char, "elapsed_ms": 0})
    return row


def evaluate_theorem_row(row: Dict[str, Any]) -> str:
    """
    定理の等式 reg(I(G)^(s)) = 2s + ind-match(G) − 1 を行の値から判定

    Args:
        row: reg_symbolic と ind_match を持つ行

    Returns:
        ステータス文字列
    """
    row["formula_value"] = formula_value(row["s"], row["ind_match"])
    if row["reg_symbolic"] is None:
        return row.get("status") or "skipped:not_computed"
    return status_from(row["reg_symbolic"] == row["formula_value"])


def evaluate_lower_bound_row(row: Dict[str, Any]) -> str:
    row["formula_value"] = formula_value(row["s"], row["ind_match"])
    if row["reg_symbolic"] is None:
        return row.get("status") or "skipped:not_computed"
    return status_from(row["reg_symbolic"] >= row["formula_value"])


def build_metadata(kind: str, config: Dict[str, Any]) -> Dict[str, Any]:
    return {
        "tool_version": TOOL_VERSION,
        "kind": kind,
        "config": config,
        "timestamp": datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
    }


@dataclass
class VerificationReport:
    """スイープ1回分の検証結果。violated の行も必ず保持する"""

    kind: str
    rows: List[Dict[str, Any]] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def status_counts(self) -> Dict[str, int]:
        counts = {level: 0 for level in STATUS_LEVELS}
        for row in self.rows:
            level = get_status_level(row["status"])
            counts[level] = counts.get(level, 0) + 1
        return counts

    @property
    def exit_code(self) -> int:
        counts = self.status_counts
        if counts["violated"]:
            return EXIT_CODES["violated"]
        if self.rows and counts["skipped"] == len(self.rows):
            return EXIT_CODES["all_skipped"]
        return EXIT_CODES["ok"]

    def canonical_rows(self) -> List[Dict[str, Any]]:
        """graph_id, s の順に並べ、所要時間を除いた行（並列実行との比較用）"""
        ordered = sorted(
            self.rows,
            key=lambda row: (row["graph_id"], row["s"] if row["s"] is not None else -1, row["field_char"]),
        )
        return [{k: v for k, v in row.items() if k != "elapsed_ms"} for row in ordered]

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.rows, columns=REPORT_COLUMNS)
        for column in INTEGER_COLUMNS:
            frame[column] = frame[column].astype("Int64")
        return frame


def format_report_for_display(report: VerificationReport) -> str:
    """
    集計結果を表示用にフォーマット

    Args:
        report: VerificationReport

    Returns:
        フォーマットされた文字列
    """
    counts = report.status_counts
    total = len(report.rows)
    output = f"## {report.kind} ({total} rows)\n\n"
    for level, info in STATUS_LEVELS.items():
        output += f"{info['color']} {level}: {counts.get(level, 0)}\n"

    violated = [row for row in report.rows if get_status_level(row["status"]) == "violated"]
    if violated:
        output += f"\n### ⚠️ violated rows ({len(violated)})\n\n"
        for row in violated[:10]:
            output += (
                f"- {row['graph_id']} s={row['s']}: reg={row['reg_symbolic']} "
                f"formula={row['formula_value']} ({row['provenance']})\n"
            )
        if len(violated) > 10:
            output += f"- ... and {len(violated) - 10} more\n"

    reasons: Dict[str, int] = {}
    for row in report.rows:
        if get_status_level(row["status"]) == "skipped":
            reason = row["status"].split(":", 1)[1]
            reasons[reason] = reasons.get(reason, 0) + 1
    if reasons:
        output += "\n### skipped by cap\n\n"
        for reason, count in sorted(reasons.items()):
            output += f"- {reason}: {count}\n"
    return output
