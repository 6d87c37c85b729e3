"""
検証レポートの CSV / JSON 出力モジュール
"""
from typing import Any, Dict, Optional
import json
import logging
import sys
import os

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from modules.evaluator import REPORT_COLUMNS, VerificationReport

logger = logging.getLogger(__name__)


class ReportExporter:
    """VerificationReport をファイルまたは文字列に書き出す"""

    def __init__(self, fmt: str = "csv"):
        """
        Args:
            fmt: "csv" または "json"
        """
        if fmt not in ("csv", "json"):
            raise ValueError(f"Unsupported format: {fmt}")
        self.fmt = fmt

    def render(self, report: VerificationReport) -> str:
        if self.fmt == "csv":
            return self._to_csv(report)
        return self._to_json(report)

    def export_results(self, report: VerificationReport, path: Optional[str] = None) -> str:
        """
        レポートを出力

        Args:
            report: VerificationReport
            path: 出力先（None なら書き込まずに文字列だけ返す）

        Returns:
            出力した文字列
        """
        text = self.render(report)
        if path is None:
            return text
        logger.debug("レポート出力開始: %s (%s, %d 行)", path, self.fmt, len(report.rows))
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        logger.info("レポートを書き出しました: %s", path)
        return text

    def _to_csv(self, report: VerificationReport) -> str:
        """ヘッダーは REPORT_COLUMNS 固定。detail は JSON 出力だけに載せる"""
        return report.to_frame().to_csv(index=False, columns=REPORT_COLUMNS, lineterminator="\n")

    def _to_json(self, report: VerificationReport) -> str:
        payload = {
            "metadata": report.metadata,
            "status_counts": report.status_counts,
            "rows": [self._format_row(row) for row in report.rows],
        }
        return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"

    def _format_row(self, row: Dict[str, Any]) -> Dict[str, Any]:
        formatted = {column: row.get(column) for column in REPORT_COLUMNS}
        if "detail" in row:
            formatted["detail"] = self._format_detail(row["detail"])
        return formatted

    def _format_detail(self, detail: Any) -> Any:
        """detail 内のタプルをリストに、辞書のキーを文字列にそろえる"""
        if isinstance(detail, dict):
            return {str(k): self._format_detail(v) for k, v in detail.items()}
        if isinstance(detail, (list, tuple)):
            return [self._format_detail(v) for v in detail]
        return detail
