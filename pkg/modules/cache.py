"""
正則性の計算結果キャッシュ（1行1オブジェクトの JSON Lines、追記のみ）
"""
from typing import Dict, Optional
import json
import logging
import sys
import os

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config.defaults import TOOL_VERSION

logger = logging.getLogger(__name__)

CACHE_FILENAME = "regularity_cache.jsonl"


def cache_key(graph_hash: str, s: int, field_char: int, kind: str, version: str = TOOL_VERSION) -> str:
    return f"{graph_hash}|{s}|{field_char}|{kind}|{version}"


class ResultCache:
    """(グラフのハッシュ, s, 標数, 種類, バージョン) → 正則性"""

    def __init__(self, cache_dir: str):
        """
        Args:
            cache_dir: キャッシュを置くディレクトリ（なければ作成）
        """
        os.makedirs(cache_dir, exist_ok=True)
        self.path = os.path.join(cache_dir, CACHE_FILENAME)
        self.entries: Dict[str, int] = {}
        self.hits = 0
        self._load()

    def _load(self) -> None:
        if not os.path.exists(self.path):
            return
        with open(self.path, "r", encoding="utf-8") as f:
            for number, line in enumerate(f, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    record = json.loads(line)
                    self.entries[record["key"]] = int(record["value"])
                except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                    # 書き込み途中で落ちた末尾行など
                    logger.warning("キャッシュの %d 行目を読み飛ばしました: %s", number, self.path)
        logger.debug("キャッシュ読み込み: %d 件 (%s)", len(self.entries), self.path)

    def get(self, key: str) -> Optional[int]:
        value = self.entries.get(key)
        if value is not None:
            self.hits += 1
        return value

    def put(self, key: str, value: int) -> None:
        """新しい値を追記（既知のキーは書かない）"""
        if key in self.entries:
            return
        self.entries[key] = int(value)
        with open(self.path, "a", encoding="utf-8") as f:
            f.write(json.dumps({"key": key, "value": int(value)}, sort_keys=True) + "\n")

    def __len__(self) -> int:
        return len(self.entries)
