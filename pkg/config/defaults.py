"""
検証ハーネスの既定値・上限値の管理
"""
import os
from typing import Any, Dict, Optional

from dotenv import load_dotenv

TOOL_VERSION = "0.1.0"

# 計算量の上限（超えた行は skipped として記録される）
CAPS = {
    "edge_enumeration": 24,          # マッチング探索で許す辺数
    "vertex_covers": 100_000,        # 極小頂点被覆の個数
    "generators": 5000,              # 極小生成系のサイズ
    "candidates": 2_000_000,         # 極小化前の候補単項式数
    "lcm_closure": 200_000,          # Betti数を評価する多重次数の個数
    "polarization_variables": 24,    # 偏極化後の変数の個数
    "generate_vertices": 40,         # generate() が作るグラフの頂点数
    "lower_bound_vertices": 7,       # 下界スイープの頂点数
    "max_exponent": 10_000,
}

# スイープの範囲定義
SWEEP_PRESETS = {
    "acceptance": {
        "name": "Acceptance: 完全版",
        "description": "頂点数11までの全ファミリー、s=1..3。受け入れ基準の実行に使用。",
        "max_vertices": 11,
        "max_pendants": 2,
        "max_triangles": 2,
        "max_star": 8,
        "max_star_triangles": 3,
        "s_values": [1, 2, 3],
    },
    "quick": {
        "name": "Quick: 簡易版",
        "description": "頂点数7まで、s=1..2。変更後の確認用。",
        "max_vertices": 7,
        "max_pendants": 2,
        "max_triangles": 2,
        "max_star": 6,
        "max_star_triangles": 3,
        "s_values": [1, 2],
    },
    "tiny": {
        "name": "Tiny: 最小版",
        "description": "頂点数5まで、s=1..2。テストとデモ用。",
        "max_vertices": 5,
        "max_pendants": 2,
        "max_triangles": 1,
        "max_star": 4,
        "max_star_triangles": 2,
        "s_values": [1, 2],
    },
}

# 判定ステータスの定義
STATUS_LEVELS = {
    "ok": {
        "color": "🟢",
        "description": "計算値が主張と一致（または不等式が成立）。",
    },
    "violated": {
        "color": "🔴",
        "description": "計算値が主張に反する。行は必ず保持される。",
    },
    "skipped": {
        "color": "🟡",
        "description": "上限を超えたため計算を省略。理由は status に記録。",
    },
}

EXIT_CODES = {
    "ok": 0,
    "violated": 1,
    "usage": 2,
    "all_skipped": 3,
}

DEFAULT_UNION_LIMIT = 40


def apply_cap_overrides(overrides: Optional[Dict[str, int]]) -> None:
    """
    上限値を上書き（--gen-cap などから呼ばれる）

    ワーカープロセスでは初期化関数から同じ値で呼び直す。
    """
    if not overrides:
        return
    for name, value in overrides.items():
        if name not in CAPS:
            raise KeyError(f"Unknown cap: {name}")
        if value is None:
            continue
        if int(value) < 1:
            raise ValueError(f"cap {name} must be positive, got {value}")
        CAPS[name] = int(value)


def get_status_level(status: str) -> str:
    """ステータス文字列（"skipped:<理由>" を含む）から区分を判定"""
    level = status.split(":", 1)[0]
    if level in STATUS_LEVELS:
        return level
    return "Unknown"


def get_sweep_preset(name: str) -> Dict[str, Any]:
    """名前からスイープ範囲を取得"""
    if name not in SWEEP_PRESETS:
        raise KeyError(f"Unknown sweep preset: {name}")
    return dict(SWEEP_PRESETS[name])


def load_runtime_settings(env_file: Optional[str] = None) -> Dict[str, Any]:
    """
    .env と環境変数から実行時設定を読み込み

    Args:
        env_file: .env のパス（省略時はカレントディレクトリから探索）

    Returns:
        設定の辞書（cache_dir, gen_cap, jobs, log_level）
    """
    load_dotenv(env_file)

    gen_cap = os.getenv("CWREG_GEN_CAP")
    jobs = os.getenv("CWREG_JOBS")
    return {
        "cache_dir": os.getenv("CWREG_CACHE_DIR") or None,
        "gen_cap": int(gen_cap) if gen_cap else CAPS["generators"],
        "jobs": int(jobs) if jobs else 1,
        "log_level": os.getenv("CWREG_LOG_LEVEL", "WARNING").upper(),
    }
