"""
例外の定義
"""
from typing import Optional


class CWRegError(Exception):
    """このパッケージが送出する例外の基底クラス"""


class CapExceeded(CWRegError):
    """計算量の上限超過。スイープでは skipped:<reason> として記録する"""

    def __init__(self, cap_name: str, limit: int, observed: Optional[int] = None):
        self.cap_name = cap_name
        self.limit = limit
        self.observed = observed
        detail = f" (observed {observed})" if observed is not None else ""
        super().__init__(f"{cap_name} cap {limit} exceeded{detail}")

    @property
    def reason(self) -> str:
        return f"{self.cap_name}={self.limit}"


class SizeCapExceeded(CapExceeded):
    """組合せ的な列挙の上限超過"""


class GeneratorCapExceeded(CapExceeded):
    """生成系・候補・多重次数の個数の上限超過"""


class InvalidVertex(CWRegError, ValueError):
    pass


class InvalidGraph(CWRegError, ValueError):
    pass


class FormatError(CWRegError, ValueError):
    pass


class InvalidIdeal(CWRegError, ValueError):
    pass


class NotCameronWalker(CWRegError):
    pass


class NotConnected(CWRegError):
    pass


class BoundsExceeded(CWRegError, ValueError):
    pass


class PreconditionFailed(CWRegError):
    pass
