"""
グラフ・単項式イデアル・Betti 表の入出力形式
"""
from typing import Any, Dict, Optional, Sequence, Union
import json
import re

import pandas as pd

import sys
import os

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from modules.cw_structure import CWParams
from modules.errors import FormatError, InvalidGraph
from modules.graph_core import Graph
from modules.monomial_algebra import Monomial, MonomialIdeal, minimalize
from modules.resolution import BettiTable

GRAPH_TEXT_SCHEMA = "line 1: 'n m', then m lines 'u v' with 1 <= u < v <= n"
GRAPH_JSON_SCHEMA = '{"n": int, "edges": [[u, v], ...]}'
IDEAL_JSON_SCHEMA = '{"n": int, "gens": [[e1, ..., en], ...] or ["x1^2*x3", ...]}'
PARAMS_JSON_SCHEMA = (
    '{"kind": "star", "m": int} | {"kind": "star_triangle", "t": int} | '
    '{"kind": "skeleton", "skeleton": {"n", "edges"}, "x": [...], "y": [...], '
    '"pendants": {x: count}, "triangles": {y: count}}'
)

_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_graph_text(text: str) -> Graph:
    """
    テキスト形式のグラフを読み込み

    空行と '#' で始まる行は無視する。

    Args:
        text: "n m" の行に続いて m 行の "u v"

    Returns:
        Graph
    """
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]
    if not lines:
        raise FormatError("empty graph file")
    try:
        n, m = (int(token) for token in lines[0].split())
    except ValueError:
        raise FormatError(f"header must be 'n m', got {lines[0]!r}")
    if len(lines) - 1 != m:
        raise FormatError(f"header announces {m} edges, found {len(lines) - 1}")

    edges = []
    for line in lines[1:]:
        try:
            u, v = (int(token) for token in line.split())
        except ValueError:
            raise FormatError(f"edge line must be 'u v', got {line!r}")
        if u == v:
            raise InvalidGraph(f"loop at vertex {u}")
        if u > v:
            raise FormatError(f"edge line {line!r} must list the smaller vertex first")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def format_graph_text(graph: Graph) -> str:
    lines = [f"{graph.n} {graph.m}"] + [f"{u} {v}" for u, v in graph.edges]
    return "\n".join(lines) + "\n"


def graph_from_dict(data: Dict[str, Any]) -> Graph:
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise FormatError(f"graph JSON must look like {GRAPH_JSON_SCHEMA}")
    return Graph.from_edges(int(data["n"]), data["edges"])


def graph_to_dict(graph: Graph, params: Optional[CWParams] = None) -> Dict[str, Any]:
    """グラフの JSON 表現（生成元のパラメータがあれば params 欄に記録）"""
    data: Dict[str, Any] = {"n": graph.n, "edges": [list(e) for e in graph.edges]}
    if params is not None:
        data["params"] = params.to_dict()
    return data


def format_monomial(monomial: Sequence[int]) -> str:
    """(0, 0, 2, 0, 1) → "x3^2*x5"。単位単項式は "1" """
    factors = []
    for index, exponent in enumerate(monomial, start=1):
        if exponent == 1:
            factors.append(f"x{index}")
        elif exponent > 1:
            factors.append(f"x{index}^{exponent}")
    return "*".join(factors) if factors else "1"


def parse_monomial(text: str, n: int) -> Monomial:
    """"x3^2*x5" → 長さ n の指数ベクトル"""
    exponents = [0] * n
    text = text.strip()
    if text == "1":
        return tuple(exponents)
    for factor in text.split("*"):
        match = _FACTOR.match(factor.strip())
        if not match:
            raise FormatError(f"cannot parse monomial factor {factor!r}")
        index = int(match.group(1))
        if not 1 <= index <= n:
            raise FormatError(f"variable x{index} outside x1..x{n}")
        exponents[index - 1] += int(match.group(2) or 1)
    return tuple(exponents)


def format_ideal(ideal: MonomialIdeal) -> str:
    if ideal.is_zero:
        return "(0)"
    return "(" + ", ".join(format_monomial(g) for g in ideal.gens) + ")"


def ideal_to_dict(ideal: MonomialIdeal) -> Dict[str, Any]:
    return {"n": ideal.n, "gens": [list(g) for g in ideal.gens]}


def ideal_from_dict(data: Dict[str, Any]) -> MonomialIdeal:
    """イデアルの JSON 表現を読み込み、極小生成系に直す"""
    if not isinstance(data, dict) or "n" not in data or "gens" not in data:
        raise FormatError(f"ideal JSON must look like {IDEAL_JSON_SCHEMA}")
    n = int(data["n"])
    gens = []
    for gen in data["gens"]:
        if isinstance(gen, str):
            gens.append(parse_monomial(gen, n))
        elif len(gen) != n:
            raise FormatError(f"generator {gen} does not have {n} exponents")
        else:
            gens.append(tuple(int(e) for e in gen))
    return minimalize(gens, n)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e}")


def _parse_json(text: str, path: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path} is not valid JSON: {e}")


def load_graph(path: str) -> Graph:
    """テキスト形式または JSON 形式のグラフファイルを読み込み"""
    text = _read(path)
    if text.lstrip().startswith("{"):
        return graph_from_dict(_parse_json(text, path))
    return parse_graph_text(text)


def load_ideal(path: str) -> MonomialIdeal:
    return ideal_from_dict(_parse_json(_read(path), path))


def load_graph_or_ideal(path: str) -> Union[Graph, MonomialIdeal]:
    """reg コマンドの入力：gens を持つ JSON はイデアル、それ以外はグラフ"""
    text = _read(path)
    if text.lstrip().startswith("{"):
        data = _parse_json(text, path)
        if isinstance(data, dict) and "gens" in data:
            return ideal_from_dict(data)
        return graph_from_dict(data)
    return parse_graph_text(text)


def load_params(path: str) -> CWParams:
    data = _parse_json(_read(path), path)
    try:
        return CWParams.from_dict(data)
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"params JSON must look like {PARAMS_JSON_SCHEMA} ({e})")


def betti_to_csv(table: BettiTable) -> str:
    """粗い Betti 表の CSV（i, j, rank）"""
    frame = pd.DataFrame(table.to_rows(), columns=["i", "j", "rank"])
    return frame.to_csv(index=False, lineterminator="\n")


def betti_to_json(table: BettiTable) -> str:
    return json.dumps(table.to_dict(), ensure_ascii=False, indent=2) + "\n"
