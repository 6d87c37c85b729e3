"""
検証スイープ

定理の等式・下界・コロン補題・証明中の不等式・通常冪・偏極化オラクルを
具体的なインスタンスで厳密に確認し、VerificationReport にまとめる。
"""
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations_with_replacement
import logging
import time
import sys
import os

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config.defaults import CAPS, DEFAULT_UNION_LIMIT, apply_cap_overrides
from modules.cache import ResultCache, cache_key
from modules.cw_structure import SKELETON, FamilyBounds, decompose, is_cameron_walker, iter_family
from modules.errors import BoundsExceeded, CapExceeded, NotCameronWalker, NotConnected, PreconditionFailed
from modules.evaluator import (
    VerificationReport,
    build_metadata,
    empty_row,
    evaluate_lower_bound_row,
    evaluate_theorem_row,
    formula_value,
    skipped_status,
    status_from,
)
from modules.formats import format_ideal
from modules.graph_core import (
    Graph,
    atlas_connected_graphs,
    compact,
    delete_vertices,
    disjoint_union,
    induced_matching_number,
    iter_connected_graphs,
    matching_number,
    minimal_vertex_covers,
    pendant_features,
    relabel,
    structural_predicates,
)
from modules.monomial_algebra import (
    MonomialIdeal,
    add_variables,
    colon_by_monomial,
    contains_ideal,
    edge_ideal,
    equals,
    monomial_from_vertices,
    power,
    symbolic_power,
)
from modules.polarization import random_monomial_ideal, regularity_via_polarization
from modules.resolution import CoefficientField, betti_table, regularity

logger = logging.getLogger(__name__)

GraphEntry = Tuple[str, str, Graph]


@dataclass(frozen=True)
class SweepTask:
    """(グラフ, s) 1組分の計算単位。ワーカープロセスへそのまま渡す"""

    mode: str
    graph_id: str
    provenance: str
    graph: Graph
    s: int
    field_char: int
    ordinary: bool = False
    oracle: bool = False
    cached_symbolic: Optional[int] = None
    cached_ordinary: Optional[int] = None
    timing: bool = True


@dataclass(frozen=True)
class OracleTask:
    graph_id: str
    provenance: str
    ideal: MonomialIdeal
    field_char: int
    box: bool = False
    timing: bool = True


def _elapsed_ms(start: float, timing: bool) -> int:
    return int(round((time.perf_counter() - start) * 1000)) if timing else 0


def _numbered(prefix: str, entries: Sequence[Tuple[str, Graph]]) -> List[GraphEntry]:
    width = max(4, len(str(len(entries))))
    return [(f"{prefix}{k:0{width}d}", provenance, graph) for k, (provenance, graph) in enumerate(entries, 1)]


def _run_tasks(worker: Callable, tasks: List[Any], jobs: int) -> List[Any]:
    """
    タスクを順序を保って実行（jobs > 1 ならプロセスプール）

    ワーカーには親プロセスの上限値をそのまま引き継ぐ。
    """
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(task) for task in tasks]
    logger.info("%d タスクを %d ワーカーで実行", len(tasks), jobs)
    with ProcessPoolExecutor(max_workers=jobs, initializer=apply_cap_overrides, initargs=(dict(CAPS),)) as executor:
        return list(executor.map(worker, tasks, chunksize=1))


def _cached(cache: Optional[ResultCache], graph: Graph, s: int, field_char: int, kind: str) -> Optional[int]:
    if cache is None:
        return None
    return cache.get(cache_key(graph.content_hash(), s, field_char, kind))


def _store(cache: Optional[ResultCache], task: SweepTask, fresh: Dict[str, int]) -> None:
    if cache is None:
        return
    for kind, value in fresh.items():
        cache.put(cache_key(task.graph.content_hash(), task.s, task.field_char, kind), value)


def _regularity_task(task: SweepTask) -> Tuple[Dict[str, Any], Dict[str, int]]:
    """
    reg(I(G)^(s)) を計算して定理の等式（または下界）を判定

    Returns:
        (行, 新たに計算した値 {"symbolic": …, "ordinary": …})
    """
    start = time.perf_counter()
    graph = task.graph
    row = empty_row(task.graph_id, task.provenance, task.s, task.field_char)
    row.update({"n": graph.n, "m": graph.m})
    fresh: Dict[str, int] = {}
    detail: Dict[str, Any] = {}
    field_ = CoefficientField(task.field_char)
    try:
        row["match"] = matching_number(graph)
        row["ind_match"] = induced_matching_number(graph)
        ideal = None
        if task.cached_symbolic is not None:
            row["reg_symbolic"] = task.cached_symbolic
        else:
            ideal = symbolic_power(graph, task.s)
            row["reg_symbolic"] = regularity(ideal, field_)
            fresh["symbolic"] = row["reg_symbolic"]
    except CapExceeded as e:
        row["formula_value"] = formula_value(task.s, row["ind_match"])
        row["status"] = skipped_status(e)
        row["elapsed_ms"] = _elapsed_ms(start, task.timing)
        logger.info("%s s=%d skipped: %s", task.graph_id, task.s, e)
        return row, fresh

    if task.mode == "lower_bound":
        row["status"] = evaluate_lower_bound_row(row)
        detail["tight"] = row["reg_symbolic"] == row["formula_value"]
    else:
        row["status"] = evaluate_theorem_row(row)

    if task.ordinary:
        try:
            if task.cached_ordinary is not None:
                row["reg_ordinary"] = task.cached_ordinary
            else:
                row["reg_ordinary"] = regularity(power(edge_ideal(graph), task.s), field_)
                fresh["ordinary"] = row["reg_ordinary"]
            detail["ordinary_formula"] = row["reg_ordinary"] == row["formula_value"]
            if task.mode == "theorem" and not detail["ordinary_formula"]:
                row["status"] = "violated"
        except CapExceeded as e:
            detail["ordinary_formula"] = skipped_status(e)

    if task.oracle:
        try:
            ideal = ideal if ideal is not None else symbolic_power(graph, task.s)
            detail["reg_polarization"] = regularity_via_polarization(ideal, field_)
            if detail["reg_polarization"] != row["reg_symbolic"]:
                row["status"] = "violated"
        except CapExceeded as e:
            detail["reg_polarization"] = skipped_status(e)

    if detail:
        row["detail"] = detail
    row["elapsed_ms"] = _elapsed_ms(start, task.timing)
    logger.debug("%s s=%d: %s", task.graph_id, task.s, row["status"])
    return row, fresh


def check_theorem_instance(
    graph: Graph,
    s: int,
    field_: Optional[CoefficientField] = None,
    ordinary: bool = False,
    oracle: bool = False,
) -> Dict[str, Any]:
    """単一の (G, s) について reg(I(G)^(s)) = 2s + ind-match(G) − 1 を確認した行を返す"""
    field_ = field_ or CoefficientField(0)
    task = SweepTask("theorem", "single", "input", graph, s, field_.characteristic, ordinary, oracle)
    return _regularity_task(task)[0]


def _sweep_rows(
    mode: str,
    entries: List[GraphEntry],
    s_values: Iterable[int],
    field_: CoefficientField,
    jobs: int,
    cache: Optional[ResultCache],
    timing: bool,
    ordinary: bool = False,
    oracle: bool = False,
) -> List[Dict[str, Any]]:
    s_values = list(s_values)
    char = field_.characteristic
    tasks = [
        SweepTask(
            mode,
            graph_id,
            provenance,
            graph,
            s,
            char,
            ordinary=ordinary,
            oracle=oracle,
            cached_symbolic=_cached(cache, graph, s, char, "symbolic"),
            cached_ordinary=_cached(cache, graph, s, char, "ordinary") if ordinary else None,
            timing=timing,
        )
        for graph_id, provenance, graph in entries
        for s in s_values
    ]
    rows = []
    for task, (row, fresh) in zip(tasks, _run_tasks(_regularity_task, tasks, jobs)):
        _store(cache, task, fresh)
        rows.append(row)
    return rows


def theorem_graphs(
    bounds: FamilyBounds,
    unions: bool = True,
    union_limit: int = DEFAULT_UNION_LIMIT,
) -> List[GraphEntry]:
    """
    定理スイープの対象グラフ

    iter_family の各グラフに続けて、頂点数が範囲内に収まる2つの非交和を
    (i ≤ j) の辞書式順に最大 union_limit 個加える。

    Args:
        bounds: FamilyBounds
        unions: 非交和を含めるか
        union_limit: 非交和の個数の上限

    Returns:
        (graph_id, provenance, graph) のリスト
    """
    members = list(iter_family(bounds))
    entries = _numbered("cw", [(params.label(), graph) for params, graph in members])
    if not unions:
        return entries

    pairs = []
    for i, j in combinations_with_replacement(range(len(members)), 2):
        if len(pairs) >= union_limit:
            break
        first, second = members[i][1], members[j][1]
        if first.n + second.n > bounds.max_vertices:
            continue
        pairs.append((f"union({entries[i][0]},{entries[j][0]})", disjoint_union(first, second)))
    return entries + _numbered("un", pairs)


def verify_theorem_sweep(
    bounds: FamilyBounds,
    s_values: Iterable[int],
    field_: Optional[CoefficientField] = None,
    jobs: int = 1,
    cache: Optional[ResultCache] = None,
    unions: bool = True,
    union_limit: int = DEFAULT_UNION_LIMIT,
    ordinary: bool = False,
    oracle: bool = False,
    timing: bool = True,
) -> VerificationReport:
    """
    Cameron-Walker グラフの族について reg(I(G)^(s)) = 2s + ind-match(G) − 1 を確認

    Args:
        bounds: 族の範囲
        s_values: 確認する s
        field_: 係数体
        jobs: ワーカー数
        cache: 正則性のキャッシュ
        unions: 非連結な例（2つの非交和）を含めるか
        union_limit: 非交和の個数の上限
        ordinary: 通常冪の正則性の列も計算するか
        oracle: 偏極化による検算も行うか
        timing: elapsed_ms を記録するか

    Returns:
        VerificationReport
    """
    field_ = field_ or CoefficientField(0)
    s_values = list(s_values)
    entries = theorem_graphs(bounds, unions, union_limit)
    logger.info("定理スイープ: %d グラフ × s=%s", len(entries), s_values)
    rows = _sweep_rows("theorem", entries, s_values, field_, jobs, cache, timing, ordinary, oracle)
    config = {
        "bounds": {k: v for k, v in bounds.__dict__.items() if k != "skeleton_pool"},
        "s_values": s_values,
        "field_char": field_.characteristic,
        "unions": unions,
        "union_limit": union_limit,
        "ordinary": ordinary,
        "oracle": oracle,
        "caps": dict(CAPS),
    }
    return VerificationReport("theorem", rows, build_metadata("theorem", config))


def verify_lower_bound(
    n_max: int,
    s_values: Iterable[int],
    field_: Optional[CoefficientField] = None,
    jobs: int = 1,
    cache: Optional[ResultCache] = None,
    atlas: bool = False,
    timing: bool = True,
) -> VerificationReport:
    """
    すべての連結グラフ（頂点数 n_max 以下）で reg(I(G)^(s)) ≥ 2s + ind-match(G) − 1 を確認

    Args:
        n_max: 最大頂点数（CAPS["lower_bound_vertices"] まで）
        s_values: 確認する s
        field_: 係数体
        jobs: ワーカー数
        cache: 正則性のキャッシュ
        atlas: 同型類の代表だけを使うか（既定はラベル付きの全列挙）
        timing: elapsed_ms を記録するか

    Returns:
        VerificationReport（detail.tight に等号成立を記録）
    """
    if n_max > CAPS["lower_bound_vertices"]:
        raise BoundsExceeded(f"n_max={n_max} exceeds {CAPS['lower_bound_vertices']}")
    field_ = field_ or CoefficientField(0)
    s_values = list(s_values)
    graphs = atlas_connected_graphs(n_max) if atlas else iter_connected_graphs(n_max)
    source = "atlas" if atlas else "connected"
    entries = _numbered("cg", [(source, graph) for graph in graphs])
    logger.info("下界スイープ: %d グラフ × s=%s", len(entries), s_values)
    rows = _sweep_rows("lower_bound", entries, s_values, field_, jobs, cache, timing)
    config = {"n_max": n_max, "s_values": s_values, "field_char": field_.characteristic, "atlas": atlas}
    return VerificationReport("lower-bound", rows, build_metadata("lower-bound", config))


def verify_colon_lemmas(graph: Graph, s: int) -> Dict[str, Any]:
    """
    ペンダント三角形とペンダント辺についてのコロンの等式を確認

    三角形 {a, b, c}: (I^(s) : x_a x_b x_c) = I^(s−2)、かつすべての極小頂点被覆 C で |C ∩ T| = 2。
    ペンダント辺 uv: (I^(s) : x_u x_v) = I^(s−1)。

    Args:
        graph: 辺を持つグラフ
        s: 1以上

    Returns:
        s, checks（特徴ごとの判定）, holds の辞書
    """
    if s < 1:
        raise PreconditionFailed(f"colon checks need s >= 1, got {s}")
    covers = minimal_vertex_covers(graph)
    current = symbolic_power(graph, s, covers)
    features = pendant_features(graph)
    checks = []

    for triangle in features["pendant_triangles"]:
        members = set(triangle.vertices)
        quotient = colon_by_monomial(current, monomial_from_vertices(triangle.vertices, graph.n))
        checks.append({
            "feature": "pendant_triangle",
            "vertices": list(triangle.vertices),
            "apex": triangle.apex,
            "holds": equals(quotient, symbolic_power(graph, s - 2, covers)),
            "cover_intersection": all(len(members.intersection(cover)) == 2 for cover in covers),
        })

    for edge in features["pendant_edges"]:
        quotient = colon_by_monomial(current, monomial_from_vertices(edge, graph.n))
        checks.append({
            "feature": "pendant_edge",
            "vertices": list(edge),
            "holds": equals(quotient, symbolic_power(graph, s - 1, covers)),
        })

    holds = all(check["holds"] and check.get("cover_intersection", True) for check in checks)
    return {"s": s, "checks": checks, "holds": holds}


def _colon_task(task: SweepTask) -> Tuple[Dict[str, Any], Dict[str, int]]:
    start = time.perf_counter()
    graph = task.graph
    row = empty_row(task.graph_id, task.provenance, task.s, task.field_char)
    row.update({"n": graph.n, "m": graph.m})
    try:
        row["match"] = matching_number(graph)
        row["ind_match"] = induced_matching_number(graph)
        row["formula_value"] = formula_value(task.s, row["ind_match"])
        result = verify_colon_lemmas(graph, task.s)
        if result["checks"]:
            row["status"] = status_from(result["holds"])
        else:
            row["status"] = "skipped:no_pendant_features"
        row["detail"] = result["checks"]
    except CapExceeded as e:
        row["status"] = skipped_status(e)
    row["elapsed_ms"] = _elapsed_ms(start, task.timing)
    return row, {}


def verify_colon_sweep(
    bounds: FamilyBounds,
    s_values: Iterable[int],
    jobs: int = 1,
    unions: bool = False,
    union_limit: int = DEFAULT_UNION_LIMIT,
    timing: bool = True,
) -> VerificationReport:
    """族のすべてのグラフでコロンの等式を確認（体に依存しないので標数は0と記録）"""
    s_values = list(s_values)
    entries = theorem_graphs(bounds, unions, union_limit)
    tasks = [
        SweepTask("colon", graph_id, provenance, graph, s, 0, timing=timing)
        for graph_id, provenance, graph in entries
        for s in s_values
    ]
    rows = [row for row, _ in _run_tasks(_colon_task, tasks, jobs)]
    config = {"bounds": {k: v for k, v in bounds.__dict__.items() if k != "skeleton_pool"}, "s_values": s_values}
    return VerificationReport("colon", rows, build_metadata("colon", config))


def _skeleton_type(graph: Graph) -> bool:
    try:
        return decompose(graph).kind == SKELETON
    except (NotCameronWalker, NotConnected):
        return False


def _proof_labeling(graph: Graph) -> Tuple[Dict[int, int], Any]:
    """最初のペンダント三角形を apex → 1, 底辺 → 2, 3 に、残りをラベル順に 4.. へ送る置換"""
    triangles = pendant_features(graph)["pendant_triangles"]
    if not triangles:
        raise PreconditionFailed("graph has no pendant triangle")
    triangle = triangles[0]
    order = [triangle.apex, *triangle.base] + [v for v in graph.vertices if v not in triangle.vertices]
    return {old: new for new, old in enumerate(order, 1)}, triangle


def proof_trace_applicable(graph: Graph) -> bool:
    """骨格型の Cameron-Walker グラフで、ペンダント三角形を持ち、その底辺を除いても辺が残るか"""
    if not _skeleton_type(graph):
        return False
    try:
        mapping, _ = _proof_labeling(graph)
    except PreconditionFailed:
        return False
    base = [v for v, new in mapping.items() if new in (2, 3)]
    return delete_vertices(graph, base)[0].m > 0


def proof_trace(graph: Graph, s: int, field_: Optional[CoefficientField] = None) -> Dict[str, Any]:
    """
    定理の証明に現れるイデアルをすべて計算し、各不等式を具体的に確認

    ペンダント三角形を {x1, x2, x3}（x1 が apex）に付け替えてから計算する。
    step 1〜9 は証明中の番号付き不等式、step を持たない項目は
    それらをつなぐ補助的な主張（イデアルの等式・誘導部分グラフでの単調性など）。

    Args:
        graph: ペンダント三角形を持つ骨格型の Cameron-Walker グラフ
        s: 2以上
        field_: 係数体

    Returns:
        relabeling, triangle, s, ind_match, is_chordal, regularities, checks, holds の辞書
    """
    field_ = field_ or CoefficientField(0)
    if s < 2:
        raise PreconditionFailed(f"proof trace needs s >= 2, got {s}")
    mapping, triangle = _proof_labeling(graph)
    if not _skeleton_type(graph):
        raise PreconditionFailed("graph is not a connected Cameron-Walker graph of skeleton type")
    g = relabel(graph, mapping)
    n = g.n
    without_23, compaction = delete_vertices(g, (2, 3))
    if without_23.m == 0:
        raise PreconditionFailed("removing the triangle base leaves no edge")
    without_2, _ = delete_vertices(g, (2,))
    without_3, _ = delete_vertices(g, (3,))

    x1 = monomial_from_vertices((1,), n)
    x3 = monomial_from_vertices((3,), n)
    x12 = monomial_from_vertices((1, 2), n)
    x123 = monomial_from_vertices((1, 2, 3), n)

    covers = minimal_vertex_covers(g)
    ideal = symbolic_power(g, s, covers)
    colon_1 = colon_by_monomial(ideal, x1)
    colon_12 = colon_by_monomial(ideal, x12)
    colon_1_plus_2 = add_variables(colon_1, (2,))
    ideals = {
        "I": ideal,
        "I_prev": symbolic_power(g, s - 1, covers),
        "I_prev2": symbolic_power(g, s - 2, covers),
        "I:x1": colon_1,
        "I+x1": add_variables(ideal, (1,)),
        "I:x1x2": colon_12,
        "(I:x1)+x2": colon_1_plus_2,
        "I:x1x2x3": colon_by_monomial(ideal, x123),
        "(I:x1x2)+x3": add_variables(colon_12, (3,)),
        "((I:x1)+x2):x3": colon_by_monomial(colon_1_plus_2, x3),
        "(I:x1)+x2+x3": add_variables(colon_1, (2, 3)),
        "J3_prev": symbolic_power(without_3, s - 1),
        "J2_prev": symbolic_power(without_2, s - 1),
        "J23": symbolic_power(without_23, s),
    }
    ideals["J23:x1"] = colon_by_monomial(ideals["J23"], x1)
    reg = {name: regularity(value, field_) for name, value in ideals.items()}

    ind_match = induced_matching_number(g)
    bound = 2 * s + ind_match - 1
    checks: List[Dict[str, Any]] = []

    def inequality(step: Optional[int], key: str, description: str, lhs: int, rhs: int) -> None:
        checks.append({"step": step, "key": key, "description": description, "lhs": lhs, "rhs": rhs, "holds": lhs <= rhs})

    def identity(key: str, description: str, first: MonomialIdeal, second: MonomialIdeal) -> None:
        checks.append({"step": None, "key": key, "description": description, "lhs": None, "rhs": None, "holds": equals(first, second)})

    inequality(1, "split_x1", "reg(I) <= max(reg(I:x1)+1, reg(I+x1))",
               reg["I"], max(reg["I:x1"] + 1, reg["I+x1"]))
    inequality(2, "sum_x1_bound", "reg(I+x1) <= 2s+im-1", reg["I+x1"], bound)
    inequality(3, "split_x2", "reg(I:x1) <= max(reg(I:x1x2)+1, reg((I:x1)+x2))",
               reg["I:x1"], max(reg["I:x1x2"] + 1, reg["(I:x1)+x2"]))
    inequality(4, "split_x3", "reg(I:x1x2) <= max(reg(I:x1x2x3)+1, reg((I:x1x2)+x3))",
               reg["I:x1x2"], max(reg["I:x1x2x3"] + 1, reg["(I:x1x2)+x3"]))
    inequality(5, "triple_colon_bound", "reg(I:x1x2x3) <= 2s+im-5", reg["I:x1x2x3"], bound - 4)
    inequality(6, "colon_x1x2_sum_x3_bound", "reg((I:x1x2)+x3) <= 2s+im-3", reg["(I:x1x2)+x3"], bound - 2)
    inequality(7, "split_x3_again", "reg((I:x1)+x2) <= max(reg(((I:x1)+x2):x3)+1, reg((I:x1)+x2+x3))",
               reg["(I:x1)+x2"], max(reg["((I:x1)+x2):x3"] + 1, reg["(I:x1)+x2+x3"]))
    inequality(8, "sum_x2_colon_x3_bound", "reg(((I:x1)+x2):x3) <= 2s+im-3", reg["((I:x1)+x2):x3"], bound - 2)
    inequality(9, "sum_x2x3_bound", "reg((I:x1)+x2+x3) <= 2s+im-2", reg["(I:x1)+x2+x3"], bound - 1)

    inequality(None, "colon_x1x2_claim", "reg(I:x1x2) <= 2s+im-3", reg["I:x1x2"], bound - 2)
    inequality(None, "sum_x2_claim", "reg((I:x1)+x2) <= 2s+im-2", reg["(I:x1)+x2"], bound - 1)
    inequality(None, "colon_x1_bound", "reg(I:x1) <= 2s+im-2", reg["I:x1"], bound - 1)
    inequality(None, "deletion_colon", "reg(I(G-{x2,x3})^(s):x1) <= reg(I(G-{x2,x3})^(s))",
               reg["J23:x1"], reg["J23"])
    inequality(None, "monotone_x3", "reg(I(G-x3)^(s-1)) <= reg(I^(s-1))", reg["J3_prev"], reg["I_prev"])
    inequality(None, "monotone_x2", "reg(I(G-x2)^(s-1)) <= reg(I^(s-1))", reg["J2_prev"], reg["I_prev"])
    inequality(None, "previous_power_bound", "reg(I^(s-1)) <= 2s+im-3", reg["I_prev"], bound - 2)

    identity("triple_colon", "I:x1x2x3 = I^(s-2)", ideals["I:x1x2x3"], ideals["I_prev2"])
    identity("pendant_x1x2", "(I:x1x2)+x3 = I(G-x3)^(s-1)+x3",
             ideals["(I:x1x2)+x3"], add_variables(ideals["J3_prev"], (3,)))
    identity("pendant_x1x3", "((I:x1)+x2):x3 = I(G-x2)^(s-1)+x2",
             ideals["((I:x1)+x2):x3"], add_variables(ideals["J2_prev"], (2,)))
    identity("deleted_base", "(I:x1)+x2+x3 = (I(G-{x2,x3})^(s):x1)+x2+x3",
             ideals["(I:x1)+x2+x3"], add_variables(ideals["J23:x1"], (2, 3)))
    dropped = induced_matching_number(compact(without_23, compaction))
    checks.append({
        "step": None,
        "key": "ind_match_drop",
        "description": "ind-match(G-{x2,x3}) = ind-match(G)-1",
        "lhs": dropped,
        "rhs": ind_match - 1,
        "holds": dropped == ind_match - 1,
    })

    return {
        "relabeling": mapping,
        "triangle": {"apex": triangle.apex, "base": list(triangle.base)},
        "s": s,
        "ind_match": ind_match,
        "is_chordal": structural_predicates(graph)["is_chordal"],
        "regularities": reg,
        "checks": checks,
        "holds": all(check["holds"] for check in checks),
    }


def _proof_trace_task(task: SweepTask) -> Tuple[Dict[str, Any], Dict[str, int]]:
    start = time.perf_counter()
    graph = task.graph
    row = empty_row(task.graph_id, task.provenance, task.s, task.field_char)
    row.update({"n": graph.n, "m": graph.m})
    try:
        row["match"] = matching_number(graph)
        row["ind_match"] = induced_matching_number(graph)
        row["formula_value"] = formula_value(task.s, row["ind_match"])
        trace = proof_trace(graph, task.s, CoefficientField(task.field_char))
        row["reg_symbolic"] = trace["regularities"]["I"]
        row["status"] = status_from(trace["holds"] and row["reg_symbolic"] == row["formula_value"])
        row["detail"] = trace["checks"]
    except CapExceeded as e:
        row["status"] = skipped_status(e)
    except PreconditionFailed as e:
        row["status"] = "skipped:precondition"
        row["detail"] = str(e)
    row["elapsed_ms"] = _elapsed_ms(start, task.timing)
    return row, {}


def verify_proof_trace_sweep(
    bounds: FamilyBounds,
    s_values: Iterable[int],
    field_: Optional[CoefficientField] = None,
    jobs: int = 1,
    limit: Optional[int] = None,
    include_chordal: bool = False,
    timing: bool = True,
) -> VerificationReport:
    """
    ペンダント三角形を持つ族のグラフで証明の不等式をすべて確認

    既定では弦グラフでないものだけを選ぶ。s < 2 は対象外。

    Args:
        bounds: 族の範囲
        s_values: 確認する s（2以上のものだけ使う）
        field_: 係数体
        jobs: ワーカー数
        limit: 対象グラフ数の上限
        include_chordal: 弦グラフも含めるか
        timing: elapsed_ms を記録するか

    Returns:
        VerificationReport
    """
    field_ = field_ or CoefficientField(0)
    s_values = [s for s in s_values if s >= 2]
    selected = []
    for params, graph in iter_family(bounds):
        if limit is not None and len(selected) >= limit:
            break
        if not proof_trace_applicable(graph):
            continue
        if not include_chordal and structural_predicates(graph)["is_chordal"]:
            continue
        selected.append((params.label(), graph))
    entries = _numbered("cw", selected)
    logger.info("証明の追跡: %d グラフ × s=%s", len(entries), s_values)
    tasks = [
        SweepTask("proof_trace", graph_id, provenance, graph, s, field_.characteristic, timing=timing)
        for graph_id, provenance, graph in entries
        for s in s_values
    ]
    rows = [row for row, _ in _run_tasks(_proof_trace_task, tasks, jobs)]
    config = {
        "bounds": {k: v for k, v in bounds.__dict__.items() if k != "skeleton_pool"},
        "s_values": s_values,
        "field_char": field_.characteristic,
        "limit": limit,
        "include_chordal": include_chordal,
    }
    return VerificationReport("proof-trace", rows, build_metadata("proof-trace", config))


def verify_ordinary_power(graph: Graph, s: int, field_: Optional[CoefficientField] = None) -> Dict[str, Any]:
    """
    通常冪 I(G)^s について reg(I^s) = 2s + ind-match(G) − 1 を確認

    二部グラフでは I^s = I^(s) を、すべての場合で reg(I^(s)) = reg(I^s) も確認する。

    Args:
        graph: Cameron-Walker グラフ
        s: 1以上
        field_: 係数体

    Returns:
        reg_ordinary, reg_symbolic, formula_value, is_bipartite, checks, holds の辞書
    """
    field_ = field_ or CoefficientField(0)
    if not is_cameron_walker(graph):
        raise PreconditionFailed("graph is not Cameron-Walker")
    ind_match = induced_matching_number(graph)
    ordinary = power(edge_ideal(graph), s)
    symbolic = symbolic_power(graph, s)
    reg_ordinary = regularity(ordinary, field_)
    reg_symbolic = regularity(symbolic, field_)
    bipartite = structural_predicates(graph)["is_bipartite"]
    checks = {
        "formula": reg_ordinary == formula_value(s, ind_match),
        "containment": contains_ideal(symbolic, ordinary),
        "ideal_equal": equals(ordinary, symbolic) if bipartite else None,
        "same_regularity": reg_ordinary == reg_symbolic,
    }
    holds = checks["formula"] and checks["containment"] and checks["same_regularity"] and checks["ideal_equal"] is not False
    return {
        "reg_ordinary": reg_ordinary,
        "reg_symbolic": reg_symbolic,
        "formula_value": formula_value(s, ind_match),
        "is_bipartite": bipartite,
        "checks": checks,
        "holds": holds,
    }


def _ordinary_task(task: SweepTask) -> Tuple[Dict[str, Any], Dict[str, int]]:
    start = time.perf_counter()
    graph = task.graph
    row = empty_row(task.graph_id, task.provenance, task.s, task.field_char)
    row.update({"n": graph.n, "m": graph.m})
    fresh: Dict[str, int] = {}
    try:
        row["match"] = matching_number(graph)
        row["ind_match"] = induced_matching_number(graph)
        result = verify_ordinary_power(graph, task.s, CoefficientField(task.field_char))
        row["reg_symbolic"] = result["reg_symbolic"]
        row["reg_ordinary"] = result["reg_ordinary"]
        row["formula_value"] = result["formula_value"]
        row["status"] = status_from(result["holds"])
        row["detail"] = result["checks"]
        fresh = {"symbolic": result["reg_symbolic"], "ordinary": result["reg_ordinary"]}
    except CapExceeded as e:
        row["formula_value"] = formula_value(task.s, row["ind_match"])
        row["status"] = skipped_status(e)
    row["elapsed_ms"] = _elapsed_ms(start, task.timing)
    return row, fresh


def verify_ordinary_sweep(
    bounds: FamilyBounds,
    s_values: Iterable[int],
    field_: Optional[CoefficientField] = None,
    jobs: int = 1,
    cache: Optional[ResultCache] = None,
    unions: bool = True,
    union_limit: int = DEFAULT_UNION_LIMIT,
    timing: bool = True,
) -> VerificationReport:
    """族のすべてのグラフで verify_ordinary_power を実行"""
    field_ = field_ or CoefficientField(0)
    s_values = list(s_values)
    entries = theorem_graphs(bounds, unions, union_limit)
    tasks = [
        SweepTask("ordinary", graph_id, provenance, graph, s, field_.characteristic, timing=timing)
        for graph_id, provenance, graph in entries
        for s in s_values
    ]
    rows = []
    for task, (row, fresh) in zip(tasks, _run_tasks(_ordinary_task, tasks, jobs)):
        _store(cache, task, fresh)
        rows.append(row)
    config = {
        "bounds": {k: v for k, v in bounds.__dict__.items() if k != "skeleton_pool"},
        "s_values": s_values,
        "field_char": field_.characteristic,
        "unions": unions,
        "union_limit": union_limit,
    }
    return VerificationReport("ordinary", rows, build_metadata("ordinary", config))


def _oracle_task(task: OracleTask) -> Dict[str, Any]:
    start = time.perf_counter()
    ideal = task.ideal
    row = empty_row(task.graph_id, task.provenance, None, task.field_char)
    row.update({"n": ideal.n, "m": len(ideal)})
    field_ = CoefficientField(task.field_char)
    detail: Dict[str, Any] = {}
    try:
        row["reg_symbolic"] = regularity(ideal, field_)
        detail["reg_polarization"] = regularity_via_polarization(ideal, field_)
        holds = detail["reg_polarization"] == row["reg_symbolic"]
        if task.box and not ideal.is_unit and len(ideal) > 0:
            detail["box_equal"] = (
                betti_table(ideal, field_, method="box").multigraded
                == betti_table(ideal, field_, method="lcm").multigraded
            )
            holds = holds and detail["box_equal"]
        row["status"] = status_from(holds)
    except CapExceeded as e:
        row["status"] = skipped_status(e)
    row["detail"] = detail
    row["elapsed_ms"] = _elapsed_ms(start, task.timing)
    return row


def oracle_ideals(
    count: int,
    seed: int,
    n_vars: int = 6,
    max_gens: int = 10,
    max_exponent: int = 3,
    box_count: int = 25,
) -> List[Tuple[str, MonomialIdeal, bool]]:
    """
    オラクル検算用のランダムなイデアル

    count 個の一般の例に続けて、箱の全列挙と比較する小さな例
    （4変数、生成元6個まで、指数2まで）を box_count 個つくる。
    """
    rng = np.random.default_rng(seed)
    ideals = []
    for k in range(count):
        ideals.append((f"random(seed={seed},k={k})", random_monomial_ideal(rng, n_vars, max_gens, max_exponent), False))
    for k in range(box_count):
        ideals.append((f"random_box(seed={seed},k={k})", random_monomial_ideal(rng, 4, 6, 2), True))
    return ideals


def verify_oracle_sweep(
    count: int = 100,
    seed: int = 0,
    field_chars: Sequence[int] = (0, 2),
    jobs: int = 1,
    n_vars: int = 6,
    max_gens: int = 10,
    max_exponent: int = 3,
    box_count: int = 25,
    timing: bool = True,
) -> VerificationReport:
    """
    上部 Koszul 法と偏極化 + Hochster の公式で正則性が一致するかをランダムなイデアルで確認

    行の reg_symbolic 列には reg(I) を、n と m には変数と生成元の個数を記録する。

    Returns:
        VerificationReport
    """
    ideals = oracle_ideals(count, seed, n_vars, max_gens, max_exponent, box_count)
    width = max(4, len(str(len(ideals))))
    tasks = [
        OracleTask(f"rd{k:0{width}d}", f"{label}:{format_ideal(ideal)}", ideal, char, box, timing)
        for k, (label, ideal, box) in enumerate(ideals, 1)
        for char in field_chars
    ]
    rows = _run_tasks(_oracle_task, tasks, jobs)
    config = {
        "count": count,
        "seed": seed,
        "field_chars": list(field_chars),
        "n_vars": n_vars,
        "max_gens": max_gens,
        "max_exponent": max_exponent,
        "box_count": box_count,
    }
    return VerificationReport("oracle", rows, build_metadata("oracle", config))
