"""
Cameron-Walker グラフの判定・分解・生成
"""
from typing import Any, Dict, Iterator, List, Optional, Tuple
from dataclasses import dataclass, field
from itertools import product
import logging
import sys
import os

import networkx as nx

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config.defaults import CAPS
from modules.errors import BoundsExceeded, NotCameronWalker, NotConnected
from modules.graph_core import (
    Graph,
    VertexSet,
    induced_matching_number,
    is_connected,
    matching_number,
    pendant_features,
)

logger = logging.getLogger(__name__)

STAR = "star"
STAR_TRIANGLE = "star_triangle"
SKELETON = "skeleton"
KINDS = (STAR, STAR_TRIANGLE, SKELETON)


@dataclass(frozen=True)
class CWParams:
    """generate() の入力。pendants / triangles は x_part / y_part の順に対応する"""

    kind: str
    m: int = 0
    t: int = 0
    skeleton: Optional[Graph] = None
    x_part: VertexSet = ()
    y_part: VertexSet = ()
    pendants: Tuple[int, ...] = ()
    triangles: Tuple[int, ...] = ()

    def vertex_total(self) -> int:
        if self.kind == STAR:
            return self.m + 1
        if self.kind == STAR_TRIANGLE:
            return 2 * self.t + 1
        return self.skeleton.n + sum(self.pendants) + 2 * sum(self.triangles)

    def label(self) -> str:
        """レポートの provenance 欄に書く短い表記"""
        if self.kind == STAR:
            return f"star(m={self.m})"
        if self.kind == STAR_TRIANGLE:
            return f"star_triangle(t={self.t})"
        edges = " ".join(f"{u}-{v}" for u, v in self.skeleton.edges)
        pendants = ",".join(f"{x}:{c}" for x, c in zip(self.x_part, self.pendants))
        triangles = ",".join(f"{y}:{c}" for y, c in zip(self.y_part, self.triangles))
        return f"skeleton(H=[{edges}];pendants={{{pendants}}};triangles={{{triangles}}})"

    def to_dict(self) -> Dict[str, Any]:
        if self.kind == STAR:
            return {"kind": STAR, "m": self.m}
        if self.kind == STAR_TRIANGLE:
            return {"kind": STAR_TRIANGLE, "t": self.t}
        return {
            "kind": SKELETON,
            "skeleton": {"n": self.skeleton.n, "edges": [list(e) for e in self.skeleton.edges]},
            "x": list(self.x_part),
            "y": list(self.y_part),
            "pendants": {str(x): c for x, c in zip(self.x_part, self.pendants)},
            "triangles": {str(y): c for y, c in zip(self.y_part, self.triangles)},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CWParams":
        kind = data.get("kind")
        if kind == STAR:
            return cls(STAR, m=int(data["m"]))
        if kind == STAR_TRIANGLE:
            return cls(STAR_TRIANGLE, t=int(data["t"]))
        if kind != SKELETON:
            raise ValueError(f"Unsupported kind: {kind}")
        skeleton = Graph.from_edges(int(data["skeleton"]["n"]), data["skeleton"]["edges"])
        x_part = tuple(sorted(int(x) for x in data["x"]))
        y_part = tuple(sorted(int(y) for y in data["y"]))
        pendants = {int(k): int(v) for k, v in data.get("pendants", {}).items()}
        triangles = {int(k): int(v) for k, v in data.get("triangles", {}).items()}
        return cls(
            SKELETON,
            skeleton=skeleton,
            x_part=x_part,
            y_part=y_part,
            pendants=tuple(pendants.get(x, 0) for x in x_part),
            triangles=tuple(triangles.get(y, 0) for y in y_part),
        )


@dataclass(frozen=True)
class CWDecomposition:
    """構造定理による分解。skeleton は元のグラフのラベル空間上に置く"""

    kind: str
    center: Optional[int] = None
    size: int = 0
    skeleton: Optional[Graph] = None
    x_part: VertexSet = ()
    y_part: VertexSet = ()
    pendant_edge_counts: Dict[int, int] = field(default_factory=dict)
    pendant_triangle_counts: Dict[int, int] = field(default_factory=dict)

    def to_params(self) -> CWParams:
        """骨格の頂点をラベル順に 1..h へ詰めて CWParams に変換"""
        if self.kind == STAR:
            return CWParams(STAR, m=self.size)
        if self.kind == STAR_TRIANGLE:
            return CWParams(STAR_TRIANGLE, t=self.size)
        order = sorted(self.x_part + self.y_part)
        mapping = {old: new for new, old in enumerate(order, start=1)}
        skeleton = Graph.from_edges(len(order), ((mapping[u], mapping[v]) for u, v in self.skeleton.edges))
        return CWParams(
            SKELETON,
            skeleton=skeleton,
            x_part=tuple(mapping[x] for x in self.x_part),
            y_part=tuple(mapping[y] for y in self.y_part),
            pendants=tuple(self.pendant_edge_counts[x] for x in self.x_part),
            triangles=tuple(self.pendant_triangle_counts[y] for y in self.y_part),
        )


@dataclass(frozen=True)
class FamilyBounds:
    max_vertices: int
    max_pendants: int = 2
    max_triangles: int = 2
    max_star: int = 8
    max_star_triangles: int = 3
    skeleton_pool: Optional[Tuple[Graph, ...]] = None


def is_cameron_walker(graph: Graph) -> bool:
    """match(G) = ind-match(G) かどうか"""
    return matching_number(graph) == induced_matching_number(graph)


def _bipartition(graph: Graph, vertices: List[int]) -> Optional[Tuple[VertexSet, VertexSet]]:
    """vertices が誘導する部分グラフの二部分割（最小ラベルを含む側が先頭）。連結でない・奇閉路があれば None"""
    induced = graph.to_networkx().subgraph(vertices)
    if not nx.is_connected(induced) or not nx.is_bipartite(induced):
        return None
    first, second = (tuple(sorted(side)) for side in nx.bipartite.sets(induced))
    if min(vertices) in second:
        first, second = second, first
    return first, second


def _as_star(graph: Graph) -> Optional[CWDecomposition]:
    if graph.n != graph.m + 1:
        return None
    degrees = graph.degrees
    for center in graph.vertices:
        if degrees[center] == graph.m and all(degrees[v] == 1 for v in graph.vertices if v != center):
            return CWDecomposition(STAR, center=center, size=graph.m)
    return None


def _as_star_triangle(graph: Graph) -> Optional[CWDecomposition]:
    if graph.m % 3 != 0:
        return None
    t = graph.m // 3
    if t < 1 or graph.n != 2 * t + 1:
        return None
    for center in graph.vertices:
        if graph.degree(center) != 2 * t:
            continue
        # 中心以外はすべて次数2で中心に隣接 → 残りの辺は完全マッチング
        others = [v for v in graph.vertices if v != center]
        if all(graph.degree(v) == 2 and center in graph.neighbors(v) for v in others):
            return CWDecomposition(STAR_TRIANGLE, center=center, size=t)
    return None


def _as_skeleton(graph: Graph) -> CWDecomposition:
    degrees = graph.degrees
    leaves = [v for v in graph.vertices if degrees[v] == 1]
    leaf_parent = {leaf: next(iter(graph.neighbors(leaf))) for leaf in leaves}

    features = pendant_features(graph)
    apex_counts: Dict[int, int] = {}
    base_vertices = set()
    for triangle in features["pendant_triangles"]:
        if degrees[triangle.apex] == 2:
            raise NotCameronWalker("isolated triangle inside a larger component")
        apex_counts[triangle.apex] = apex_counts.get(triangle.apex, 0) + 1
        base_vertices.update(triangle.base)

    residue = [v for v in graph.vertices if v not in base_vertices and v not in leaf_parent]
    if len(residue) < 2:
        raise NotCameronWalker("skeleton needs at least two vertices")
    coloring = _bipartition(graph, residue)
    if coloring is None:
        raise NotCameronWalker("residue after removing leaves and pendant triangles is not connected bipartite")

    parents = set(leaf_parent.values())
    apexes = set(apex_counts)
    valid = []
    for x_part, y_part in (coloring, coloring[::-1]):
        if (
            all(x in parents for x in x_part)
            and not parents.intersection(y_part)
            and not apexes.intersection(x_part)
        ):
            valid.append((x_part, y_part))
    if not valid:
        raise NotCameronWalker("pendant edges and triangles do not respect a bipartition of the skeleton")
    # 両方成立する場合は最小ラベルを X に含む方
    x_part, y_part = min(valid, key=lambda sides: min(sides[0]))

    allowed = set(residue)
    skeleton_edges = tuple(e for e in graph.edges if e[0] in allowed and e[1] in allowed)
    pendant_counts = {x: 0 for x in x_part}
    for parent in leaf_parent.values():
        pendant_counts[parent] += 1
    return CWDecomposition(
        SKELETON,
        skeleton=Graph(graph.n, skeleton_edges),
        x_part=x_part,
        y_part=y_part,
        pendant_edge_counts=pendant_counts,
        pendant_triangle_counts={y: apex_counts.get(y, 0) for y in y_part},
    )


def decompose(graph: Graph) -> CWDecomposition:
    """
    連結グラフを構造定理に従って分解

    星グラフ → 星三角形 → 骨格（二部グラフ + ペンダント辺 + ペンダント三角形）の順に判定する。
    星としても骨格としても読める場合は星を優先。

    Args:
        graph: 孤立点を持たない連結グラフ

    Returns:
        CWDecomposition（Cameron-Walker でなければ NotCameronWalker）
    """
    if graph.m == 0 or any(d == 0 for d in graph.degrees.values()):
        raise NotConnected("graph has isolated vertices")
    if not is_connected(graph):
        raise NotConnected("graph is disconnected")

    star = _as_star(graph)
    if star is not None:
        return star
    star_triangle = _as_star_triangle(graph)
    if star_triangle is not None:
        return star_triangle
    return _as_skeleton(graph)


def _validate_params(params: CWParams) -> None:
    if params.kind not in KINDS:
        raise BoundsExceeded(f"unknown kind {params.kind}")
    if params.kind == STAR and params.m < 1:
        raise BoundsExceeded("star size must be at least 1")
    if params.kind == STAR_TRIANGLE and params.t < 1:
        raise BoundsExceeded("star triangle needs at least one triangle")
    if params.kind == SKELETON:
        skeleton = params.skeleton
        if skeleton is None or skeleton.n < 2:
            raise BoundsExceeded("skeleton must have at least two vertices")
        if sorted(params.x_part + params.y_part) != list(skeleton.vertices):
            raise BoundsExceeded("X and Y must partition the skeleton vertices")
        if len(params.pendants) != len(params.x_part) or len(params.triangles) != len(params.y_part):
            raise BoundsExceeded("count vectors must match the parts")
        if any(c < 1 for c in params.pendants):
            raise BoundsExceeded("every X vertex needs at least one pendant edge")
        if any(c < 0 for c in params.triangles):
            raise BoundsExceeded("triangle counts must be nonnegative")
        if _bipartition(skeleton, list(skeleton.vertices)) is None:
            raise BoundsExceeded("skeleton must be connected bipartite")
        x_side = set(params.x_part)
        if any((u in x_side) == (v in x_side) for u, v in skeleton.edges):
            raise BoundsExceeded("skeleton edges must join X and Y")
    if params.vertex_total() > CAPS["generate_vertices"]:
        raise BoundsExceeded(f"{params.vertex_total()} vertices exceed {CAPS['generate_vertices']}")


def generate(params: CWParams) -> Graph:
    """
    パラメータから Cameron-Walker グラフを生成

    ラベルは骨格の頂点、ペンダントの葉、三角形の頂点の順に割り当てる。

    Args:
        params: CWParams

    Returns:
        Graph
    """
    _validate_params(params)
    if params.kind == STAR:
        return Graph.from_edges(params.m + 1, ((1, leaf) for leaf in range(2, params.m + 2)))
    if params.kind == STAR_TRIANGLE:
        edges = []
        for k in range(params.t):
            a, b = 2 * k + 2, 2 * k + 3
            edges += [(1, a), (1, b), (a, b)]
        return Graph.from_edges(2 * params.t + 1, edges)

    edges = list(params.skeleton.edges)
    next_label = params.skeleton.n + 1
    for x, count in zip(params.x_part, params.pendants):
        for _ in range(count):
            edges.append((x, next_label))
            next_label += 1
    for y, count in zip(params.y_part, params.triangles):
        for _ in range(count):
            a, b = next_label, next_label + 1
            edges += [(y, a), (y, b), (a, b)]
            next_label += 2
    return Graph.from_edges(next_label - 1, edges)


def is_canonical(params: CWParams) -> bool:
    """decompose(generate(params)) が同じパラメータに戻る形かどうか"""
    if params.kind != SKELETON:
        return True
    graph = generate(params)
    if decompose(graph).kind != SKELETON:
        return False
    return all(
        count > 0 or params.skeleton.degree(y) >= 2
        for y, count in zip(params.y_part, params.triangles)
    )


def default_skeleton_pool(max_vertices: int = 6) -> Tuple[Graph, ...]:
    """パス・星・完全二部グラフからなる小さな連結二部グラフの一覧"""
    pool: List[Graph] = []
    for k in range(2, max_vertices + 1):
        pool.append(Graph.from_edges(k, ((i, i + 1) for i in range(1, k))))
    for k in range(2, max_vertices):
        pool.append(Graph.from_edges(k + 1, ((1, leaf) for leaf in range(2, k + 2))))
    for a in range(2, max_vertices // 2 + 1):
        for b in range(a, max_vertices - a + 1):
            pool.append(Graph.from_edges(a + b, ((i, a + j) for i in range(1, a + 1) for j in range(1, b + 1))))

    unique: List[Graph] = []
    for graph in pool:
        if graph not in unique:
            unique.append(graph)
    return tuple(unique)


def iter_family(bounds: FamilyBounds) -> Iterator[Tuple[CWParams, Graph]]:
    """
    範囲内の Cameron-Walker グラフを決定的な順序で列挙

    星 → 星三角形 → 骨格（骨格の番号、向き、ペンダント数、三角形数の辞書式順）。
    ラベル付きの辺集合で重複を除く。

    Args:
        bounds: FamilyBounds

    Yields:
        (params, graph)
    """
    limit = bounds.max_vertices
    if limit <= 0:
        return
    seen = set()

    def emit(params: CWParams):
        if params.vertex_total() > limit:
            return None
        graph = generate(params)
        if graph in seen:
            return None
        seen.add(graph)
        return params, graph

    candidates: List[CWParams] = []
    candidates += [CWParams(STAR, m=m) for m in range(1, bounds.max_star + 1)]
    candidates += [CWParams(STAR_TRIANGLE, t=t) for t in range(1, bounds.max_star_triangles + 1)]
    for item in map(emit, candidates):
        if item is not None:
            yield item

    pool = bounds.skeleton_pool if bounds.skeleton_pool is not None else default_skeleton_pool()
    for skeleton in pool:
        if skeleton.n > limit:
            continue
        sides = _bipartition(skeleton, list(skeleton.vertices))
        if sides is None:
            logger.warning("骨格候補が連結二部グラフではないためスキップ: %s", skeleton.edges)
            continue
        for x_part, y_part in (sides, sides[::-1]):
            for pendants in product(range(1, bounds.max_pendants + 1), repeat=len(x_part)):
                for triangles in product(range(0, bounds.max_triangles + 1), repeat=len(y_part)):
                    params = CWParams(
                        SKELETON,
                        skeleton=skeleton,
                        x_part=x_part,
                        y_part=y_part,
                        pendants=pendants,
                        triangles=triangles,
                    )
                    item = emit(params)
                    if item is not None:
                        yield item


def enumerate_family(bounds: FamilyBounds) -> List[Graph]:
    return [graph for _, graph in iter_family(bounds)]
