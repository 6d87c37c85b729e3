"""
単純グラフの表現と組合せ不変量
"""
from typing import Any, Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
import hashlib
import sys
import os

import networkx as nx

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config.defaults import CAPS
from modules.errors import InvalidGraph, InvalidVertex, SizeCapExceeded, BoundsExceeded

Edge = Tuple[int, int]
VertexSet = Tuple[int, ...]


@dataclass(frozen=True)
class Graph:
    """頂点 1..n 上の単純無向グラフ。辺は (u, v), u < v の辞書式順で保持"""

    n: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidGraph(f"vertex count must be positive, got {self.n}")
        previous = None
        for u, v in self.edges:
            if not 1 <= u < v <= self.n:
                raise InvalidGraph(f"edge ({u}, {v}) is not canonical for n={self.n}")
            if previous is not None and (u, v) <= previous:
                raise InvalidGraph("edge list must be sorted and free of duplicates")
            previous = (u, v)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Graph":
        """
        任意順の辺リストから正規形のグラフを構築

        Args:
            n: 頂点数
            edges: (u, v) の列。向きは問わない

        Returns:
            Graph（ループ・重複辺は InvalidGraph、範囲外は InvalidVertex）
        """
        seen = set()
        for edge in edges:
            u, v = (int(x) for x in edge)
            if u == v:
                raise InvalidGraph(f"loop at vertex {u}")
            if u > v:
                u, v = v, u
            if u < 1 or v > n:
                raise InvalidVertex(f"edge ({u}, {v}) outside 1..{n}")
            if (u, v) in seen:
                raise InvalidGraph(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        return cls(n, tuple(sorted(seen)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def adjacency(self) -> Dict[int, frozenset]:
        neighbors = {v: set() for v in self.vertices}
        for u, v in self.edges:
            neighbors[u].add(v)
            neighbors[v].add(u)
        return {v: frozenset(adj) for v, adj in neighbors.items()}

    def neighbors(self, vertex: int) -> frozenset:
        return self.adjacency[vertex]

    def degree(self, vertex: int) -> int:
        return len(self.adjacency[vertex])

    @property
    def degrees(self) -> Dict[int, int]:
        return {v: len(adj) for v, adj in self.adjacency.items()}

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency.get(u, ())

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph

    def content_hash(self) -> str:
        """正規辺リストの sha256（キャッシュのキー）"""
        payload = f"{self.n}:" + ";".join(f"{u}-{v}" for u, v in self.edges)
        return hashlib.sha256(payload.encode("ascii")).hexdigest()[:16]


class PendantTriangle(NamedTuple):
    apex: int
    base: Tuple[int, int]

    @property
    def vertices(self) -> VertexSet:
        return tuple(sorted((self.apex,) + self.base))


def _check_edge_cap(graph: Graph, cap: Optional[int]) -> None:
    limit = CAPS["edge_enumeration"] if cap is None else cap
    if graph.m > limit:
        raise SizeCapExceeded("edge_enumeration", limit, graph.m)


def _branch_and_bound(edges: List[Edge], blocks: Dict[Edge, frozenset]) -> int:
    """辺の採用／不採用で分岐し、互いに衝突しない辺集合の最大サイズを求める"""
    best = 0

    def search(remaining: Tuple[Edge, ...], size: int) -> None:
        nonlocal best
        if size + len(remaining) <= best:
            return
        if not remaining:
            best = size
            return
        edge, rest = remaining[0], remaining[1:]
        blocked = blocks[edge]
        search(tuple(f for f in rest if f not in blocked), size + 1)
        search(rest, size)

    search(tuple(edges), 0)
    return best


def matching_number(graph: Graph, cap: Optional[int] = None) -> int:
    """
    最大マッチングのサイズ match(G) を厳密に計算

    Args:
        graph: 対象グラフ
        cap: 辺数の上限（省略時は CAPS["edge_enumeration"]）

    Returns:
        match(G)
    """
    _check_edge_cap(graph, cap)
    blocks = {}
    for edge in graph.edges:
        touched = set(edge)
        blocks[edge] = frozenset(f for f in graph.edges if touched.intersection(f))
    return _branch_and_bound(list(graph.edges), blocks)


def induced_matching_number(graph: Graph, cap: Optional[int] = None) -> int:
    """
    最大誘導マッチングのサイズ ind-match(G) を厳密に計算

    辺 uv を採用すると、N[u] ∪ N[v] に端点を持つ辺はすべて使えなくなる。

    Args:
        graph: 対象グラフ
        cap: 辺数の上限

    Returns:
        ind-match(G)
    """
    _check_edge_cap(graph, cap)
    blocks = {}
    for u, v in graph.edges:
        closed = graph.neighbors(u) | graph.neighbors(v) | {u, v}
        blocks[(u, v)] = frozenset(f for f in graph.edges if closed.intersection(f))
    return _branch_and_bound(list(graph.edges), blocks)


def minimal_vertex_covers(graph: Graph, cap: Optional[int] = None) -> List[VertexSet]:
    """
    極小頂点被覆の全体 𝒞(G) を列挙

    極大独立集合（補グラフの極大クリーク）の補集合として求める。
    結果はサイズ昇順、同サイズは辞書式順。

    Args:
        graph: 対象グラフ
        cap: 被覆の個数の上限

    Returns:
        極小頂点被覆のリスト
    """
    limit = CAPS["vertex_covers"] if cap is None else cap
    complement = nx.complement(graph.to_networkx())
    everything = set(graph.vertices)
    covers = []
    for independent in nx.find_cliques(complement):
        covers.append(tuple(sorted(everything.difference(independent))))
        if len(covers) > limit:
            raise SizeCapExceeded("vertex_covers", limit, len(covers))
    return sorted(covers, key=lambda cover: (len(cover), cover))


def is_vertex_cover(graph: Graph, vertices: Iterable[int]) -> bool:
    chosen = set(vertices)
    return all(u in chosen or v in chosen for u, v in graph.edges)


def structural_predicates(graph: Graph) -> Dict[str, Any]:
    """
    二部性・弦性・連結性などの構造的な判定

    Args:
        graph: 対象グラフ

    Returns:
        is_bipartite, is_chordal, is_connected, components, degrees の辞書
    """
    nx_graph = graph.to_networkx()
    components = sorted(tuple(sorted(part)) for part in nx.connected_components(nx_graph))
    return {
        "is_bipartite": nx.is_bipartite(nx_graph),
        "is_chordal": nx.is_chordal(nx_graph),
        "is_connected": len(components) == 1,
        "components": components,
        "degrees": graph.degrees,
    }


def is_connected(graph: Graph) -> bool:
    return nx.is_connected(graph.to_networkx())


def delete_vertices(graph: Graph, removed: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """
    G − U を計算

    ラベル空間は保ったまま U の頂点を孤立させたグラフと、
    残った頂点を 1..n−|U| に詰める対応表を返す。

    Args:
        graph: 対象グラフ
        removed: 削除する頂点集合 U

    Returns:
        (G − U, 旧ラベル → 新ラベル)
    """
    removed = set(removed)
    outside = removed.difference(graph.vertices)
    if outside:
        raise InvalidVertex(f"vertices {sorted(outside)} not in 1..{graph.n}")
    kept_edges = tuple(e for e in graph.edges if not removed.intersection(e))
    survivors = [v for v in graph.vertices if v not in removed]
    mapping = {old: new for new, old in enumerate(survivors, start=1)}
    return Graph(graph.n, kept_edges), mapping


def compact(graph: Graph, mapping: Dict[int, int]) -> Graph:
    """delete_vertices の対応表でラベルを詰める（対応表にない頂点は孤立でなければならない）"""
    for vertex in graph.vertices:
        if vertex not in mapping and graph.degree(vertex) > 0:
            raise InvalidVertex(f"vertex {vertex} still has edges")
    size = max(len(mapping), 1)
    return Graph.from_edges(size, ((mapping[u], mapping[v]) for u, v in graph.edges))


def relabel(graph: Graph, mapping: Dict[int, int]) -> Graph:
    """頂点の置換 mapping（1..n 上の全単射）でラベルを付け替える"""
    if sorted(mapping) != list(graph.vertices) or sorted(mapping.values()) != list(graph.vertices):
        raise InvalidVertex("relabeling must be a permutation of the vertex set")
    return Graph.from_edges(graph.n, ((mapping[u], mapping[v]) for u, v in graph.edges))


def disjoint_union(first: Graph, second: Graph) -> Graph:
    """second の頂点を first.n だけずらした非交和"""
    offset = first.n
    edges = list(first.edges) + [(u + offset, v + offset) for u, v in second.edges]
    return Graph.from_edges(first.n + second.n, edges)


def triangles(graph: Graph) -> List[VertexSet]:
    found = []
    for u, v in graph.edges:
        for w in sorted(graph.neighbors(u) & graph.neighbors(v)):
            if w > v:
                found.append((u, v, w))
    return found


def pendant_features(graph: Graph) -> Dict[str, Any]:
    """
    ペンダント辺とペンダント三角形を検出

    ペンダント三角形は次数2の頂点をちょうど2つ持つ三角形で、残りの頂点を apex とする。
    孤立した K3 成分（3頂点すべて次数2）は最小ラベルを apex として1つ報告する。

    Args:
        graph: 対象グラフ

    Returns:
        pendant_edges（辺のリスト）と pendant_triangles（PendantTriangle のリスト）
    """
    degrees = graph.degrees
    pendant_edges = [e for e in graph.edges if degrees[e[0]] == 1 or degrees[e[1]] == 1]

    pendant_triangles = []
    for triangle in triangles(graph):
        low_degree = [v for v in triangle if degrees[v] == 2]
        if len(low_degree) == 2:
            apex = next(v for v in triangle if degrees[v] != 2)
            pendant_triangles.append(PendantTriangle(apex, tuple(low_degree)))
        elif len(low_degree) == 3:
            pendant_triangles.append(PendantTriangle(triangle[0], triangle[1:]))

    return {
        "pendant_edges": pendant_edges,
        "pendant_triangles": pendant_triangles,
    }


def iter_connected_graphs(n_max: int, n_min: int = 2) -> Iterator[Graph]:
    """
    頂点数 n_min..n_max の連結なラベル付きグラフを辺部分集合で網羅的に列挙

    Args:
        n_max: 最大頂点数（CAPS["lower_bound_vertices"] まで）
        n_min: 最小頂点数

    Yields:
        Graph（頂点数、辺ビットマスクの順）
    """
    if n_max > CAPS["lower_bound_vertices"]:
        raise BoundsExceeded(f"n_max={n_max} exceeds {CAPS['lower_bound_vertices']}")
    for n in range(max(n_min, 1), n_max + 1):
        slots = list(combinations(range(1, n + 1), 2))
        for mask in range(1 << len(slots)):
            edges = tuple(slots[i] for i in range(len(slots)) if mask >> i & 1)
            graph = Graph(n, edges)
            if is_connected(graph):
                yield graph


def atlas_connected_graphs(n_max: int, n_min: int = 2) -> Iterator[Graph]:
    """networkx のグラフアトラスから同型類ごとに1つずつ連結グラフを取り出す（n ≤ 7）"""
    if n_max > 7:
        raise BoundsExceeded("the graph atlas stops at 7 vertices")
    for atlas_graph in nx.graph_atlas_g():
        n = atlas_graph.number_of_nodes()
        if n < max(n_min, 1) or n > n_max or not nx.is_connected(atlas_graph):
            continue
        yield Graph.from_edges(n, ((u + 1, v + 1) for u, v in atlas_graph.edges()))
