"""
単項式イデアルの厳密な演算

単項式は長さ n の指数タプル、イデアルは極小生成系（次数付き辞書式順）で表す。
"""
from typing import Iterable, List, Optional, Sequence, Tuple
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement
import logging
import sys
import os

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config.defaults import CAPS
from modules.errors import GeneratorCapExceeded, InvalidIdeal, InvalidVertex
from modules.graph_core import Graph, is_vertex_cover, minimal_vertex_covers

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


def grlex_key(monomial: Monomial) -> Tuple[int, Tuple[int, ...]]:
    """全次数の昇順、同次数では x1 > x2 > … の辞書式で大きい方が先"""
    return sum(monomial), tuple(-e for e in monomial)


@dataclass(frozen=True)
class MonomialIdeal:
    """極小生成系で表した単項式イデアル。単位イデアルは gens = (0,…,0)、零イデアルは gens = ()"""

    n: int
    gens: Tuple[Monomial, ...]

    @classmethod
    def from_generators(cls, n: int, gens: Iterable[Sequence[int]]) -> "MonomialIdeal":
        return minimalize(gens, n)

    @cached_property
    def array(self) -> np.ndarray:
        """生成系の指数行列（行 = 生成元）"""
        if not self.gens:
            return np.zeros((0, self.n), dtype=np.int64)
        return np.array(self.gens, dtype=np.int64).reshape(len(self.gens), self.n)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return len(self.gens) == 1 and not any(self.gens[0])

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for gen in self.gens for e in gen)

    def degrees(self) -> List[int]:
        return [sum(gen) for gen in self.gens]

    def support(self) -> Tuple[int, ...]:
        """生成元に現れる変数（1始まり）"""
        if self.is_zero:
            return ()
        used = np.flatnonzero(self.array.max(axis=0))
        return tuple(int(i) + 1 for i in used)

    def __contains__(self, monomial: Sequence[int]) -> bool:
        if self.is_zero:
            return False
        row = np.asarray(monomial, dtype=np.int64)
        return bool(np.any(np.all(self.array <= row, axis=1)))

    def __len__(self) -> int:
        return len(self.gens)


def _as_monomial(exponents: Sequence[int], n: int) -> Monomial:
    monomial = tuple(int(e) for e in exponents)
    if len(monomial) != n:
        raise InvalidIdeal(f"monomial {monomial} has length {len(monomial)}, expected {n}")
    if any(e < 0 for e in monomial):
        raise InvalidIdeal(f"negative exponent in {monomial}")
    if any(e > CAPS["max_exponent"] for e in monomial):
        raise GeneratorCapExceeded("max_exponent", CAPS["max_exponent"], max(monomial))
    return monomial


def _check_ring(first: MonomialIdeal, second: MonomialIdeal) -> None:
    if first.n != second.n:
        raise InvalidIdeal(f"ambient rings differ: {first.n} vs {second.n} variables")


def _check_candidates(count: int) -> None:
    if count > CAPS["candidates"]:
        raise GeneratorCapExceeded("candidates", CAPS["candidates"], count)


def unit_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, ((0,) * n,))


def zero_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, ())


def variable(index: int, n: int) -> Monomial:
    """変数 x_index の指数ベクトル"""
    if not 1 <= index <= n:
        raise InvalidVertex(f"variable x{index} outside x1..x{n}")
    exponents = [0] * n
    exponents[index - 1] = 1
    return tuple(exponents)


def monomial_from_vertices(vertices: Iterable[int], n: int) -> Monomial:
    """頂点集合 U に対する x_U = ∏_{i∈U} x_i"""
    exponents = [0] * n
    for index in vertices:
        if not 1 <= index <= n:
            raise InvalidVertex(f"variable x{index} outside x1..x{n}")
        exponents[index - 1] += 1
    return tuple(exponents)


def minimalize(gens: Iterable[Sequence[int]], n: int) -> MonomialIdeal:
    """
    重複と他の生成元で割り切れる単項式を除いて極小生成系にする

    次数の低い順に走査するので、割り切る側は必ず先に保持されている。

    Args:
        gens: 単項式（指数ベクトル）の列
        n: 変数の個数

    Returns:
        MonomialIdeal
    """
    unique = sorted({_as_monomial(g, n) for g in gens}, key=grlex_key)
    _check_candidates(len(unique))
    if not unique:
        return zero_ideal(n)
    if not any(unique[0]):
        return unit_ideal(n)

    buffer = np.empty((len(unique), n), dtype=np.int64)
    count = 0
    kept: List[Monomial] = []
    for monomial in unique:
        row = np.asarray(monomial, dtype=np.int64)
        if count and np.any(np.all(buffer[:count] <= row, axis=1)):
            continue
        buffer[count] = row
        count += 1
        kept.append(monomial)

    if len(kept) > CAPS["generators"]:
        raise GeneratorCapExceeded("generators", CAPS["generators"], len(kept))
    return MonomialIdeal(n, tuple(kept))


def _rows(array: np.ndarray) -> List[Monomial]:
    return [tuple(row) for row in array.tolist()]


def edge_ideal(graph: Graph) -> MonomialIdeal:
    """I(G) = (x_i x_j : ij ∈ E(G))。辺のない場合は零イデアル"""
    gens = [monomial_from_vertices(edge, graph.n) for edge in graph.edges]
    return MonomialIdeal(graph.n, tuple(sorted(gens, key=grlex_key)))


def intersect(first: MonomialIdeal, second: MonomialIdeal) -> MonomialIdeal:
    """
    I ∩ J = (lcm(u, v) : u ∈ G(I), v ∈ G(J))

    Args:
        first: I
        second: J（同じ変数の個数）

    Returns:
        I ∩ J
    """
    _check_ring(first, second)
    if first.is_zero or second.is_zero:
        return zero_ideal(first.n)
    _check_candidates(len(first) * len(second))
    lcms = np.maximum(first.array[:, None, :], second.array[None, :, :]).reshape(-1, first.n)
    return minimalize(_rows(lcms), first.n)


def _degree_monomials(variables: Sequence[int], degree: int, n: int) -> List[Monomial]:
    """variables の変数だけを使う次数 degree の単項式すべて"""
    return [monomial_from_vertices(combo, n) for combo in combinations_with_replacement(sorted(variables), degree)]


def prime_power(cover: Iterable[int], s: int, n: int) -> MonomialIdeal:
    """
    𝔭_C^s の極小生成系（C の変数による次数 s の単項式全体）

    Args:
        cover: 頂点集合 C（空でない）
        s: 冪（1以上）
        n: 変数の個数

    Returns:
        𝔭_C^s
    """
    variables = sorted(set(cover))
    if not variables:
        raise InvalidIdeal("prime ideal needs at least one variable")
    if s < 1:
        raise InvalidIdeal(f"prime power exponent must be positive, got {s}")
    return minimalize(_degree_monomials(variables, s, n), n)


def intersect_prime_power(ideal: MonomialIdeal, cover: Iterable[int], s: int) -> MonomialIdeal:
    """
    I ∩ 𝔭_C^s を u · 𝔭_C^{s − deg_C(u)} (u ∈ G(I)) の和として計算

    lcm をすべて取る方法と同じイデアルになるが、候補がはるかに少ない。
    """
    variables = sorted(set(cover))
    if ideal.is_zero:
        return ideal
    if s <= 0:
        return ideal
    n = ideal.n
    positions = [v - 1 for v in variables]
    candidates: List[Monomial] = []
    for gen in ideal.gens:
        missing = s - sum(gen[p] for p in positions)
        if missing <= 0:
            candidates.append(gen)
            continue
        for extra in _degree_monomials(variables, missing, n):
            candidates.append(tuple(a + b for a, b in zip(gen, extra)))
        _check_candidates(len(candidates))
    return minimalize(candidates, n)


def colon_by_monomial(ideal: MonomialIdeal, monomial: Sequence[int]) -> MonomialIdeal:
    """
    (I : m) = (u / gcd(u, m) : u ∈ G(I))

    Args:
        ideal: I
        monomial: m の指数ベクトル

    Returns:
        (I : m)
    """
    divisor = np.asarray(_as_monomial(monomial, ideal.n), dtype=np.int64)
    if ideal.is_zero:
        return ideal
    quotients = np.maximum(ideal.array - divisor, 0)
    return minimalize(_rows(quotients), ideal.n)


def multiply_ideals(first: MonomialIdeal, second: MonomialIdeal) -> MonomialIdeal:
    _check_ring(first, second)
    if first.is_zero or second.is_zero:
        return zero_ideal(first.n)
    _check_candidates(len(first) * len(second))
    products = (first.array[:, None, :] + second.array[None, :, :]).reshape(-1, first.n)
    return minimalize(_rows(products), first.n)


def power(ideal: MonomialIdeal, s: int) -> MonomialIdeal:
    """
    通常冪 I^s

    Args:
        ideal: I
        s: 0以上

    Returns:
        I^s（I^0 は単位イデアル）
    """
    if s < 0:
        raise InvalidIdeal(f"ordinary power needs s >= 0, got {s}")
    result = unit_ideal(ideal.n)
    for _ in range(s):
        result = multiply_ideals(result, ideal)
    return result


def ideal_sum(first: MonomialIdeal, second: MonomialIdeal) -> MonomialIdeal:
    _check_ring(first, second)
    return minimalize(first.gens + second.gens, first.n)


def add_variables(ideal: MonomialIdeal, indices: Iterable[int]) -> MonomialIdeal:
    """(I, x_i, …) を計算"""
    extra = minimalize([variable(i, ideal.n) for i in indices], ideal.n)
    return ideal_sum(ideal, extra)


def symbolic_power(graph: Graph, s: int, covers: Optional[List[Tuple[int, ...]]] = None) -> MonomialIdeal:
    """
    記号的冪 I(G)^(s) = ⋂_{C ∈ 𝒞(G)} 𝔭_C^s

    極小頂点被覆をサイズ昇順に1つずつ交わし、毎回極小化する。
    s ≤ 0 のときは単位イデアル。

    Args:
        graph: 辺を1本以上持つグラフ
        s: 冪
        covers: 計算済みの極小頂点被覆（省略時は列挙する）

    Returns:
        I(G)^(s)
    """
    if graph.m == 0:
        raise InvalidIdeal("symbolic power of the zero ideal is not defined here")
    if s <= 0:
        return unit_ideal(graph.n)
    if covers is None:
        covers = minimal_vertex_covers(graph)
    elif not covers or not all(is_vertex_cover(graph, cover) for cover in covers):
        raise InvalidIdeal("supplied covers are not vertex covers of the graph")
    result = prime_power(covers[0], s, graph.n)
    for cover in covers[1:]:
        result = intersect_prime_power(result, cover, s)
    logger.debug("I^(%d) of %s: %d generators", s, graph.edges, len(result))
    return result


def equals(first: MonomialIdeal, second: MonomialIdeal) -> bool:
    _check_ring(first, second)
    return first.gens == second.gens


def contains_ideal(outer: MonomialIdeal, inner: MonomialIdeal) -> bool:
    """inner ⊆ outer かどうか"""
    _check_ring(outer, inner)
    return all(gen in outer for gen in inner.gens)
