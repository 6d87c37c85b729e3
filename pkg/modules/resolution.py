"""
多重次数付き Betti 数と Castelnuovo-Mumford 正則性

β_{i,b}(I) = dim H̃_{i-1}(K^b(I)) を上部 Koszul 複体の被約ホモロジーから厳密に計算する。
"""
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from itertools import product
import logging
import sys
import os

import numpy as np
import pandas as pd
from sympy import GF, ZZ, isprime
from sympy.polys.matrices import DomainMatrix

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config.defaults import CAPS
from modules.errors import GeneratorCapExceeded, InvalidIdeal
from modules.monomial_algebra import Monomial, MonomialIdeal

logger = logging.getLogger(__name__)

Face = Tuple[int, ...]
Entries = Dict[int, Dict[int, int]]

# 候補ベクトルと生成元の比較を一度に行う件数
MEMBERSHIP_CHUNK = 4096

# lcm 閉包の1ステップで一度に作る lcm の件数
LCM_CHUNK = 1 << 20

# 標数0のふるいに使う素数。ここでホモロジーが消えれば有理数上でも消える
SCREENING_PRIME = 2147483647


@dataclass(frozen=True)
class CoefficientField:
    """係数体。characteristic は 0（有理数）または素数 p"""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not isprime(self.characteristic):
            raise ValueError(f"field characteristic must be 0 or a prime, got {self.characteristic}")

    def rank(self, entries: Entries, shape: Tuple[int, int]) -> int:
        """
        疎行列の厳密な階数

        標数0は整数上の分数なし消去、標数 p は GF(p) 上の消去。

        Args:
            entries: {行: {列: 値}}
            shape: (行数, 列数)

        Returns:
            階数
        """
        rows, cols = shape
        if rows == 0 or cols == 0 or not entries:
            return 0
        matrix = DomainMatrix(
            {i: {j: ZZ(v) for j, v in row.items()} for i, row in entries.items()},
            shape,
            ZZ,
        )
        if self.characteristic == 0:
            _, _, pivots = matrix.rref_den(method="FF")
            return len(pivots)
        return matrix.convert_to(GF(self.characteristic)).rank()

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


def modular_rank(entries: Entries, shape: Tuple[int, int], prime: int) -> int:
    """
    GF(prime) 上の階数（numpy の密行列で行基本変形）

    有理数上の階数以下になる。prime < 2^31 なら int64 であふれない。

    Args:
        entries: {行: {列: 値}}
        shape: (行数, 列数)
        prime: 素数

    Returns:
        階数
    """
    rows, cols = shape
    if rows == 0 or cols == 0 or not entries:
        return 0
    work = np.zeros(shape, dtype=np.int64)
    for i, row in entries.items():
        for j, value in row.items():
            work[i, j] = value % prime
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nonzero = np.flatnonzero(work[rank:, col])
        if not len(nonzero):
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        work[rank] = work[rank] * pow(int(work[rank, col]), prime - 2, prime) % prime
        below = rank + 1 + np.flatnonzero(work[rank + 1:, col])
        if len(below):
            work[below] = (work[below] - np.outer(work[below, col], work[rank])) % prime
        rank += 1
    return rank


@dataclass(frozen=True)
class SimplicialComplex:
    """
    極大面で表した単体的複体

    facets = () は空複体（面を持たない）、facets = ((),) は {∅} のみの複体。
    """

    ground: Tuple[int, ...]
    facets: Tuple[Face, ...]

    @classmethod
    def from_faces(cls, ground: Iterable[int], faces: Iterable[Face]) -> "SimplicialComplex":
        """面の集合（下に閉じていること）から極大面を取り出して構築"""
        face_set = {tuple(sorted(f)) for f in faces}
        covered: Set[Face] = set()
        for face in face_set:
            for k in range(len(face)):
                covered.add(face[:k] + face[k + 1:])
        facets = sorted(face_set - covered, key=lambda f: (len(f), f))
        return cls(tuple(sorted(ground)), tuple(facets))

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dimension(self) -> int:
        """次元（空複体は -2 とする）"""
        if self.is_void:
            return -2
        return max(len(f) for f in self.facets) - 1

    @cached_property
    def faces(self) -> Dict[int, List[Face]]:
        """次元ごとの面（辞書式順）"""
        found: Set[Face] = set()
        for facet in self.facets:
            for mask in range(1 << len(facet)):
                found.add(tuple(v for i, v in enumerate(facet) if mask >> i & 1))
        return _by_dimension(found)

    def f_vector(self) -> Dict[int, int]:
        return {d: len(faces) for d, faces in self.faces.items()}

    def cone_apex(self) -> Optional[int]:
        """すべての極大面に含まれる頂点（あれば錐なので可縮）"""
        if self.is_void:
            return None
        common = set(self.facets[0]).intersection(*self.facets[1:])
        return min(common) if common else None


def _by_dimension(faces: Iterable[Face]) -> Dict[int, List[Face]]:
    grouped: Dict[int, List[Face]] = {}
    for face in faces:
        grouped.setdefault(len(face) - 1, []).append(face)
    return {d: sorted(group) for d, group in sorted(grouped.items())}


def _boundary_entries(faces: List[Face], lower: List[Face], characteristic: int) -> Entries:
    """∂_k の成分（行 = 次元 k-1 の面、列 = 次元 k の面）"""
    index = {face: i for i, face in enumerate(lower)}
    entries: Entries = {}
    for col, face in enumerate(faces):
        for position in range(len(face)):
            row = index[face[:position] + face[position + 1:]]
            sign = 1 if position % 2 == 0 or characteristic == 2 else -1
            entries.setdefault(row, {})[col] = sign
    return entries


def _homology_from_faces(faces: Dict[int, List[Face]], field_: CoefficientField, top: int) -> Dict[int, int]:
    """
    dim H̃_k（k = -1 .. top）。faces は少なくとも次元 top+1 までそろっていること

    標数0ではまず GF(SCREENING_PRIME) で計算し、すべて0ならそれを返す。
    """
    def dims(rank_of: Callable[[Entries, Tuple[int, int]], int], characteristic: int) -> Dict[int, int]:
        ranks = {}
        for k in range(0, top + 2):
            if k not in faces or k - 1 not in faces:
                continue
            shape = (len(faces[k - 1]), len(faces[k]))
            ranks[k] = rank_of(_boundary_entries(faces[k], faces[k - 1], characteristic), shape)
        return {
            k: len(faces.get(k, ())) - ranks.get(k, 0) - ranks.get(k + 1, 0)
            for k in range(-1, top + 1)
        }

    if field_.characteristic == 0:
        screened = dims(lambda entries, shape: modular_rank(entries, shape, SCREENING_PRIME), 0)
        if not any(screened.values()):
            return screened
    return dims(field_.rank, field_.characteristic)


def reduced_homology_dims(complex_: SimplicialComplex, field_: CoefficientField) -> Dict[int, int]:
    """
    被約ホモロジーの次元 dim H̃_k（k = -1 .. dim）

    H̃_k = f_k − rank ∂_k − rank ∂_{k+1}。空複体はすべて0、{∅} は H̃_{-1} = 1。
    錐は行列を作らずにすべて0とする。

    Args:
        complex_: 単体的複体
        field_: 係数体

    Returns:
        {k: dim H̃_k}
    """
    if complex_.is_void:
        return {-1: 0}
    top = complex_.dimension
    if complex_.cone_apex() is not None:
        return {k: 0 for k in range(-1, top + 1)}
    return _homology_from_faces(complex_.faces, field_, top)


def _membership(ideal: MonomialIdeal, candidates: np.ndarray) -> np.ndarray:
    """各行の単項式が I に属するか（生成元との比較をまとめて行う）"""
    result = np.zeros(len(candidates), dtype=bool)
    if ideal.is_zero or len(candidates) == 0:
        return result
    gens = ideal.array
    for start in range(0, len(candidates), MEMBERSHIP_CHUNK):
        block = candidates[start:start + MEMBERSHIP_CHUNK]
        result[start:start + len(block)] = np.any(
            np.all(gens[None, :, :] <= block[:, None, :], axis=2), axis=1
        )
    return result


def _koszul_faces(ideal: MonomialIdeal, target: np.ndarray, max_size: Optional[int] = None) -> List[Face]:
    """
    K^b(I) の面をサイズ max_size まで列挙（空複体なら空リスト）

    下に閉じているので、面を1頂点ずつ延長して探索する。
    """
    if not _membership(ideal, target[None, :])[0]:
        return []
    support = tuple(int(i) + 1 for i in np.flatnonzero(target))
    accepted: List[Face] = [()]
    level: List[Face] = [()]
    while level and (max_size is None or len(level[0]) < max_size):
        known = set(level)
        candidates = []
        for face in level:
            last = face[-1] if face else 0
            for vertex in support:
                if vertex <= last:
                    continue
                grown = face + (vertex,)
                if all(grown[:k] + grown[k + 1:] in known for k in range(len(grown) - 1)):
                    candidates.append(grown)
        if not candidates:
            break
        shifted = np.repeat(target[None, :], len(candidates), axis=0)
        for row, face in enumerate(candidates):
            shifted[row, [v - 1 for v in face]] -= 1
        level = [face for face, ok in zip(candidates, _membership(ideal, shifted)) if ok]
        accepted.extend(level)
    return accepted


def _has_cone_point(faces: List[Face], support: Sequence[int], max_size: Optional[int]) -> bool:
    """
    サイズ max_size − 1 以下で j を含まない面 τ について常に τ ∪ {j} も面になる j があるか

    あれば次元 max_size − 2 以下の被約ホモロジーはすべて0。
    """
    face_set = set(faces)
    limit = len(support) + 1 if max_size is None else max_size - 1
    for vertex in support:
        if all(
            vertex in face or tuple(sorted(face + (vertex,))) in face_set
            for face in faces
            if len(face) <= limit
        ):
            return True
    return False


def upper_koszul(ideal: MonomialIdeal, b: Iterable[int]) -> SimplicialComplex:
    """
    上部 Koszul 複体 K^b(I) = {τ ⊆ supp(b) : x^{b−τ} ∈ I}

    Args:
        ideal: 単項式イデアル
        b: 多重次数（成分は0以上）

    Returns:
        SimplicialComplex（頂点は変数番号、1始まり）
    """
    target = np.asarray(tuple(b), dtype=np.int64)
    if np.any(target < 0):
        raise InvalidIdeal(f"multidegree {tuple(target)} has a negative entry")
    support = tuple(int(i) + 1 for i in np.flatnonzero(target))
    return SimplicialComplex.from_faces(support, _koszul_faces(ideal, target))


def koszul_homology(
    ideal: MonomialIdeal,
    b: Sequence[int],
    field_: CoefficientField,
    top: Optional[int] = None,
) -> Dict[int, int]:
    """
    K^b(I) の0でない被約ホモロジー {k: dim H̃_k}

    top を与えると k ≤ top の次数だけを求め、面も次元 top+1 までしか作らない。
    """
    target = np.asarray(tuple(b), dtype=np.int64)
    max_size = None if top is None else top + 2
    faces = _koszul_faces(ideal, target, max_size)
    if not faces:
        return {}
    support = tuple(int(i) + 1 for i in np.flatnonzero(target))
    if _has_cone_point(faces, support, max_size):
        return {}
    grouped = _by_dimension(faces)
    highest = max(grouped)
    limit = highest if top is None else min(top, highest)
    return {k: dim for k, dim in _homology_from_faces(grouped, field_, limit).items() if dim}


def lcm_closure(ideal: MonomialIdeal) -> List[Monomial]:
    """
    生成元の lcm で閉じた多重次数の集合（生成元の部分集合の lcm 全体）

    Args:
        ideal: 単項式イデアル

    Returns:
        多重次数のリスト（次数付き辞書式順）
    """
    limit = CAPS["lcm_closure"]
    gens = ideal.array
    closure: Set[Monomial] = set(ideal.gens)
    frontier = gens
    step = max(1, LCM_CHUNK // max(1, len(gens)))
    while len(frontier):
        fresh: Set[Monomial] = set()
        for start in range(0, len(frontier), step):
            block = frontier[start:start + step]
            lcms = np.maximum(block[:, None, :], gens[None, :, :]).reshape(-1, ideal.n)
            fresh.update(m for m in map(tuple, np.unique(lcms, axis=0).tolist()) if m not in closure)
            if len(closure) + len(fresh) > limit:
                raise GeneratorCapExceeded("lcm_closure", limit, len(closure) + len(fresh))
        closure.update(fresh)
        frontier = np.array(sorted(fresh), dtype=np.int64).reshape(len(fresh), ideal.n)
    return sorted(closure, key=lambda m: (sum(m), m))


def _box(ideal: MonomialIdeal) -> List[Monomial]:
    """0 ≤ b ≤ lcm(G(I)) を満たすすべての多重次数"""
    top = ideal.array.max(axis=0).tolist()
    count = int(np.prod([t + 1 for t in top]))
    if count > CAPS["lcm_closure"]:
        raise GeneratorCapExceeded("lcm_closure", CAPS["lcm_closure"], count)
    return [tuple(b) for b in product(*(range(t + 1) for t in top))]


def _split(items: List[Any], parts: int) -> List[List[Any]]:
    """次数の偏りが出ないよう交互に振り分ける"""
    return [chunk for chunk in (items[k::parts] for k in range(parts)) if chunk]


@dataclass
class BettiTable:
    """多重次数付き Betti 数 β_{i,b} と粗い次数付け β_{i,j}"""

    multigraded: Dict[Tuple[int, Monomial], int]
    field_char: int = 0
    n: int = 0

    @property
    def coarse(self) -> Dict[Tuple[int, int], int]:
        table: Dict[Tuple[int, int], int] = {}
        for (i, b), rank in self.multigraded.items():
            key = (i, sum(b))
            table[key] = table.get(key, 0) + rank
        return dict(sorted(table.items()))

    def regularity(self) -> int:
        """max{j − i : β_{i,j} ≠ 0}"""
        if not self.multigraded:
            return 0
        return max(j - i for (i, j), rank in self.coarse.items() if rank)

    def projective_dimension(self) -> int:
        if not self.multigraded:
            return 0
        return max(i for (i, _), rank in self.multigraded.items() if rank)

    def to_rows(self) -> List[Tuple[int, int, int]]:
        return [(i, j, rank) for (i, j), rank in self.coarse.items()]

    def to_frame(self) -> pd.DataFrame:
        """行 = j − i、列 = i の Betti 表"""
        coarse = self.coarse
        if not coarse:
            return pd.DataFrame()
        frame = pd.DataFrame(
            [{"i": i, "row": j - i, "rank": rank} for (i, j), rank in coarse.items()]
        )
        table = frame.pivot_table(index="row", columns="i", values="rank", aggfunc="sum", fill_value=0)
        return table.astype(int)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "field_char": self.field_char,
            "multigraded": [[i, list(b), rank] for (i, b), rank in self.multigraded.items()],
        }


def _betti_chunk(payload: Tuple[int, Tuple[Monomial, ...], List[Monomial], int]) -> Dict[Tuple[int, Monomial], int]:
    n, gens, candidates, characteristic = payload
    ideal = MonomialIdeal(n, gens)
    field_ = CoefficientField(characteristic)
    found: Dict[Tuple[int, Monomial], int] = {}
    for b in candidates:
        for k, dim in koszul_homology(ideal, b, field_).items():
            found[(k + 1, b)] = dim
    return found


def betti_table(
    ideal: MonomialIdeal,
    field_: Optional[CoefficientField] = None,
    method: str = "lcm",
    jobs: int = 1,
) -> BettiTable:
    """
    単項式イデアルの多重次数付き Betti 表

    Args:
        ideal: 零でも単位でもないイデアル
        field_: 係数体（省略時は標数0）
        method: "lcm"（lcm 閉包上で評価）または "box"（指数の箱全体で評価）
        jobs: 多重次数ごとの評価に使うプロセス数

    Returns:
        BettiTable
    """
    field_ = field_ or CoefficientField(0)
    if ideal.is_zero or ideal.is_unit:
        raise InvalidIdeal("Betti table needs a proper nonzero ideal")
    if method == "lcm":
        candidates = lcm_closure(ideal)
    elif method == "box":
        candidates = _box(ideal)
    else:
        raise ValueError(f"Unsupported method: {method}")

    payloads = [(ideal.n, ideal.gens, chunk, field_.characteristic) for chunk in _split(candidates, max(1, jobs))]
    multigraded: Dict[Tuple[int, Monomial], int] = {}
    if jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for found in pool.map(_betti_chunk, payloads):
                multigraded.update(found)
    else:
        for payload in payloads:
            multigraded.update(_betti_chunk(payload))
    logger.debug("Betti table over %s: %d candidates, %d nonzero entries", field_, len(candidates), len(multigraded))
    ordered = dict(sorted(multigraded.items(), key=lambda item: (item[0][0], sum(item[0][1]), item[0][1])))
    return BettiTable(ordered, field_.characteristic, ideal.n)


def _regularity_chunk(payload: Tuple[int, Tuple[Monomial, ...], List[Monomial], int, int]) -> int:
    """
    候補を次数の昇順に見て、現在の最大値を超えうる次数のホモロジーだけを調べる

    b からの寄与は |b| − k − 1 なので、k ≤ |b| − 2 − best だけが意味を持つ。
    """
    n, gens, candidates, characteristic, best = payload
    ideal = MonomialIdeal(n, gens)
    field_ = CoefficientField(characteristic)
    for b in candidates:
        degree = sum(b)
        top = degree - 2 - best
        if top < 0:
            continue
        homology = koszul_homology(ideal, b, field_, top)
        if homology:
            best = max(best, degree - min(homology) - 1)
    return best


def regularity(ideal: MonomialIdeal, field_: Optional[CoefficientField] = None, jobs: int = 1) -> int:
    """
    reg(I) = max{j − i : β_{i,j}(I) ≠ 0}

    単位イデアルは 0、単項イデアルは生成元の次数。Betti 表全体は作らず、
    生成元の最大次数から始めて値を更新しうる多重次数だけを評価する。

    Args:
        ideal: 零でないイデアル
        field_: 係数体
        jobs: 多重次数ごとの評価に使うプロセス数

    Returns:
        reg(I)
    """
    field_ = field_ or CoefficientField(0)
    if ideal.is_zero:
        raise InvalidIdeal("regularity of the zero ideal is not defined")
    if ideal.is_unit:
        return 0
    best = max(ideal.degrees())
    if len(ideal) == 1:
        return best
    candidates = [b for b in lcm_closure(ideal) if sum(b) >= best + 2]
    payloads = [(ideal.n, ideal.gens, chunk, field_.characteristic, best) for chunk in _split(candidates, max(1, jobs))]
    if jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_regularity_chunk, payloads))
    else:
        values = [_regularity_chunk(payload) for payload in payloads]
    logger.debug("regularity over %s: %d candidates above degree %d", field_, len(candidates), best + 1)
    return max([best] + values)
