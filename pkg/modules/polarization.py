"""
偏極化と Hochster の公式による Betti 数（正則性の独立な検算用）
"""
from typing import Dict, List, Optional, Tuple
from dataclasses import dataclass
import logging
import sys
import os

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config.defaults import CAPS
from modules.errors import GeneratorCapExceeded, InvalidIdeal
from modules.monomial_algebra import Monomial, MonomialIdeal, minimalize
from modules.resolution import (
    BettiTable,
    CoefficientField,
    Face,
    SimplicialComplex,
    _membership,
    lcm_closure,
    reduced_homology_dims,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Polarization:
    """偏極化の結果。variables[k] = (元の変数番号, 何番目の複製か)"""

    ideal: MonomialIdeal
    variables: Tuple[Tuple[int, int], ...]


def polarize(ideal: MonomialIdeal) -> Polarization:
    """
    x_i^a を x_{i,1} x_{i,2} … x_{i,a} に置き換えて平方自由化

    Args:
        ideal: 零でない単項式イデアル

    Returns:
        Polarization（新しい変数は (i, k) の辞書式順に並ぶ）
    """
    if ideal.is_zero:
        raise InvalidIdeal("cannot polarize the zero ideal")
    top = ideal.array.max(axis=0).tolist()
    variables = tuple((i + 1, k) for i, a in enumerate(top) for k in range(1, a + 1))
    if len(variables) > CAPS["polarization_variables"]:
        raise GeneratorCapExceeded("polarization_variables", CAPS["polarization_variables"], len(variables))
    if not variables:
        return Polarization(MonomialIdeal(0, ((),)), ())

    position = {var: p for p, var in enumerate(variables)}
    gens = []
    for gen in ideal.gens:
        exponents = [0] * len(variables)
        for i, a in enumerate(gen):
            for k in range(1, a + 1):
                exponents[position[(i + 1, k)]] = 1
        gens.append(exponents)
    return Polarization(minimalize(gens, len(variables)), variables)


def stanley_reisner_restriction(ideal: MonomialIdeal, subset: Face) -> SimplicialComplex:
    """
    平方自由イデアル J の Stanley-Reisner 複体を W に制限した Δ_W

    面は x_σ ∉ J となる σ ⊆ W。

    Args:
        ideal: 平方自由単項式イデアル J
        subset: W（1始まりの変数番号）

    Returns:
        Δ_W
    """
    if not ideal.is_squarefree:
        raise InvalidIdeal("Stanley-Reisner complex needs a squarefree ideal")
    indicator = np.zeros((1, ideal.n), dtype=np.int64)
    if _membership(ideal, indicator)[0]:
        return SimplicialComplex(subset, ())

    accepted: List[Face] = [()]
    level: List[Face] = [()]
    while level:
        known = set(level)
        candidates = []
        for face in level:
            last = face[-1] if face else 0
            for vertex in subset:
                if vertex <= last:
                    continue
                grown = face + (vertex,)
                if all(grown[:k] + grown[k + 1:] in known for k in range(len(grown) - 1)):
                    candidates.append(grown)
        if not candidates:
            break
        rows = np.zeros((len(candidates), ideal.n), dtype=np.int64)
        for row, face in enumerate(candidates):
            rows[row, [v - 1 for v in face]] = 1
        level = [face for face, inside in zip(candidates, _membership(ideal, rows)) if not inside]
        accepted.extend(level)
    return SimplicialComplex.from_faces(subset, accepted)


def hochster_betti_table(ideal: MonomialIdeal, field_: Optional[CoefficientField] = None) -> BettiTable:
    """
    Hochster の公式 β_{i,W}(J) = dim H̃_{|W|-i-2}(Δ_W) による Betti 表

    W は生成元の台の和集合で閉じた族を動く。

    Args:
        ideal: 平方自由で零でも単位でもないイデアル
        field_: 係数体

    Returns:
        BettiTable（多重次数は W の指示ベクトル）
    """
    field_ = field_ or CoefficientField(0)
    if ideal.is_zero or ideal.is_unit:
        raise InvalidIdeal("Betti table needs a proper nonzero ideal")
    multigraded: Dict[Tuple[int, Monomial], int] = {}
    for indicator in lcm_closure(ideal):
        subset = tuple(i + 1 for i, e in enumerate(indicator) if e)
        dims = reduced_homology_dims(stanley_reisner_restriction(ideal, subset), field_)
        for k, dim in dims.items():
            i = len(subset) - k - 2
            if dim and i >= 0:
                multigraded[(i, indicator)] = dim
    ordered = dict(sorted(multigraded.items(), key=lambda item: (item[0][0], sum(item[0][1]), item[0][1])))
    return BettiTable(ordered, field_.characteristic, ideal.n)


def regularity_via_polarization(ideal: MonomialIdeal, field_: Optional[CoefficientField] = None) -> int:
    """偏極化 + Hochster の公式で reg(I) を計算（upper Koszul 法とは独立）"""
    if ideal.is_zero:
        raise InvalidIdeal("regularity of the zero ideal is not defined")
    if ideal.is_unit:
        return 0
    polarized = polarize(ideal).ideal
    return hochster_betti_table(polarized, field_).regularity()


def random_monomial_ideal(
    rng: np.random.Generator,
    n_vars: int = 6,
    max_gens: int = 10,
    max_exponent: int = 3,
) -> MonomialIdeal:
    """
    検算用のランダムな単項式イデアル（単位イデアルにならないよう零ベクトルは引き直す）

    Args:
        rng: numpy の乱数生成器
        n_vars: 変数の個数
        max_gens: 生成元の個数の上限
        max_exponent: 指数の上限

    Returns:
        MonomialIdeal
    """
    count = int(rng.integers(1, max_gens + 1))
    gens = []
    while len(gens) < count:
        exponents = rng.integers(0, max_exponent + 1, size=n_vars)
        if exponents.any():
            gens.append(exponents.tolist())
    return minimalize(gens, n_vars)
