import numpy as np
import pytest

from config.defaults import CAPS
from modules.errors import GeneratorCapExceeded, InvalidIdeal
from modules.monomial_algebra import MonomialIdeal, edge_ideal, symbolic_power, zero_ideal
from modules.polarization import (
    hochster_betti_table,
    polarize,
    random_monomial_ideal,
    regularity_via_polarization,
    stanley_reisner_restriction,
)
from modules.resolution import CoefficientField, betti_table, reduced_homology_dims, regularity


def test_polarize_replaces_powers_by_new_variables():
    polarization = polarize(MonomialIdeal(2, ((2, 0), (1, 1))))
    assert polarization.variables == ((1, 1), (1, 2), (2, 1))
    assert polarization.ideal.gens == ((1, 1, 0), (1, 0, 1))
    assert polarization.ideal.is_squarefree


def test_polarize_keeps_squarefree_ideals(k3):
    assert polarize(edge_ideal(k3)).ideal == edge_ideal(k3)
    with pytest.raises(InvalidIdeal):
        polarize(zero_ideal(2))


def test_polarization_variable_cap():
    CAPS["polarization_variables"] = 2
    with pytest.raises(GeneratorCapExceeded):
        polarize(MonomialIdeal(1, ((3,),)))


def test_stanley_reisner_restriction():
    two_points = stanley_reisner_restriction(MonomialIdeal(2, ((1, 1),)), (1, 2))
    assert two_points.facets == ((1,), (2,))
    assert reduced_homology_dims(two_points, CoefficientField(0))[0] == 1
    with pytest.raises(InvalidIdeal):
        stanley_reisner_restriction(MonomialIdeal(1, ((2,),)), (1,))


def test_hochster_matches_upper_koszul_on_squarefree_ideals(c5):
    ideal = edge_ideal(c5)
    assert hochster_betti_table(ideal).multigraded == betti_table(ideal).multigraded


@pytest.mark.parametrize("name, s, expected", [("k3", 2, 4), ("c5", 1, 3), ("g5", 2, 5)])
def test_regularity_via_polarization(request, name, s, expected):
    ideal = symbolic_power(request.getfixturevalue(name), s)
    assert regularity_via_polarization(ideal) == expected == regularity(ideal)


def test_random_ideals_are_reproducible():
    first = random_monomial_ideal(np.random.default_rng(7))
    second = random_monomial_ideal(np.random.default_rng(7))
    assert first == second
    assert not first.is_zero and not first.is_unit
    assert max(max(gen) for gen in first.gens) <= 3


def test_random_ideals_agree_with_polarization():
    rng = np.random.default_rng(11)
    for _ in range(5):
        ideal = random_monomial_ideal(rng, n_vars=4, max_gens=5, max_exponent=2)
        for char in (0, 2):
            field_ = CoefficientField(char)
            assert regularity(ideal, field_) == regularity_via_polarization(ideal, field_)
