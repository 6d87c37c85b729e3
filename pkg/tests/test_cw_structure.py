import pytest

from config.defaults import CAPS, get_sweep_preset
from modules.cw_structure import (
    SKELETON,
    STAR,
    STAR_TRIANGLE,
    CWParams,
    FamilyBounds,
    decompose,
    default_skeleton_pool,
    enumerate_family,
    generate,
    is_cameron_walker,
    is_canonical,
    iter_family,
)
from modules.errors import BoundsExceeded, NotCameronWalker, NotConnected
from modules.graph_core import (
    Graph,
    atlas_connected_graphs,
    delete_vertices,
    induced_matching_number,
    is_connected,
    iter_connected_graphs,
    pendant_features,
    structural_predicates,
)


def _bounds(preset):
    values = get_sweep_preset(preset)
    return FamilyBounds(
        max_vertices=values["max_vertices"],
        max_pendants=values["max_pendants"],
        max_triangles=values["max_triangles"],
        max_star=values["max_star"],
        max_star_triangles=values["max_star_triangles"],
    )


def test_cameron_walker_predicate(k2, k3, p3, p4, c4, c5, k13, g5):
    for graph in (k2, k3, p3, k13, g5):
        assert is_cameron_walker(graph)
    for graph in (p4, c4, c5):
        assert not is_cameron_walker(graph)


def test_decompose_stars(k2, p3, k13, k3):
    assert decompose(k2).kind == STAR
    star = decompose(k13)
    assert (star.kind, star.center, star.size) == (STAR, 1, 3)
    assert decompose(p3).center == 2
    triangle = decompose(k3)
    assert (triangle.kind, triangle.size) == (STAR_TRIANGLE, 1)


def test_decompose_star_triangle():
    bowtie = Graph.from_edges(5, [(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5)])
    decomposition = decompose(bowtie)
    assert (decomposition.kind, decomposition.center, decomposition.size) == (STAR_TRIANGLE, 1, 2)
    assert generate(decomposition.to_params()) == bowtie


def test_decompose_skeleton(g5):
    decomposition = decompose(g5)
    assert decomposition.kind == SKELETON
    assert decomposition.x_part == (1,)
    assert decomposition.y_part == (2,)
    assert decomposition.pendant_edge_counts == {1: 1}
    assert decomposition.pendant_triangle_counts == {2: 1}
    assert decomposition.skeleton.edges == ((1, 2),)

    params = decomposition.to_params()
    assert params == CWParams(
        SKELETON,
        skeleton=Graph(2, ((1, 2),)),
        x_part=(1,),
        y_part=(2,),
        pendants=(1,),
        triangles=(1,),
    )
    assert generate(params) == g5


def test_decompose_rejects(p4, c5):
    with pytest.raises(NotCameronWalker):
        decompose(p4)
    with pytest.raises(NotCameronWalker):
        decompose(c5)
    with pytest.raises(NotConnected):
        decompose(Graph.from_edges(4, [(1, 2), (3, 4)]))
    with pytest.raises(NotConnected):
        decompose(Graph.from_edges(3, [(1, 2)]))


def test_generate_labels_skeleton_first():
    params = CWParams(
        SKELETON,
        skeleton=Graph.from_edges(3, [(1, 2), (2, 3)]),
        x_part=(1, 3),
        y_part=(2,),
        pendants=(1, 2),
        triangles=(1,),
    )
    graph = generate(params)
    assert graph.n == params.vertex_total() == 8
    assert graph.edges == ((1, 2), (1, 4), (2, 3), (2, 7), (2, 8), (3, 5), (3, 6), (7, 8))
    assert is_cameron_walker(graph)
    assert is_canonical(params)


def test_generate_validation():
    with pytest.raises(BoundsExceeded):
        generate(CWParams(STAR, m=0))
    with pytest.raises(BoundsExceeded):
        generate(CWParams(STAR, m=CAPS["generate_vertices"]))
    with pytest.raises(BoundsExceeded):
        generate(CWParams(SKELETON, skeleton=Graph(2, ((1, 2),)), x_part=(1,), y_part=(2,), pendants=(0,), triangles=(0,)))
    with pytest.raises(BoundsExceeded):
        generate(CWParams(SKELETON, skeleton=Graph(2, ((1, 2),)), x_part=(1, 2), y_part=(), pendants=(1, 1), triangles=()))
    with pytest.raises(BoundsExceeded):
        generate(CWParams("wheel"))


def test_params_dict_form(g5):
    params = decompose(g5).to_params()
    data = params.to_dict()
    assert data["pendants"] == {"1": 1}
    assert data["triangles"] == {"2": 1}
    assert CWParams.from_dict(data) == params
    assert CWParams.from_dict({"kind": "star", "m": 3}) == CWParams(STAR, m=3)
    with pytest.raises(ValueError):
        CWParams.from_dict({"kind": "wheel"})


def test_tiny_family_members_are_cameron_walker():
    members = list(iter_family(_bounds("tiny")))
    graphs = [graph for _, graph in members]
    assert graphs
    assert len(set(graphs)) == len(graphs)
    for params, graph in members:
        assert graph.n <= 5
        assert is_connected(graph)
        assert is_cameron_walker(graph)
        assert structural_predicates(graph)["is_chordal"]
    assert graphs == enumerate_family(_bounds("tiny"))


def test_canonical_members_decompose_back():
    for params, graph in iter_family(_bounds("quick")):
        if params.kind == SKELETON and is_canonical(params):
            assert generate(decompose(graph).to_params()) == graph


def test_quick_family_reaches_cycles():
    graphs = enumerate_family(_bounds("quick"))
    assert any(not structural_predicates(graph)["is_chordal"] for graph in graphs)


def test_family_bounds_edge_cases():
    assert list(iter_family(FamilyBounds(max_vertices=0))) == []
    stars_only = FamilyBounds(max_vertices=3, max_star=2, max_star_triangles=1, skeleton_pool=())
    kinds = [params.kind for params, _ in iter_family(stars_only)]
    assert kinds == [STAR, STAR, STAR_TRIANGLE]


def test_default_skeleton_pool_is_bipartite():
    pool = default_skeleton_pool(4)
    assert len(pool) == len(set(pool))
    assert all(structural_predicates(graph)["is_bipartite"] for graph in pool)
    assert Graph.from_edges(4, [(1, 3), (1, 4), (2, 3), (2, 4)]) in pool


def _decomposes(graph):
    try:
        decompose(graph)
    except NotCameronWalker:
        return False
    return True


def test_decompose_agrees_with_predicate_on_small_graphs():
    for graph in atlas_connected_graphs(6):
        assert _decomposes(graph) == is_cameron_walker(graph), graph.edges
    for graph in iter_connected_graphs(5):
        assert _decomposes(graph) == is_cameron_walker(graph), graph.edges


def test_acceptance_family_roundtrip():
    members = list(iter_family(_bounds("acceptance")))
    assert len(members) >= 200
    for params, graph in members:
        assert graph.n <= 11
        if is_canonical(params):
            assert generate(decompose(graph).to_params()) == graph, params.to_dict()


def test_removing_triangle_base_lowers_induced_matching():
    checked = 0
    for params, graph in iter_family(_bounds("quick")):
        triangles = pendant_features(graph)["pendant_triangles"]
        if params.kind != SKELETON or not triangles:
            continue
        before = induced_matching_number(graph)
        for triangle in triangles:
            remaining, _ = delete_vertices(graph, triangle.base)
            assert induced_matching_number(remaining) == before - 1, (graph.edges, triangle)
            checked += 1
    assert checked > 0


def test_star_triangle_keeps_induced_matching_after_base_removal():
    bowtie = generate(CWParams(STAR_TRIANGLE, t=2))
    remaining, _ = delete_vertices(bowtie, (4, 5))
    assert induced_matching_number(bowtie) == induced_matching_number(remaining) == 1
    k3 = generate(CWParams(STAR_TRIANGLE, t=1))
    assert induced_matching_number(delete_vertices(k3, (2, 3))[0]) == 0
