import pytest

from config.defaults import CAPS, get_sweep_preset
from modules.cache import ResultCache
from modules.cw_structure import FamilyBounds
from modules.errors import BoundsExceeded, PreconditionFailed
from modules.graph_core import Graph
from modules.resolution import CoefficientField
from modules.verifier import (
    check_theorem_instance,
    oracle_ideals,
    proof_trace,
    proof_trace_applicable,
    theorem_graphs,
    verify_colon_lemmas,
    verify_colon_sweep,
    verify_lower_bound,
    verify_oracle_sweep,
    verify_ordinary_power,
    verify_ordinary_sweep,
    verify_proof_trace_sweep,
    verify_theorem_sweep,
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


def test_check_theorem_instance(g5):
    row = check_theorem_instance(g5, 2)
    assert (row["ind_match"], row["reg_symbolic"], row["formula_value"], row["status"]) == (2, 5, 5, "ok")


def test_check_theorem_instance_with_extra_columns(k3):
    row = check_theorem_instance(k3, 2, CoefficientField(2), ordinary=True, oracle=True)
    assert row["status"] == "ok"
    assert row["reg_ordinary"] == 4
    assert row["detail"] == {"ordinary_formula": True, "reg_polarization": 4}


def test_cap_turns_rows_into_skips(g5):
    CAPS["generators"] = 2
    row = check_theorem_instance(g5, 2)
    assert row["status"] == "skipped:generators=2"
    assert row["reg_symbolic"] is None
    assert row["formula_value"] == 5


def test_non_cameron_walker_graph_is_flagged(c5):
    row = check_theorem_instance(c5, 1)
    assert row["status"] == "violated"
    assert row["reg_symbolic"] > row["formula_value"]


def test_theorem_graphs_numbering():
    entries = theorem_graphs(_bounds("tiny"), unions=True, union_limit=3)
    ids = [graph_id for graph_id, _, _ in entries]
    assert ids[0] == "cw0001"
    assert ids[-3:] == ["un0001", "un0002", "un0003"]
    assert entries[-3][1] == "union(cw0001,cw0001)"
    assert all(graph.n <= 5 for _, _, graph in entries)


def test_theorem_sweep_tiny():
    report = verify_theorem_sweep(_bounds("tiny"), [1, 2], union_limit=5, timing=False)
    assert report.rows
    assert report.status_counts["violated"] == 0
    assert report.status_counts["skipped"] == 0
    assert report.exit_code == 0
    assert all(row["elapsed_ms"] == 0 for row in report.rows)
    assert report.metadata["kind"] == "theorem"


def test_parallel_sweep_matches_serial():
    bounds = FamilyBounds(max_vertices=5, max_star=3, max_star_triangles=2, max_triangles=1)
    serial = verify_theorem_sweep(bounds, [1, 2], jobs=1, unions=False)
    parallel = verify_theorem_sweep(bounds, [1, 2], jobs=2, unions=False)
    assert serial.canonical_rows() == parallel.canonical_rows()


def test_cache_is_reused(tmp_path):
    bounds = FamilyBounds(max_vertices=4, max_star=3, max_star_triangles=1)
    cache = ResultCache(str(tmp_path))
    first = verify_theorem_sweep(bounds, [1, 2], cache=cache, unions=False)
    assert cache.hits == 0
    stored = len(cache)
    reloaded = ResultCache(str(tmp_path))
    second = verify_theorem_sweep(bounds, [1, 2], cache=reloaded, unions=False)
    assert stored == len(first.rows)
    assert reloaded.hits == len(second.rows)
    assert len(reloaded) == stored
    assert first.canonical_rows() == second.canonical_rows()


def test_cached_values_match_fresh_computation(tmp_path):
    bounds = FamilyBounds(max_vertices=5, max_star=3, max_star_triangles=2, max_triangles=1)
    cache = ResultCache(str(tmp_path))
    verify_theorem_sweep(bounds, [1, 2], cache=cache, unions=False)
    before = cache.hits
    warm = verify_theorem_sweep(bounds, [1, 2], cache=cache, unions=False)
    fresh = verify_theorem_sweep(bounds, [1, 2], cache=None, unions=False)
    assert cache.hits - before == len(warm.rows)
    assert warm.canonical_rows() == fresh.canonical_rows()
    assert [row["reg_symbolic"] for row in warm.rows] == [row["reg_symbolic"] for row in fresh.rows]


def test_lower_bound_sweep():
    report = verify_lower_bound(4, [1, 2], atlas=True)
    assert len(report.rows) == 9 * 2
    assert report.status_counts["violated"] == 0
    assert all(isinstance(row["detail"]["tight"], bool) for row in report.rows)
    labeled = verify_lower_bound(3, [1])
    assert [row["graph_id"] for row in labeled.rows] == ["cg0001", "cg0002", "cg0003", "cg0004", "cg0005"]
    with pytest.raises(BoundsExceeded):
        verify_lower_bound(8, [1])


def test_colon_lemmas(g5):
    result = verify_colon_lemmas(g5, 2)
    assert result["holds"]
    features = [check["feature"] for check in result["checks"]]
    assert features == ["pendant_triangle", "pendant_edge"]
    assert result["checks"][0]["cover_intersection"]
    with pytest.raises(PreconditionFailed):
        verify_colon_lemmas(g5, 0)


def test_colon_sweep_tiny():
    report = verify_colon_sweep(_bounds("tiny"), [1, 2, 3])
    assert report.status_counts["violated"] == 0
    assert report.status_counts["ok"] > 0


def test_proof_trace(g5):
    trace = proof_trace(g5, 2)
    assert trace["holds"]
    assert trace["is_chordal"]
    assert trace["triangle"] == {"apex": 2, "base": [4, 5]}
    assert trace["relabeling"] == {2: 1, 4: 2, 5: 3, 1: 4, 3: 5}
    assert trace["regularities"]["I"] == 5
    assert [check["step"] for check in trace["checks"] if check["step"] is not None] == list(range(1, 10))


def test_proof_trace_on_non_chordal_graph():
    # 4-cycle の骨格、X 側に葉を1本ずつ、Y 側の一方に三角形
    graph = Graph.from_edges(
        8, [(1, 3), (1, 4), (2, 3), (2, 4), (1, 5), (2, 6), (3, 7), (3, 8), (7, 8)]
    )
    assert proof_trace_applicable(graph)
    trace = proof_trace(graph, 2)
    assert not trace["is_chordal"]
    assert trace["ind_match"] == 3
    assert trace["holds"]
    assert trace["regularities"]["I"] == 6


def test_proof_trace_preconditions(g5, k3, p3):
    bowtie = Graph.from_edges(5, [(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5)])
    assert proof_trace_applicable(g5)
    assert not proof_trace_applicable(k3)
    assert not proof_trace_applicable(bowtie)
    assert not proof_trace_applicable(p3)
    with pytest.raises(PreconditionFailed):
        proof_trace(g5, 1)
    with pytest.raises(PreconditionFailed):
        proof_trace(p3, 2)
    with pytest.raises(PreconditionFailed):
        proof_trace(bowtie, 2)


def test_proof_trace_sweep():
    assert verify_proof_trace_sweep(_bounds("quick"), [2]).rows == []
    report = verify_proof_trace_sweep(_bounds("quick"), [1, 2], limit=2, include_chordal=True)
    assert len(report.rows) == 2
    assert report.status_counts["ok"] == 2
    assert all(row["s"] == 2 for row in report.rows)


def test_ordinary_power(g5, c4):
    result = verify_ordinary_power(g5, 2)
    assert result["holds"]
    assert result["reg_ordinary"] == result["reg_symbolic"] == 5
    assert result["checks"]["ideal_equal"] is None
    star = verify_ordinary_power(Graph.from_edges(3, [(1, 2), (2, 3)]), 3)
    assert star["checks"]["ideal_equal"] is True
    with pytest.raises(PreconditionFailed):
        verify_ordinary_power(c4, 2)


def test_ordinary_sweep_tiny(tmp_path):
    cache = ResultCache(str(tmp_path))
    report = verify_ordinary_sweep(_bounds("tiny"), [1, 2], cache=cache, unions=False)
    assert report.status_counts["violated"] == 0
    assert len(cache) > 0


def test_oracle_ideals_are_reproducible():
    first = oracle_ideals(3, seed=5, box_count=2)
    assert first == oracle_ideals(3, seed=5, box_count=2)
    assert [box for _, _, box in first] == [False, False, False, True, True]


def test_oracle_sweep():
    report = verify_oracle_sweep(count=6, seed=1, field_chars=(0, 2), box_count=3)
    assert len(report.rows) == (6 + 3) * 2
    assert report.status_counts["violated"] == 0
    assert report.rows[0]["graph_id"] == "rd0001"
    assert report.rows[0]["provenance"].startswith("random(seed=1,k=0):(")
    assert all("box_equal" in row["detail"] for row in report.rows if row["provenance"].startswith("random_box"))
