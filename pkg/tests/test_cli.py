import json

import pytest

import app
from modules.evaluator import REPORT_COLUMNS
from modules.formats import format_graph_text


@pytest.fixture
def g5_file(tmp_path, g5):
    path = tmp_path / "g5.txt"
    path.write_text("# pendant edge and pendant triangle\n" + format_graph_text(g5), encoding="utf-8")
    return str(path)


@pytest.fixture
def k3_ideal_file(tmp_path):
    path = tmp_path / "k3.json"
    path.write_text(json.dumps({"n": 3, "gens": ["x1*x2", "x1*x3", "x2*x3"]}), encoding="utf-8")
    return str(path)


def test_analyze(g5_file, capsys):
    assert app.main(["analyze", g5_file]) == 0
    out = capsys.readouterr().out
    assert "match: 2\n" in out
    assert "ind_match: 2\n" in out
    assert "cameron_walker: true\n" in out
    assert "is_chordal: true\n" in out


def test_analyze_json(g5_file, capsys):
    assert app.main(["--format", "json", "analyze", g5_file]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["decomposition"]["kind"] == "skeleton"
    assert data["pendant_triangles"] == [{"apex": 2, "base": [4, 5]}]


def test_analyze_non_cameron_walker(tmp_path, capsys):
    path = tmp_path / "c5.txt"
    path.write_text("5 5\n1 2\n2 3\n3 4\n4 5\n1 5\n", encoding="utf-8")
    assert app.main(["analyze", str(path)]) == 0
    out = capsys.readouterr().out
    assert "cameron_walker: false\n" in out
    assert "decomposition: none (" in out


def test_sympow(tmp_path, capsys):
    path = tmp_path / "k3.txt"
    path.write_text("3 3\n1 2\n1 3\n2 3\n", encoding="utf-8")
    assert app.main(["sympow", str(path), "--s", "2"]) == 0
    assert capsys.readouterr().out == "x1*x2*x3\nx1^2*x2^2\nx1^2*x3^2\nx2^2*x3^2\n"


def test_reg(g5_file, k3_ideal_file, capsys):
    assert app.main(["reg", g5_file, "--s", "2"]) == 0
    assert capsys.readouterr().out == "5\n"
    assert app.main(["reg", g5_file, "--s", "2", "--ordinary", "--field-char", "3"]) == 0
    assert capsys.readouterr().out == "5\n"
    assert app.main(["reg", k3_ideal_file, "--oracle"]) == 0
    assert capsys.readouterr().out == "2\npolarization: 2\n"


def test_gen_cw(tmp_path, capsys):
    path = tmp_path / "params.json"
    path.write_text(json.dumps({"kind": "star", "m": 3}), encoding="utf-8")
    assert app.main(["gen-cw", str(path)]) == 0
    assert capsys.readouterr().out == "4 3\n1 2\n1 3\n1 4\n"
    assert app.main(["gen-cw", str(path), "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["params"] == {"kind": "star", "m": 3}


def test_betti(k3_ideal_file, tmp_path):
    out = tmp_path / "betti.csv"
    assert app.main(["betti", k3_ideal_file, "--out", str(out)]) == 0
    assert out.read_text(encoding="utf-8") == "i,j,rank\n0,2,3\n1,3,2\n"


def test_verify_theorem_csv(tmp_path, capsys):
    out = tmp_path / "theorem.csv"
    pdf = tmp_path / "theorem.pdf"
    cache_dir = tmp_path / "cache"
    argv = [
        "verify", "theorem", "--preset", "tiny", "--s", "1", "--union-limit", "2",
        "--no-timing", "--out", str(out), "--pdf", str(pdf), "--cache-dir", str(cache_dir),
    ]
    assert app.main(argv) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == ",".join(REPORT_COLUMNS)
    assert all(line.endswith(",ok,0") for line in lines[1:])
    assert pdf.read_bytes().startswith(b"%PDF")
    assert (cache_dir / "regularity_cache.jsonl").exists()
    assert "🟢 ok:" in capsys.readouterr().err


def test_verify_theorem_json(capsys):
    assert app.main(["verify", "theorem", "--preset", "tiny", "--s", "1..2", "--no-unions", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["metadata"]["config"]["s_values"] == [1, 2]
    assert data["status_counts"]["violated"] == 0
    assert {row["s"] for row in data["rows"]} == {1, 2}


def test_verify_single_graph(g5_file, capsys):
    assert app.main(["verify", "colon", "--graph", g5_file, "--s", "2,3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["holds"] is True
    assert [result["s"] for result in data["results"]] == [2, 3]
    assert app.main(["verify", "proof-trace", "--graph", g5_file]) == 0
    assert json.loads(capsys.readouterr().out)["results"][0]["holds"] is True


def test_verify_oracle(capsys):
    assert app.main(["verify", "oracle", "--count", "2", "--box-count", "1", "--fields", "0", "--seed", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 1 + 3
    assert lines[1].startswith("rd0001,")


def test_usage_errors(tmp_path, k3_ideal_file, capsys):
    assert app.main(["analyze", str(tmp_path / "missing.txt")]) == 2
    assert "expected formats" in capsys.readouterr().err
    assert app.main(["verify", "theorem", "--s", "a..b"]) == 2
    assert app.main(["reg", k3_ideal_file, "--field-char", "4"]) == 2
    assert app.main(["frobnicate"]) == 2
    assert app.main(["verify", "theorem", "--graph", k3_ideal_file]) == 2


def test_cap_exceeded_exit_code(g5_file):
    assert app.main(["--gen-cap", "2", "reg", g5_file, "--s", "2"]) == 3


def test_betti_table_summary(k3_ideal_file, capsys):
    assert app.main(["betti", k3_ideal_file, "--table"]) == 0
    out = capsys.readouterr().out
    assert "projective dimension: 1\n" in out
    assert out.endswith("regularity: 2\n")


def test_graph_only_flags_rejected_for_ideal_file(k3_ideal_file, capsys):
    assert app.main(["reg", k3_ideal_file, "--ordinary"]) == 2
    assert "graph input only" in capsys.readouterr().err
    assert app.main(["reg", k3_ideal_file, "--s", "2"]) == 2
    assert capsys.readouterr().out == ""


def test_unwritable_output_is_usage_error(k3_ideal_file, g5_file, tmp_path):
    missing = tmp_path / "missing" / "out.txt"
    assert app.main(["betti", k3_ideal_file, "--out", str(missing)]) == 2
    assert app.main(["reg", g5_file, "--out", str(missing)]) == 2
    assert not missing.exists()
