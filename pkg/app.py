"""
Cameron-Walker 正則性検証ツール - メインアプリケーション

辺イデアルの記号的冪とその正則性を厳密に計算し、
reg(I(G)^(s)) = 2s + ind-match(G) − 1 をインスタンスごとに確認するコマンドライン。
"""
from typing import Any, Dict, List, Optional
import argparse
import json
import logging
import sys
import os

# モジュールのインポート
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from config.defaults import (
    DEFAULT_UNION_LIMIT,
    EXIT_CODES,
    SWEEP_PRESETS,
    apply_cap_overrides,
    get_sweep_preset,
    load_runtime_settings,
)
from modules.cache import ResultCache
from modules.cw_structure import FamilyBounds, decompose, generate
from modules.errors import CapExceeded, CWRegError, FormatError, NotCameronWalker, NotConnected, PreconditionFailed
from modules.evaluator import VerificationReport, format_report_for_display
from modules.formats import (
    GRAPH_JSON_SCHEMA,
    GRAPH_TEXT_SCHEMA,
    IDEAL_JSON_SCHEMA,
    PARAMS_JSON_SCHEMA,
    betti_to_csv,
    betti_to_json,
    format_graph_text,
    format_monomial,
    graph_to_dict,
    ideal_to_dict,
    load_graph,
    load_graph_or_ideal,
    load_ideal,
    load_params,
)
from modules.graph_core import (
    Graph,
    induced_matching_number,
    matching_number,
    minimal_vertex_covers,
    pendant_features,
    structural_predicates,
)
from modules.monomial_algebra import edge_ideal, power, symbolic_power
from modules.pdf_reporter import write_pdf_report
from modules.polarization import regularity_via_polarization
from modules.report_exporter import ReportExporter
from modules.resolution import CoefficientField, betti_table, regularity
from modules.verifier import (
    proof_trace,
    verify_colon_lemmas,
    verify_colon_sweep,
    verify_lower_bound,
    verify_oracle_sweep,
    verify_ordinary_power,
    verify_ordinary_sweep,
    verify_proof_trace_sweep,
    verify_theorem_sweep,
)

logger = logging.getLogger("cwreg")

SCHEMAS = "\n".join([
    f"graph text: {GRAPH_TEXT_SCHEMA}",
    f"graph JSON: {GRAPH_JSON_SCHEMA}",
    f"ideal JSON: {IDEAL_JSON_SCHEMA}",
    f"params JSON: {PARAMS_JSON_SCHEMA}",
])

VERIFY_TARGETS = ["theorem", "lower-bound", "colon", "proof-trace", "ordinary", "oracle"]


def parse_s_values(text: str) -> List[int]:
    """"1..3" / "1,3" / "2" を s の一覧に変換"""
    try:
        if ".." in text:
            low, high = (int(part) for part in text.split("..", 1))
            values = list(range(low, high + 1))
        else:
            values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse s range {text!r} (use 1..3 or 1,2,3)")
    if not values:
        raise argparse.ArgumentTypeError(f"empty s range {text!r}")
    return values


def _add_global_flags(parser: argparse.ArgumentParser, with_defaults: bool) -> None:
    """サブコマンドの後ろにも書けるよう、同じフラグを両方のパーサーに登録する"""

    def default(value: Any) -> Any:
        return value if with_defaults else argparse.SUPPRESS

    parser.add_argument("--field-char", type=int, default=default(0), help="係数体の標数（0 または素数）")
    parser.add_argument("--jobs", type=int, default=default(None), help="ワーカー数（既定は CWREG_JOBS または 1）")
    parser.add_argument("--format", choices=["csv", "json"], default=default("csv"), help="出力形式")
    parser.add_argument("--out", default=default(None), help="出力先ファイル（省略時は標準出力）")
    parser.add_argument("--cache-dir", default=default(None), help="正則性キャッシュのディレクトリ（CWREG_CACHE_DIR）")
    parser.add_argument("--gen-cap", type=int, default=default(None), help="極小生成系のサイズ上限")
    parser.add_argument("--seed", type=int, default=default(0), help="ランダムなイデアルの乱数シード")
    parser.add_argument("--no-timing", action="store_true", default=default(False), help="elapsed_ms を 0 で出力")
    parser.add_argument("--pdf", default=default(None), help="検証レポートの要約 PDF の出力先")
    parser.add_argument("--log-level", default=default(None), help="ログレベル（既定は CWREG_LOG_LEVEL または WARNING）")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cwreg",
        description="Symbolic powers of edge ideals, exact regularity, and Cameron-Walker verification sweeps.",
        epilog=SCHEMAS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    _add_global_flags(parser, with_defaults=True)
    subparsers = parser.add_subparsers(dest="command", required=True)

    analyze = subparsers.add_parser("analyze", help="グラフの不変量と構造分解")
    analyze.add_argument("graph_file")

    sympow = subparsers.add_parser("sympow", help="I(G)^(s) の極小生成系")
    sympow.add_argument("graph_file")
    sympow.add_argument("--s", type=int, required=True)

    reg = subparsers.add_parser("reg", help="イデアルまたは I(G)^(s) の正則性")
    reg.add_argument("input_file")
    reg.add_argument("--s", type=int, help="グラフ入力の冪（既定は 1）")
    reg.add_argument("--ordinary", action="store_true", help="記号的冪ではなく通常冪 I(G)^s")
    reg.add_argument("--oracle", action="store_true", help="偏極化による検算も行う")

    gen = subparsers.add_parser("gen-cw", help="パラメータから Cameron-Walker グラフを生成")
    gen.add_argument("params_file")

    betti = subparsers.add_parser("betti", help="単項式イデアルの Betti 表")
    betti.add_argument("ideal_file")
    betti.add_argument("--method", choices=["lcm", "box"], default="lcm")
    betti.add_argument("--table", action="store_true", help="行 = j − i、列 = i の Betti 表で表示")

    verify = subparsers.add_parser("verify", help="検証スイープ")
    verify.add_argument("target", choices=VERIFY_TARGETS)
    verify.add_argument("--preset", choices=sorted(SWEEP_PRESETS), default="acceptance")
    verify.add_argument("--max-vertices", type=int)
    verify.add_argument("--max-pendants", type=int)
    verify.add_argument("--max-triangles", type=int)
    verify.add_argument("--max-star", type=int)
    verify.add_argument("--max-star-triangles", type=int)
    verify.add_argument("--s", type=parse_s_values, dest="s_values")
    verify.add_argument("--no-unions", action="store_true", help="非連結な例を含めない")
    verify.add_argument("--union-limit", type=int, default=DEFAULT_UNION_LIMIT)
    verify.add_argument("--ordinary", action="store_true", help="通常冪の正則性の列も計算")
    verify.add_argument("--oracle", action="store_true", help="偏極化による検算も行う")
    verify.add_argument("--n-max", type=int, default=6, help="lower-bound: 最大頂点数")
    verify.add_argument("--atlas", action="store_true", help="lower-bound: 同型類の代表だけを使う")
    verify.add_argument("--limit", type=int, help="proof-trace: 対象グラフ数の上限")
    verify.add_argument("--include-chordal", action="store_true", help="proof-trace: 弦グラフも含める")
    verify.add_argument("--count", type=int, default=100, help="oracle: ランダムなイデアルの個数")
    verify.add_argument("--box-count", type=int, default=25, help="oracle: 箱の全列挙と比べる小さな例の個数")
    verify.add_argument("--fields", default="0,2", help="oracle: 標数の一覧")
    verify.add_argument("--graph", dest="graph_file", help="colon / proof-trace / ordinary を1つのグラフで実行")

    for subparser in subparsers.choices.values():
        _add_global_flags(subparser, with_defaults=False)
    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as f:
        f.write(text)


def _render_record(record: Dict[str, Any], fmt: str) -> str:
    """単一の結果を "key: value" 行（csv 指定時）または JSON で表示"""
    if fmt == "json":
        return json.dumps(record, ensure_ascii=False, indent=2, default=list) + "\n"
    lines = []
    for key, value in record.items():
        if isinstance(value, bool):
            value = str(value).lower()
        elif isinstance(value, (dict, list, tuple)):
            value = json.dumps(value, ensure_ascii=False, default=list)
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def run_analyze(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph_file)
    predicates = structural_predicates(graph)
    features = pendant_features(graph)
    match = matching_number(graph)
    ind_match = induced_matching_number(graph)
    record: Dict[str, Any] = {
        "n": graph.n,
        "m": graph.m,
        "match": match,
        "ind_match": ind_match,
        "cameron_walker": match == ind_match,
        "is_bipartite": predicates["is_bipartite"],
        "is_chordal": predicates["is_chordal"],
        "is_connected": predicates["is_connected"],
        "components": [list(c) for c in predicates["components"]],
        "pendant_edges": [list(e) for e in features["pendant_edges"]],
        "pendant_triangles": [{"apex": t.apex, "base": list(t.base)} for t in features["pendant_triangles"]],
        "minimal_vertex_covers": len(minimal_vertex_covers(graph)),
    }
    try:
        record["decomposition"] = decompose(graph).to_params().to_dict()
    except (NotCameronWalker, NotConnected) as e:
        record["decomposition"] = f"none ({e})"
    _emit(_render_record(record, args.format), args.out)
    return EXIT_CODES["ok"]


def run_sympow(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph_file)
    ideal = symbolic_power(graph, args.s)
    if args.format == "json":
        text = json.dumps(ideal_to_dict(ideal)) + "\n"
    else:
        text = "".join(format_monomial(g) + "\n" for g in ideal.gens)
    _emit(text, args.out)
    return EXIT_CODES["ok"]


def run_reg(args: argparse.Namespace) -> int:
    field_ = CoefficientField(args.field_char)
    source = load_graph_or_ideal(args.input_file)
    if isinstance(source, Graph):
        s = 1 if args.s is None else args.s
        ideal = power(edge_ideal(source), s) if args.ordinary else symbolic_power(source, s)
    elif args.ordinary or args.s is not None:
        raise FormatError("--s and --ordinary apply to graph input only, not to an ideal file")
    else:
        ideal = source
    value = regularity(ideal, field_, args.jobs)
    text = f"{value}\n"
    code = EXIT_CODES["ok"]
    if args.oracle:
        oracle = regularity_via_polarization(ideal, field_)
        text += f"polarization: {oracle}\n"
        if oracle != value:
            code = EXIT_CODES["violated"]
    _emit(text, args.out)
    return code


def run_gen_cw(args: argparse.Namespace) -> int:
    params = load_params(args.params_file)
    graph = generate(params)
    if args.format == "json":
        text = json.dumps(graph_to_dict(graph, params)) + "\n"
    else:
        text = format_graph_text(graph)
    _emit(text, args.out)
    return EXIT_CODES["ok"]


def run_betti(args: argparse.Namespace) -> int:
    ideal = load_ideal(args.ideal_file)
    table = betti_table(ideal, CoefficientField(args.field_char), method=args.method, jobs=args.jobs)
    if args.table:
        text = (
            f"{table.to_frame().to_string()}\n"
            f"projective dimension: {table.projective_dimension()}\n"
            f"regularity: {table.regularity()}\n"
        )
    else:
        text = betti_to_json(table) if args.format == "json" else betti_to_csv(table)
    _emit(text, args.out)
    return EXIT_CODES["ok"]


def _bounds_from_args(args: argparse.Namespace) -> FamilyBounds:
    preset = get_sweep_preset(args.preset)
    overrides = {
        "max_vertices": args.max_vertices,
        "max_pendants": args.max_pendants,
        "max_triangles": args.max_triangles,
        "max_star": args.max_star,
        "max_star_triangles": args.max_star_triangles,
    }
    for key, value in overrides.items():
        if value is not None:
            preset[key] = value
    return FamilyBounds(
        max_vertices=preset["max_vertices"],
        max_pendants=preset["max_pendants"],
        max_triangles=preset["max_triangles"],
        max_star=preset["max_star"],
        max_star_triangles=preset["max_star_triangles"],
    )


def _single_graph_record(args: argparse.Namespace, field_: CoefficientField) -> Dict[str, Any]:
    """verify colon / proof-trace / ordinary を --graph の1グラフで実行"""
    graph = load_graph(args.graph_file)
    s_values = args.s_values or [2]
    results = []
    for s in s_values:
        if args.target == "colon":
            results.append(verify_colon_lemmas(graph, s))
        elif args.target == "proof-trace":
            results.append(proof_trace(graph, s, field_))
        else:
            result = verify_ordinary_power(graph, s, field_)
            result["s"] = s
            results.append(result)
    return {"target": args.target, "results": results, "holds": all(r["holds"] for r in results)}


def run_verify(args: argparse.Namespace, settings: Dict[str, Any]) -> int:
    field_ = CoefficientField(args.field_char)
    jobs = args.jobs or settings["jobs"]
    timing = not args.no_timing

    if args.graph_file is not None:
        if args.target not in ("colon", "proof-trace", "ordinary"):
            raise FormatError("--graph works with colon, proof-trace and ordinary")
        record = _single_graph_record(args, field_)
        _emit(json.dumps(record, ensure_ascii=False, indent=2, default=list) + "\n", args.out)
        return EXIT_CODES["ok"] if record["holds"] else EXIT_CODES["violated"]

    cache_dir = args.cache_dir or settings["cache_dir"]
    cache = ResultCache(cache_dir) if cache_dir else None
    bounds = _bounds_from_args(args)
    s_values = args.s_values or get_sweep_preset(args.preset)["s_values"]
    unions = not args.no_unions

    if args.target == "theorem":
        report = verify_theorem_sweep(
            bounds, s_values, field_, jobs, cache, unions, args.union_limit, args.ordinary, args.oracle, timing
        )
    elif args.target == "lower-bound":
        report = verify_lower_bound(args.n_max, args.s_values or [1, 2], field_, jobs, cache, args.atlas, timing)
    elif args.target == "colon":
        report = verify_colon_sweep(bounds, s_values, jobs, False, args.union_limit, timing)
    elif args.target == "proof-trace":
        report = verify_proof_trace_sweep(
            bounds, args.s_values or [2, 3], field_, jobs, args.limit, args.include_chordal, timing
        )
    elif args.target == "ordinary":
        report = verify_ordinary_sweep(bounds, s_values, field_, jobs, cache, unions, args.union_limit, timing)
    else:
        try:
            fields = [int(part) for part in args.fields.split(",") if part.strip()]
        except ValueError:
            raise FormatError(f"--fields must be a comma-separated list of characteristics, got {args.fields!r}")
        for char in fields:
            CoefficientField(char)
        report = verify_oracle_sweep(args.count, args.seed, fields, jobs, box_count=args.box_count, timing=timing)

    return _finish_report(report, args, cache)


def _finish_report(report: VerificationReport, args: argparse.Namespace, cache: Optional[ResultCache]) -> int:
    exporter = ReportExporter(args.format)
    text = exporter.export_results(report, args.out)
    if args.out is None:
        sys.stdout.write(text)
    if args.pdf:
        write_pdf_report(report, args.pdf)
    sys.stderr.write(format_report_for_display(report))
    if cache is not None:
        logger.info("キャッシュ: %d 件ヒット、計 %d 件 (%s)", cache.hits, len(cache), cache.path)
    return report.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    """エントリーポイント。終了コードを返す"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_CODES["usage"] if e.code else EXIT_CODES["ok"]

    settings = load_runtime_settings()
    args.jobs = args.jobs or settings["jobs"]
    level = (args.log_level or settings["log_level"]).upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="[%(levelname)s] %(message)s", stream=sys.stderr, force=True)

    try:
        apply_cap_overrides({"generators": args.gen_cap or settings["gen_cap"]})
        if args.command == "analyze":
            return run_analyze(args)
        if args.command == "sympow":
            return run_sympow(args)
        if args.command == "reg":
            return run_reg(args)
        if args.command == "gen-cw":
            return run_gen_cw(args)
        if args.command == "betti":
            return run_betti(args)
        return run_verify(args, settings)
    except CapExceeded as e:
        logger.error("上限を超えたため計算できません: %s", e)
        return EXIT_CODES["all_skipped"]
    except PreconditionFailed as e:
        logger.error("前提条件を満たしていません: %s", e)
        return EXIT_CODES["usage"]
    except OSError as e:
        logger.error("ファイルを書き出せません: %s", e)
        return EXIT_CODES["usage"]
    except (CWRegError, ValueError) as e:
        logger.error("%s", e)
        sys.stderr.write(f"\nexpected formats:\n{SCHEMAS}\n")
        return EXIT_CODES["usage"]


if __name__ == "__main__":
    sys.exit(main())
