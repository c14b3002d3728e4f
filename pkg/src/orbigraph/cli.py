"""Command-line front end: analyze, compare, generate, sequence, demo.

Exit codes: 0 success (or similar, for compare); 1 dissimilar; 2 parse or
parameter error; 3 disconnected input; 4 resource cap exceeded; 5 sequence
verification failure.  JSON output carries no timestamps unless --meta is
given, so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .aut import automorphism_group, orbit_partition
from .graph_core import (
    Graph,
    GraphFormatError,
    cyclomatic_number,
    degree_stats,
    density,
    edge_vertex_ratio,
    is_connected,
    parse_edge_list,
    parse_graph6,
    serialize_edge_list,
    to_dot,
    to_graph6,
)
from .orbital import entropy_of, orbit_divisor_matrix, orbit_profile, orbitally_homothetic, orbitally_similar
from .sequences import SequenceSpec, SequenceSpecError, generate as generate_sequence, preservation_report
from .spectral import spectral_radius_adjacency, spectral_radius_divisor
from . import constructions as cons

EXIT_OK = 0
EXIT_DISSIMILAR = 1
EXIT_PARSE = 2
EXIT_DISCONNECTED = 3
EXIT_RESOURCE = 4
EXIT_VERIFY = 5

# Reference orbit distribution vectors with their published 4-decimal entropies.
TABLE1_ROWS = (
    ((Fraction(17, 20), Fraction(2, 20), Fraction(1, 20)), 0.7476),
    ((Fraction(5, 8), Fraction(2, 8), Fraction(1, 8)), 1.2988),
    ((Fraction(2, 4), Fraction(1, 4), Fraction(1, 4)), 1.5000),
    ((Fraction(2, 5), Fraction(2, 5), Fraction(1, 5)), 1.5219),
    ((Fraction(2, 5), Fraction(2, 5), Fraction(1, 5)), 1.5219),
    ((Fraction(8, 20), Fraction(8, 20), Fraction(4, 20)), 1.5219),
    ((Fraction(2, 5), Fraction(2, 5), Fraction(1, 5)), 1.5219),
    ((Fraction(4, 10), Fraction(4, 10), Fraction(2, 10)), 1.5219),
)


class CliError(Exception):
    def __init__(self, message: str, code: int) -> None:
        super().__init__(message)
        self.code = code


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _load_graph(path: str, fmt: str) -> Graph:
    try:
        text = Path(path).read_text(encoding="ascii")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE) from exc
    try:
        return parse_edge_list(text) if fmt == "edgelist" else parse_graph6(text)
    except GraphFormatError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from exc


def _require_connected(graph: Graph, path: str) -> None:
    if not is_connected(graph):
        raise CliError(f"{path}: graph is disconnected", EXIT_DISCONNECTED)


def _require_desk_scale(graph: Graph, cap: int = 2000) -> None:
    if graph.n > cap:
        raise CliError(f"graph has {graph.n} vertices, above the supported cap {cap}", EXIT_RESOURCE)


def _with_meta(payload: dict, meta: bool) -> dict:
    if meta:
        payload["meta"] = {
            "tool": f"orbigraph {__version__}",
            "generated_at": datetime.now(timezone.utc).isoformat(),
        }
    return payload


def _analysis_payload(graph: Graph) -> dict:
    partition = orbit_partition(graph)
    group = automorphism_group(graph)
    dm = orbit_divisor_matrix(graph)
    profile = orbit_profile(graph)
    perron = spectral_radius_adjacency(graph, partition=partition)
    stats = degree_stats(graph)
    return {
        "order": graph.n,
        "size": graph.m,
        "orbits": [list(cell) for cell in partition.cells],
        "group_order": group.order,
        "divisor": dm.as_dict(),
        "omega": [_frac(w) for w in profile.omega],
        "entropy": profile.entropy,
        "rho_adjacency": perron.rho,
        "rho_divisor": spectral_radius_divisor(dm),
        "principal_ratio": perron.gamma,
        "min_degree": stats.min_degree,
        "max_degree": stats.max_degree,
        "average_degree": _frac(stats.average_degree),
        "degree_variance": _frac(stats.degree_variance),
        "edge_vertex_ratio": _frac(edge_vertex_ratio(graph)),
        "density": _frac(density(graph)) if graph.n >= 2 else None,
        "cyclomatic_number": cyclomatic_number(graph),
    }


def _print_analysis_table(payload: dict) -> None:
    rows = [
        ("order", payload["order"]),
        ("size", payload["size"]),
        ("orbits", " ".join("{" + ",".join(map(str, c)) + "}" for c in payload["orbits"])),
        ("group order", payload["group_order"]),
        ("omega", " ".join(payload["omega"])),
        ("entropy", f"{payload['entropy']:.4f}"),
        ("rho (adjacency)", f"{payload['rho_adjacency']:.4f}"),
        ("rho (divisor)", f"{payload['rho_divisor']:.4f}"),
        ("principal ratio", f"{payload['principal_ratio']:.4f}"),
        ("min/max degree", f"{payload['min_degree']}/{payload['max_degree']}"),
        ("average degree", payload["average_degree"]),
        ("degree variance", payload["degree_variance"]),
        ("edge-vertex ratio", payload["edge_vertex_ratio"]),
        ("density", payload["density"]),
        ("cyclomatic number", payload["cyclomatic_number"]),
    ]
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value}")
    ell = payload["divisor"]["ell"]
    flat = payload["divisor"]["entries"]
    print("divisor matrix:")
    for i in range(ell):
        print("  [" + " ".join(f"{flat[i * ell + j]:>3}" for j in range(ell)) + "]")


def cmd_analyze(args: argparse.Namespace) -> int:
    graph = _load_graph(args.path, args.format)
    _require_connected(graph, args.path)
    _require_desk_scale(graph)
    payload = _analysis_payload(graph)
    if args.dot:
        Path(args.dot).write_text(to_dot(graph, orbit_partition(graph).cells), encoding="ascii")
    if args.json:
        print(json.dumps(_with_meta(payload, args.meta), indent=2))
    else:
        _print_analysis_table(payload)
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    a = _load_graph(args.path_a, args.format)
    b = _load_graph(args.path_b, args.format)
    for graph, path in ((a, args.path_a), (b, args.path_b)):
        _require_connected(graph, path)
        _require_desk_scale(graph)
    verdict = orbitally_similar(a, b)
    homothetic = orbitally_homothetic(a, b)
    ent_a = orbit_profile(a).entropy
    ent_b = orbit_profile(b).entropy
    payload = {
        "similar": verdict.similar,
        "witness": list(verdict.witness) if verdict.witness is not None else None,
        "common_matrix": verdict.common_matrix.as_dict() if verdict.common_matrix else None,
        "homothetic": homothetic,
        "entropy_a": ent_a,
        "entropy_b": ent_b,
    }
    if args.json:
        print(json.dumps(_with_meta(payload, args.meta), indent=2))
    else:
        print(f"orbitally similar   {verdict.similar}")
        print(f"orbitally homothetic {homothetic}")
        print(f"entropy             {ent_a:.4f} vs {ent_b:.4f}")
        if verdict.similar:
            print(f"witness             {list(verdict.witness)}")
    return EXIT_OK if verdict.similar else EXIT_DISSIMILAR


def _family_params(args: argparse.Namespace) -> dict:
    params: dict = {}
    if args.dims is not None:
        try:
            params["dims"] = tuple(int(t) for t in args.dims.split(","))
        except ValueError as exc:
            raise CliError(f"bad --dims {args.dims!r}", EXIT_PARSE) from exc
    for key in ("n", "p", "q", "m"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    return params


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        graph = cons.family(args.family, **_family_params(args))
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    text = serialize_edge_list(graph) if args.format == "edgelist" else to_graph6(graph) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="ascii")
        print(f"wrote {args.family}: order {graph.n}, size {graph.m} -> {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _print_sequence_table(report) -> None:
    header = f"{'k':>2}  {'|G|':>5}  {'size':>5}  {'omega':<24} {'Ent':>8}  {'rho':>8}  {'gamma':>8}  {'c':>4}"
    print(header)
    for k, t in enumerate(report.terms, start=1):
        omega = ",".join(_frac(w) for w in t.omega)
        print(
            f"{k:>2}  {t.order:>5}  {t.size:>5}  {omega:<24} "
            f"{t.entropy:>8.4f}  {t.rho_adjacency:>8.4f}  {t.principal_ratio:>8.4f}  {t.cyclomatic_number:>4}"
        )
    print(f"self-similar: {report.verdict.self_similar}")
    for check in report.preservation:
        status = "ok" if check.passed else f"FAIL {check.detail}"
        print(f"  {check.name:<20} {status}")


def cmd_sequence(args: argparse.Namespace) -> int:
    try:
        spec = SequenceSpec.loads(Path(args.specfile).read_text(encoding="ascii"))
        graphs = generate_sequence(spec, args.count)
    except (OSError, json.JSONDecodeError, SequenceSpecError) as exc:
        raise CliError(f"{args.specfile}: {exc}", EXIT_PARSE) from exc
    report = preservation_report(graphs, jobs=args.jobs)
    if args.json:
        print(json.dumps(_with_meta(report.as_dict(), args.meta), indent=2))
    else:
        _print_sequence_table(report)
    if not report.verdict.self_similar:
        print(f"verification failed: {report.verdict.reason}", file=sys.stderr)
        return EXIT_VERIFY
    failed = report.failed_checks()
    if failed:
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_demo(args: argparse.Namespace) -> int:
    if args.name != "table1":
        raise CliError(f"unknown demo {args.name!r} (available: table1)", EXIT_PARSE)
    print(f"{'row':>3}  {'omega':<22} {'computed':>9}  {'reference':>9}")
    for i, (omega, expected) in enumerate(TABLE1_ROWS, start=1):
        value = entropy_of(omega)
        vec = ",".join(_frac(w) for w in omega)
        print(f"{i:>3}  {vec:<22} {value:>9.4f}  {expected:>9.4f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbigraph", description=__doc__)
    parser.add_argument("--version", action="version", version=f"orbigraph {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="orbit structure and invariants of one graph")
    p.add_argument("path")
    p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", metavar="OUT", help="write DOT with orbit coloring")
    p.add_argument("--meta", action="store_true", help="add provenance to JSON output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare", help="decide orbital similarity of two graphs")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")
    p.add_argument("--json", action="store_true")
    p.add_argument("--meta", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("generate", help="build a named family member")
    p.add_argument("family", choices=cons.family_names())
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--dims", help="comma-separated cycle lengths, e.g. 3,4")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("sequence", help="generate and verify a self-similar sequence")
    p.add_argument("specfile")
    p.add_argument("--count", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--meta", action="store_true")
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("demo", help="built-in demonstrations")
    p.add_argument("name")
    p.set_defaults(func=cmd_demo)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    raise SystemExit(main())
