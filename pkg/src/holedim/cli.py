"""Command line interface: ``holedim analyze | certify | verify | sweep``.

Exit codes: 0 all holds, 1 usage or parse error, 2 internal verification
failure, 3 conjecture violation found, 4 unknowns present.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Iterator

from . import generate
from .certifiers import (
    CertifierError,
    ConstructionError,
    SubgraphWitness,
    chordal_certificate,
    newfamily_certificate,
    subgraph_for_g4,
    subgraph_for_three_triangles,
    triangle_free_certificate,
    upper_bound_pipeline,
)
from .competition import Certificate, competition_number_exact, verify_certificate
from .graph import Graph, GraphFormatError, parse_digraph, parse_edge_list, parse_graph6, to_graph6
from .report import SCALAR_FIELDS, SweepSummary, analyze_graph, exit_code, sweep

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL, EXIT_VIOLATION, EXIT_UNKNOWN = 0, 1, 2, 3, 4

_EDGE_LINE = re.compile(r"^(n\s+)?\d+(\s+\d+)?$")


def detect_format(text: str) -> str:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return "edges" if _EDGE_LINE.match(line) else "graph6"
    return "edges"


def read_graphs(path: str, fmt: str = "auto") -> list[tuple[str, Graph]]:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    if fmt == "auto":
        fmt = detect_format(text)
    name = Path(path).stem if path != "-" else "stdin"
    if fmt == "edges":
        return [(name, parse_edge_list(text))]
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if len(lines) == 1:
        return [(name, parse_graph6(lines[0]))]
    return [(f"{name}:{i + 1}", parse_graph6(ln)) for i, ln in enumerate(lines)]


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args: argparse.Namespace) -> int:
    graphs = read_graphs(args.input, args.format)
    try:
        reports = [analyze_graph(g, gid, args.oracle_limit, args.time_budget) for gid, g in graphs]
    except ConstructionError as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.tsv:
        text = "\t".join(SCALAR_FIELDS) + "\n" + "".join(r.tsv_row() + "\n" for r in reports)
    else:
        payload = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
        text = json.dumps(payload, indent=2) + "\n"
    _emit(text, args.out)
    statuses = {r.status for r in reports}
    if "violated" in statuses:
        return EXIT_VIOLATION
    if "unknown" in statuses:
        return EXIT_UNKNOWN
    return EXIT_OK


def build_certificate(g: Graph, method: str, witness: str | None, oracle_limit: int, time_budget: float | None) -> Certificate:
    if method == "chordal":
        return chordal_certificate(g)
    if method == "triangle-free":
        return triangle_free_certificate(g)
    if method == "three-triangles":
        return newfamily_certificate(g, subgraph_for_three_triangles(g))
    if method == "g4":
        return newfamily_certificate(g, subgraph_for_g4(g))
    if method == "newfamily":
        if not witness:
            raise CertifierError("method newfamily needs --witness FILE")
        w = SubgraphWitness.from_json(g, json.loads(Path(witness).read_text()))
        return newfamily_certificate(g, w, oracle_limit=oracle_limit)
    if method == "auto":
        res = upper_bound_pipeline(g)
        if res.certificate is not None:
            return res.certificate
    if g.n > oracle_limit:
        raise CertifierError(f"no certifier applies and n={g.n} exceeds the oracle limit {oracle_limit}")
    res = competition_number_exact(g, time_budget=time_budget)
    if not res.known:
        raise CertifierError(f"oracle budget exhausted (k >= {res.lower})")
    return res.certificate


def cmd_certify(args: argparse.Namespace) -> int:
    (_, g), *rest = read_graphs(args.input, args.format)
    if rest:
        print("certify takes a single graph", file=sys.stderr)
        return EXIT_USAGE
    try:
        cert = build_certificate(g, args.method, args.witness, args.oracle_limit, args.time_budget)
    except CertifierError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConstructionError as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    check = verify_certificate(g, cert)
    if not check:
        print(f"internal verification failure: {check.reason}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(json.dumps(cert.to_json(), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    (_, g), *_ = read_graphs(args.input, args.format)
    text = Path(args.certificate).read_text()
    if text.lstrip().startswith("{"):
        cert = Certificate.from_json(json.loads(text))
    else:
        d, base_n, k = parse_digraph(text)
        cert = Certificate(d, base_n, k, "user")
    res = verify_certificate(g, cert)
    print(json.dumps({"ok": res.ok, "reason": res.reason, "k": cert.k}))
    return EXIT_OK if res else EXIT_INTERNAL


def sweep_source(args: argparse.Namespace) -> Iterator[tuple[str, Graph]]:
    if args.source == "exhaustive":
        for g in generate.exhaustive(args.max_n, args.min_n, triangle_free=args.triangle_free):
            yield to_graph6(g), g
    elif args.source == "random":
        for i, g in enumerate(generate.random_graphs(args.n, args.p, args.count, args.seed)):
            yield f"random-{args.seed}-{i}:{to_graph6(g)}", g
    else:
        yield from read_graphs(args.source, args.format)


def cmd_sweep(args: argparse.Namespace) -> int:
    summary, reports = sweep(sweep_source(args), args.oracle_limit, args.time_budget, args.workers)
    if args.tsv:
        text = "\t".join(SCALAR_FIELDS) + "\n" + "".join(r.tsv_row() + "\n" for r in reports)
        text += "# " + json.dumps(summary.to_json()) + "\n"
    else:
        payload = {"summary": summary.to_json()}
        if args.reports:
            payload["reports"] = [r.to_json() for r in reports]
        text = json.dumps(payload, indent=2) + "\n"
    _emit(text, args.out)
    _print_summary(summary)
    return exit_code(summary)


def _print_summary(s: SweepSummary) -> None:
    c = s.counts
    print(
        f"{s.total} graphs: {c['holds']} hold, {c['violated']} violated, "
        f"{c['unknown']} unknown, {c['error']} errors ({s.seconds:.1f}s)",
        file=sys.stderr,
    )
    if s.violations:
        print("VIOLATION FOUND: " + ", ".join(v["id"] for v in s.violations), file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="holedim", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser, with_input: bool = True) -> None:
        if with_input:
            sp.add_argument("input", help="graph file (edge list or graph6), '-' for stdin")
        sp.add_argument("--format", choices=("edges", "graph6", "auto"), default="auto")
        sp.add_argument("--oracle-limit", type=int, default=9, help="run the exact oracle up to this many vertices")
        sp.add_argument("--time-budget", type=float, default=60.0, help="oracle seconds per k level")
        sp.add_argument("--out", help="write output here instead of stdout")

    sp = sub.add_parser("analyze", help="report holes, hole dimension, k bounds and conjecture status")
    common(sp)
    out = sp.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", default=True)
    out.add_argument("--tsv", action="store_true")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("certify", help="emit a verified certificate as JSON")
    common(sp)
    sp.add_argument(
        "--method",
        default="auto",
        choices=("auto", "chordal", "triangle-free", "three-triangles", "g4", "newfamily", "oracle"),
    )
    sp.add_argument("--witness", help="subgraph witness JSON for --method newfamily")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("verify", help="check a certificate (JSON or arc list) against a graph")
    sp.add_argument("input")
    sp.add_argument("certificate")
    sp.add_argument("--format", choices=("edges", "graph6", "auto"), default="auto")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="check k <= dim H + 1 over a corpus")
    common(sp, with_input=False)
    sp.add_argument("--source", default="exhaustive", help="'exhaustive', 'random', or a graph6 file")
    sp.add_argument("--max-n", type=int, default=6)
    sp.add_argument("--min-n", type=int, default=1)
    sp.add_argument("--triangle-free", action="store_true", help="exhaustive source: triangle-free graphs only")
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--p", type=float, default=0.4)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--reports", action="store_true", help="include per-graph reports in JSON output")
    out = sp.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", default=True)
    out.add_argument("--tsv", action="store_true")
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (GraphFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
