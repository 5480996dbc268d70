"""Per-graph analysis reports and corpus sweeps for the bound k(G) <= dim H(G) + 1."""

from __future__ import annotations

import hashlib
import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Any, Iterable

from .certifiers import ConstructionError, upper_bound_pipeline
from .competition import (
    competition_number_exact,
    competition_number_lower_bound,
    verify_certificate,
)
from .generate import canonical_form
from .graph import Graph, to_graph6
from .holes import HoleBudgetExceeded, holes, recognize_families, triangles
from .holespace import cycle_space_dimension, hole_space_basis, vector_string

HOLDS, VIOLATED, UNKNOWN, ERROR = "holds", "violated", "unknown", "error"

SCALAR_FIELDS = (
    "id", "hash", "n", "m", "h", "dim_h", "dim_c", "k_exact", "k_lower",
    "k_upper", "method", "status", "slack",
)


@dataclass
class Report:
    id: str
    hash: str
    n: int
    m: int
    h: int | None = None
    dim_h: int | None = None
    dim_c: int = 0
    families: dict[str, bool] = field(default_factory=dict)
    k_exact: int | None = None
    k_lower: int | None = None
    k_upper: int | None = None
    method: str | None = None
    status: str = UNKNOWN
    slack: int | None = None
    timings: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    evidence: dict[str, Any] | None = None

    def to_json(self) -> dict[str, Any]:
        return asdict(self)

    def tsv_row(self) -> str:
        return "\t".join("" if getattr(self, f) is None else str(getattr(self, f)) for f in SCALAR_FIELDS)


def graph_hash(g: Graph) -> str:
    """Isomorphism-invariant hash for small graphs, labelled hash otherwise."""
    key = to_graph6(canonical_form(g) if g.n <= 10 else g)
    return hashlib.sha1(key.encode()).hexdigest()[:16]


def conjecture_status(dim_h: int | None, k_exact: int | None, k_upper: int | None, k_lower: int | None) -> str:
    """``holds`` needs a verified k <= dim H + 1; ``violated`` needs a proven k > dim H + 1."""
    if dim_h is None:
        return UNKNOWN
    if k_exact is not None:
        return HOLDS if k_exact <= dim_h + 1 else VIOLATED
    if k_upper is not None and k_upper <= dim_h + 1:
        return HOLDS
    if k_lower is not None and k_lower > dim_h + 1:
        return VIOLATED
    return UNKNOWN


def analyze_graph(
    g: Graph,
    graph_id: str | None = None,
    oracle_limit: int = 9,
    time_budget: float | None = 60.0,
    hole_budget: int = 10**6,
) -> Report:
    """Full report for one graph.  Raises ``ConstructionError`` if any produced
    certificate fails verification (an internal error, never a graph property)."""
    rep = Report(id=graph_id or to_graph6(g), hash=graph_hash(g), n=g.n, m=g.m, dim_c=cycle_space_dimension(g))
    clock = time.perf_counter

    t = clock()
    try:
        hs = holes(g, hole_budget)
    except HoleBudgetExceeded as exc:
        hs = None
        rep.notes.append(str(exc))
    rep.timings["holes"] = clock() - t

    basis = None
    if hs is not None:
        t = clock()
        basis = hole_space_basis(g, hs)
        rep.h = len(hs)
        rep.dim_h = basis.rank
        rep.timings["hole_space"] = clock() - t
        t = clock()
        rep.families = recognize_families(g, hs, triangles(g)).as_dict()
        rep.timings["families"] = clock() - t

    if basis is not None:
        t = clock()
        pipe = upper_bound_pipeline(g, basis)
        rep.timings["certifiers"] = clock() - t
        if pipe.certificate is not None:
            if not verify_certificate(g, pipe.certificate):
                raise ConstructionError(f"{pipe.method} certificate failed verification")
            rep.k_upper, rep.method = pipe.k_upper, pipe.method

    rep.k_lower = competition_number_lower_bound(g)
    if g.n <= oracle_limit or g.m == 0:
        t = clock()
        res = competition_number_exact(g, time_budget=time_budget)
        rep.timings["oracle"] = clock() - t
        rep.k_lower = max(rep.k_lower, res.lower)
        if res.known:
            if not verify_certificate(g, res.certificate):
                raise ConstructionError("oracle certificate failed verification")
            rep.k_exact = res.k
            if rep.k_upper is None or res.k < rep.k_upper:
                rep.k_upper, rep.method = res.k, "oracle"
        else:
            rep.notes.append(f"oracle budget exhausted; k >= {res.lower}")
        trace = res.trace
    else:
        trace = []

    if g.n == 0:
        rep.notes.append("empty graph: k = 0 by convention")
    rep.status = conjecture_status(rep.dim_h, rep.k_exact, rep.k_upper, rep.k_lower)
    if rep.k_exact is not None and rep.dim_h is not None:
        rep.slack = rep.dim_h + 1 - rep.k_exact
    if rep.status == VIOLATED:
        rep.evidence = {
            "edges": [list(e) for e in g.edges],
            "oracle_trace": trace,
            "hole_basis": [vector_string(v, g.m) for v in basis.vectors()],
        }
    return rep


def load_schema() -> dict[str, Any]:
    return json.loads(resources.files("holedim").joinpath("schemas/report.schema.json").read_text())


# -- sweeps ------------------------------------------------------------------------


def _analyze_job(args: tuple[Graph, str, int, float | None]) -> Report:
    g, gid, oracle_limit, budget = args
    try:
        return analyze_graph(g, gid, oracle_limit, budget)
    except ConstructionError as exc:
        rep = Report(id=gid, hash=graph_hash(g), n=g.n, m=g.m, status=ERROR)
        rep.notes.append(f"internal verification failure: {exc}")
        return rep
    except Exception as exc:  # per-graph isolation
        rep = Report(id=gid, hash=graph_hash(g), n=g.n, m=g.m, status=ERROR)
        rep.notes.append(f"{type(exc).__name__}: {exc}")
        return rep


@dataclass
class SweepSummary:
    total: int
    counts: dict[str, int]
    slack_histogram: dict[int, int]
    unknowns: list[str]
    violations: list[dict[str, Any]]
    errors: list[dict[str, Any]]
    seconds: float

    def to_json(self) -> dict[str, Any]:
        out = asdict(self)
        out["slack_histogram"] = {str(k): v for k, v in sorted(self.slack_histogram.items())}
        return out


def sweep(
    graphs: Iterable[tuple[str, Graph]],
    oracle_limit: int = 9,
    time_budget: float | None = 60.0,
    workers: int = 1,
) -> tuple[SweepSummary, list[Report]]:
    """Analyse every graph; reports come back sorted by (hash, id)."""
    start = time.perf_counter()
    jobs = [(g, gid, oracle_limit, time_budget) for gid, g in graphs]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            reports = list(pool.map(_analyze_job, jobs, chunksize=8))
    else:
        reports = [_analyze_job(j) for j in jobs]
    reports.sort(key=lambda r: (r.hash, r.id))
    counts = Counter(r.status for r in reports)
    summary = SweepSummary(
        total=len(reports),
        counts={s: counts.get(s, 0) for s in (HOLDS, VIOLATED, UNKNOWN, ERROR)},
        slack_histogram=dict(Counter(r.slack for r in reports if r.slack is not None)),
        unknowns=[r.id for r in reports if r.status == UNKNOWN],
        violations=[r.to_json() for r in reports if r.status == VIOLATED],
        errors=[{"id": r.id, "notes": r.notes} for r in reports if r.status == ERROR],
        seconds=time.perf_counter() - start,
    )
    return summary, reports


def exit_code(summary: SweepSummary) -> int:
    if summary.counts[ERROR]:
        return 2
    if summary.counts[VIOLATED]:
        return 3
    if summary.counts[UNKNOWN]:
        return 4
    return 0
