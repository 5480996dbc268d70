import itertools
from pathlib import Path

import pytest
from hypothesis import strategies as st

from holedim.graph import Graph, parse_edge_list

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "holedim" / "fixtures"

# Edge order e1..e14 used for the worked example, with v1..v9 -> 0..8.
FIG1_EDGE_ORDER = [
    (4, 5), (5, 6), (6, 8), (4, 8), (6, 7), (4, 7), (0, 4),
    (0, 5), (1, 5), (1, 6), (2, 6), (2, 7), (3, 7), (3, 4),
]


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load(name: str) -> Graph:
    return parse_edge_list(fixture_path(name).read_text())


def v(i: int) -> int:
    """Vertex id of v_i in the worked example."""
    return i - 1


def figure_vector(g: Graph, mask: int) -> tuple[int, ...]:
    return tuple(mask >> g.edge_id(a, b) & 1 for a, b in FIG1_EDGE_ORDER)


@pytest.fixture
def fig1() -> Graph:
    return load("fig1.edges")


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, tuple(p for p, keep in zip(pairs, chosen) if keep))


@st.composite
def connected_graphs(draw, min_n: int = 1, max_n: int = 8) -> Graph:
    """A random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for child in range(1, n):
        parent = draw(st.integers(0, child - 1))
        edges.add((parent, child))
    for p in itertools.combinations(range(n), 2):
        if p not in edges and draw(st.booleans()):
            edges.add(p)
    perm = draw(st.permutations(list(range(n))))
    return Graph.from_edges(n, edges).relabel(list(perm))


# -- certificate audit -------------------------------------------------------------
#
# Every certificate produced through a public emitter anywhere in the suite is
# verified against its graph and checked against dim H + 1 as it is produced.

import functools
import sys

import holedim.certifiers
import holedim.competition
from holedim.holespace import hole_space_dimension

AUDIT: list[tuple[str, int, int, int]] = []  # (method, n, k, dim H)


class AuditFailure(AssertionError):
    pass


def audit_certificate(g: Graph, cert) -> None:
    res = holedim.competition.verify_certificate(g, cert)
    if not res:
        raise AuditFailure(f"{cert.method} certificate does not verify: {res.reason}")
    dim_h = hole_space_dimension(g)
    if cert.k > dim_h + 1:
        raise AuditFailure(f"{cert.method} certificate has k={cert.k} > dim H + 1 = {dim_h + 1}")
    AUDIT.append((cert.method, g.n, cert.k, dim_h))


def _audited(fn, unwrap):
    @functools.wraps(fn)
    def wrapper(g, *args, **kwargs):
        out = fn(g, *args, **kwargs)
        cert = unwrap(out)
        if cert is not None:
            audit_certificate(g, cert)
        return out

    wrapper.__wrapped_emitter__ = True
    return wrapper


def _install_audit() -> None:
    originals = {
        "chordal_certificate": (holedim.certifiers.chordal_certificate, lambda c: c),
        "triangle_free_certificate": (holedim.certifiers.triangle_free_certificate, lambda c: c),
        "newfamily_certificate": (holedim.certifiers.newfamily_certificate, lambda c: c),
        "competition_number_exact": (holedim.competition.competition_number_exact, lambda r: r.certificate),
        "upper_bound_pipeline": (holedim.certifiers.upper_bound_pipeline, lambda r: r.certificate),
    }
    if getattr(originals["chordal_certificate"][0], "__wrapped_emitter__", False):
        return
    wrapped = {name: (fn, _audited(fn, unwrap)) for name, (fn, unwrap) in originals.items()}
    for mod_name, mod in list(sys.modules.items()):
        if mod_name == "holedim" or mod_name.startswith("holedim."):
            for name, (fn, w) in wrapped.items():
                if getattr(mod, name, None) is fn:
                    setattr(mod, name, w)


_install_audit()


# -- acceptance report -------------------------------------------------------------

CRITERIA: dict[int, tuple[str, str]] = {}  # number -> (PASS/FAIL, title)


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for num in sorted(CRITERIA):
            verdict, title = CRITERIA[num]
            terminalreporter.write_line(f"[{verdict}] {num:2d}. {title}")
    if AUDIT:
        methods = sorted({m for m, *_ in AUDIT})
        terminalreporter.write_line(
            f"certificate audit: {len(AUDIT)} certificates verified, all with k <= dim H + 1 "
            f"(methods: {', '.join(methods)})"
        )
