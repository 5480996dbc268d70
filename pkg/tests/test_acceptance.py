"""Acceptance criteria, one test each.  Every test prints a PASS/FAIL line
and the terminal summary repeats them together."""

import random
import time
from contextlib import contextmanager

import pytest

import conftest
from conftest import CRITERIA, FIG1_EDGE_ORDER, load, figure_vector, v
from holedim.certifiers import (
    CertifierError,
    chordal_certificate,
    newfamily_certificate,
    subgraph_for_g4,
    subgraph_for_three_triangles,
    triangle_free_certificate,
    upper_bound_pipeline,
    witness_violations,
)
from holedim.competition import (
    competition_graph,
    competition_number_direct_bruteforce,
    competition_number_exact,
    is_acyclic,
    verify_certificate,
)
from holedim.generate import (
    all_graphs,
    complete_bipartite,
    complete_multipartite,
    connected_graphs,
    exhaustive,
    random_graphs,
)
from holedim.graph import add_isolated_vertices, parse_digraph
from holedim.holes import Cycle, holes, is_chordal, recognize_families, triangles
from holedim.holespace import chi, decompose_cycle, hole_space_basis, hole_space_dimension
from holedim.report import HOLDS, UNKNOWN, VIOLATED, sweep

from test_holespace import random_cycle


@contextmanager
def criterion(num: int, title: str):
    try:
        yield
    except BaseException:
        CRITERIA[num] = ("FAIL", title)
        print(f"[FAIL] criterion {num}: {title}")
        raise
    CRITERIA[num] = ("PASS", title)
    print(f"[PASS] criterion {num}: {title}")


def test_01_worked_example():
    with criterion(1, "worked example: h=3, dim H=2, chi vectors, fig2 digraph, k=1, under 1 s"):
        start = time.perf_counter()
        g = load("fig1.edges")
        hs = holes(g)
        assert len(hs) == 3
        assert hole_space_dimension(g) == 2
        c1, c2, c3 = ([v(i) for i in c] for c in ([5, 6, 7, 9], [5, 9, 7, 8], [5, 6, 7, 8]))
        x1, x2, x3 = chi(g, c1), chi(g, c2), chi(g, c3)
        assert figure_vector(g, x1) == (1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0)
        assert figure_vector(g, x2) == (0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0)
        assert figure_vector(g, x3) == (1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0)
        assert x1 == x2 ^ x3
        assert {h.edges for h in hs} == {x1, x2, x3}
        assert len(FIG1_EDGE_ORDER) == g.m == 14

        d, base_n, k = parse_digraph(conftest.fixture_path("fig2.digraph").read_text())
        assert (base_n, k) == (9, 1)
        assert is_acyclic(d)
        assert competition_graph(d) == add_isolated_vertices(g, 1)
        res = competition_number_exact(g)
        assert res.k == 1 and verify_certificate(g, res.certificate)
        assert time.perf_counter() - start < 1.0


def test_02_triangle_free_equality():
    with criterion(2, "triangle-free, 2 <= n <= 8: oracle k = |E|-|V|+2 = dim H + 1, certificate verifies"):
        count = 0
        for g in exhaustive(8, min_n=2, triangle_free=True):
            want = g.m - g.n + 2
            assert hole_space_dimension(g) + 1 == want, g
            assert competition_number_exact(g, time_budget=None).k == want, g
            cert = triangle_free_certificate(g)
            assert cert.k == want and verify_certificate(g, cert), g
            count += 1
        assert count == 1 + 1 + 3 + 6 + 19 + 59 + 267


def test_03_complete_bipartite():
    with criterion(3, "K_{n,n}: 1, 9, 36 holes; dim H(K33)=4; K33 certificate at k=5"):
        for n, want in ((2, 1), (3, 9), (4, 36)):
            assert len(holes(complete_bipartite(n, n))) == want == n * n * (n - 1) ** 2 // 4
        k33 = complete_bipartite(3, 3)
        assert hole_space_dimension(k33) == 4
        cert = triangle_free_certificate(k33)
        assert cert.k == 5 == 3 * 3 - 2 * 3 + 2
        assert verify_certificate(k33, cert)


def test_04_one_triangle_formula():
    with criterion(4, "one triangle, n <= 7: k = |E|-|V| with holes, |E|-|V|+1 without"):
        seen = 0
        for g in exhaustive(7):
            if len(triangles(g)) != 1:
                continue
            want = g.m - g.n if holes(g) else g.m - g.n + 1
            assert competition_number_exact(g, time_budget=None).k == want, g
            seen += 1
        assert seen == 90


def test_05_octahedron():
    with criterion(5, "octahedron K_{2,2,2}: k=2, h=3, dim H=3"):
        g = complete_multipartite(2, 2, 2)
        assert len(holes(g)) == 3 and hole_space_dimension(g) == 3
        res = competition_number_exact(g)
        assert res.k == 2 and verify_certificate(g, res.certificate)
        g4 = complete_multipartite(2, 2, 2, 2)
        assert len(holes(g4)) == 6 and hole_space_dimension(g4) == 6
        res4 = competition_number_exact(g4, time_budget=60.0)
        if res4.known:
            assert verify_certificate(g4, res4.certificate) and res4.k <= 7


def test_06_cycle_decomposition():
    with criterion(6, "1000 random cycles: chordless pieces inside V(C) that XOR to chi_C"):
        rng = random.Random(20240601)
        done = 0
        while done < 1000:
            n = rng.randint(3, 10)
            g = next(random_graphs(n, rng.uniform(0.2, 0.9), 1, rng.randrange(1 << 30)))
            seq = random_cycle(g, rng) if g.m else None
            if seq is None:
                continue
            c = Cycle.from_vertices(g, seq)
            acc = 0
            for p in decompose_cycle(g, c):
                assert p.is_induced(g), (g, seq)
                assert p.vertex_mask & ~c.vertex_mask == 0, (g, seq)
                acc ^= p.edges
            assert acc == c.edges, (g, seq)
            done += 1


def test_07_certificate_soundness():
    with criterion(7, "every emitted certificate verifies and has k <= dim H + 1"):
        before = len(conftest.AUDIT)
        emitted = 0
        for g in exhaustive(6, min_n=2):
            basis = hole_space_basis(g)
            builders = [
                lambda: chordal_certificate(g),
                lambda: triangle_free_certificate(g),
                lambda: newfamily_certificate(g, subgraph_for_three_triangles(g), basis),
                lambda: newfamily_certificate(g, subgraph_for_g4(g), basis),
                lambda: upper_bound_pipeline(g, basis).certificate,
                lambda: competition_number_exact(g).certificate,
            ]
            for build in builders:
                try:
                    cert = build()
                except CertifierError:
                    continue
                if cert is None:
                    continue
                # the audit hook has already checked it; repeat explicitly
                assert verify_certificate(g, cert), g
                assert cert.k <= basis.rank + 1, g
                emitted += 1
        assert emitted > 400
        assert len(conftest.AUDIT) - before >= emitted


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_08_oracle_matches_bruteforce(n):
    with criterion(8, "exact oracle equals brute force on all graphs with n <= 4"):
        for g in all_graphs(n):
            assert competition_number_exact(g).k == competition_number_direct_bruteforce(g), g


def test_09_conjecture_sweep():
    with criterion(9, "sweep: n <= 6 zero violations and unknowns; n = 7 zero violations"):
        corpus = [(f"n{g.n}:{i}", g) for i, g in enumerate(exhaustive(6))]
        assert len(corpus) == 143
        summary, reports = sweep(corpus)
        assert summary.counts[VIOLATED] == 0, summary.violations
        assert summary.counts[UNKNOWN] == 0, summary.unknowns
        assert summary.counts[HOLDS] == 143

        seven = [(f"n7:{i}", g) for i, g in enumerate(connected_graphs(7))]
        assert len(seven) == 853
        summary7, _ = sweep(seven, time_budget=60.0)
        assert summary7.counts[VIOLATED] == 0, summary7.violations
        assert summary7.counts["error"] == 0, summary7.errors
        print(f"n=7: {summary7.counts[HOLDS]} hold, {summary7.counts[UNKNOWN]} unknown")


def test_10_lemma_constructions():
    with criterion(10, "lemma witnesses valid on n <= 6; dropped-edge cycle vectors independent"):
        runs = {"three-triangles": 0, "g4": 0}
        for g in exhaustive(6, min_n=2):
            tags = recognize_families(g)
            basis = hole_space_basis(g)
            for name, applies, build in (
                ("three-triangles", tags.at_most_three_triangles, subgraph_for_three_triangles),
                ("g4", tags.g4, subgraph_for_g4),
            ):
                if not applies:
                    with pytest.raises(CertifierError):
                        build(g)
                    continue
                w = build(g)
                assert witness_violations(g, w) == [], g
                sub = w.subgraph(g)
                assert is_chordal(sub) and sub.n == g.n
                # raises ConstructionError if the rank assertion fails
                cert = newfamily_certificate(g, w, basis)
                assert cert.k == bin(w.star_edges).count("1") + 1
                runs[name] += 1
        assert runs["three-triangles"] > 50 and runs["g4"] > 50, runs
