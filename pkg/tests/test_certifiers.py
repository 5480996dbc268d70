import json

import pytest
from hypothesis import given, settings

from holedim.certifiers import (
    CertifierError,
    SubgraphWitness,
    chordal_certificate,
    newfamily_certificate,
    subgraph_for_g4,
    subgraph_for_three_triangles,
    triangle_free_certificate,
    upper_bound_pipeline,
    witness_violations,
)
from holedim.competition import competition_number_exact, verify_certificate
from holedim.generate import (
    complete_bipartite,
    complete_graph,
    connected_graphs as all_connected,
    cycle_graph,
    path_graph,
)
from holedim.graph import Graph, is_triangle_free, parse_edge_list, spanning_tree_containing_forest
from holedim.holes import is_chordal, recognize_families, triangles
from holedim.holespace import hole_space_dimension

from conftest import connected_graphs

# a rectangle whose middle vertical edge is subdivided: outer 6-cycle 0-1-2-3-4-5,
# rungs 1-6 and 6-4
SUBDIVIDED_DOMINO = parse_edge_list("0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n1 6\n4 6")
TWO_SQUARES_AND_PATH = parse_edge_list("0 1\n1 2\n2 3\n0 3\n4 5\n5 6\n6 7\n4 7\n2 8\n8 4")
BOWTIE_WITH_SQUARE = parse_edge_list("0 1\n0 2\n1 2\n0 3\n0 4\n3 4\n4 5\n5 6\n6 7\n4 7")
SQUARE_WITH_TRIANGLE = parse_edge_list("0 1\n1 2\n2 3\n0 3\n0 4\n0 5\n4 5")


def check(g, cert, k=None):
    assert verify_certificate(g, cert)
    assert cert.k <= hole_space_dimension(g) + 1
    if k is not None:
        assert cert.k == k


@pytest.mark.parametrize("g", [complete_graph(3), path_graph(3), complete_graph(5), path_graph(1 + 1)])
def test_chordal_certificate(g):
    check(g, chordal_certificate(g), 1)


def test_chordal_certificate_trees_agree_with_oracle():
    for n in range(2, 9):
        for g in all_connected(n, triangle_free=True):
            if g.m == n - 1:
                cert = chordal_certificate(g)
                check(g, cert, 1)
                assert competition_number_exact(g).k == 1


def test_chordal_certificate_errors():
    with pytest.raises(CertifierError, match="not chordal"):
        chordal_certificate(cycle_graph(4))
    with pytest.raises(CertifierError, match="not connected"):
        chordal_certificate(parse_edge_list("0 1\n2 3"))
    with pytest.raises(CertifierError, match="no edges"):
        chordal_certificate(Graph(1, ()))


@pytest.mark.parametrize(
    "g, k", [(cycle_graph(4), 2), (complete_bipartite(2, 3), 3), (complete_bipartite(3, 3), 5)]
)
def test_triangle_free_certificate(g, k):
    check(g, triangle_free_certificate(g), k)


def test_triangle_free_errors():
    with pytest.raises(CertifierError, match="triangle"):
        triangle_free_certificate(complete_graph(3))


@given(connected_graphs(min_n=2, max_n=9))
@settings(max_examples=80, deadline=None)
def test_triangle_free_certificate_is_tight(g):
    if not is_triangle_free(g):
        return
    cert = triangle_free_certificate(g)
    assert cert.k == hole_space_dimension(g) + 1
    check(g, cert)


def test_newfamily_spanning_tree_matches_triangle_free():
    g = complete_bipartite(3, 3)
    w = SubgraphWitness.from_kept(g, spanning_tree_containing_forest(g, 0))
    cert = newfamily_certificate(g, w)
    check(g, cert, g.m - g.n + 2)


def test_newfamily_square_with_triangle():
    g = SQUARE_WITH_TRIANGLE
    w = SubgraphWitness.from_kept(g, g.all_edges & ~(1 << g.edge_id(2, 3)))
    check(g, newfamily_certificate(g, w), 2)


def test_newfamily_chordal_degenerate():
    g = complete_graph(4)
    w = SubgraphWitness.from_kept(g, g.all_edges)
    assert w.star_edges == 0
    check(g, newfamily_certificate(g, w), 1)


def test_newfamily_rejects_bad_witness():
    g = SQUARE_WITH_TRIANGLE
    drop_triangle_edge = SubgraphWitness.from_kept(g, g.all_edges & ~(1 << g.edge_id(4, 5)))
    with pytest.raises(CertifierError, match="triangle"):
        newfamily_certificate(g, drop_triangle_edge)
    disconnect = SubgraphWitness.from_kept(g, g.all_edges & ~(1 << g.edge_id(0, 1)) & ~(1 << g.edge_id(1, 2)))
    with pytest.raises(CertifierError, match="connected"):
        newfamily_certificate(g, disconnect)


def test_newfamily_accepts_oracle_certified_subgraph(fig1):
    # fig1 has holes but k = 1, so it serves as its own G'
    w = SubgraphWitness.from_kept(fig1, fig1.all_edges)
    check(fig1, newfamily_certificate(fig1, w), 1)


def test_newfamily_rejects_subgraph_with_larger_k():
    # G' = C4 plus a pendant edge is not chordal and k(G') = 2
    g = parse_edge_list("0 1\n1 2\n2 3\n0 3\n3 4\n0 2")
    w = SubgraphWitness.from_kept(g, g.all_edges & ~(1 << g.edge_id(0, 2)))
    with pytest.raises(CertifierError):
        newfamily_certificate(g, w)


def test_witness_json_round_trip():
    g = BOWTIE_WITH_SQUARE
    w = subgraph_for_three_triangles(g)
    again = SubgraphWitness.from_json(g, json.loads(json.dumps(w.to_json(g))))
    assert again.kept_edges == w.kept_edges and again.chosen == w.chosen


def test_three_triangles_triangle_free():
    g = SUBDIVIDED_DOMINO
    w = subgraph_for_three_triangles(g)
    assert bin(w.kept_edges).count("1") == g.n - 1
    check(g, newfamily_certificate(g, w), g.m - g.n + 2)


def test_three_triangles_pendant():
    g = parse_edge_list("0 1\n0 2\n1 2\n2 3")
    w = subgraph_for_three_triangles(g)
    assert w.kept_edges == g.all_edges and w.star_edges == 0


def test_three_triangles_bowtie_with_square():
    g = BOWTIE_WITH_SQUARE
    w = subgraph_for_three_triangles(g)
    assert witness_violations(g, w) == []
    assert len(w.chosen) == 2
    cert = newfamily_certificate(g, w)
    check(g, cert, 2)
    assert competition_number_exact(g).k <= cert.k


def test_three_triangles_errors():
    with pytest.raises(CertifierError, match="4 triangles"):
        subgraph_for_three_triangles(complete_graph(4))


def test_g4_c5():
    g = cycle_graph(5)
    w = subgraph_for_g4(g)
    assert w.star_edges == 1 << 0
    assert w.subgraph(g) == Graph(5, ((0, 4), (1, 2), (2, 3), (3, 4)))
    check(g, newfamily_certificate(g, w), 2)


def test_g4_two_squares_and_path():
    g = TWO_SQUARES_AND_PATH
    w = subgraph_for_g4(g)
    assert witness_violations(g, w) == []
    cert = newfamily_certificate(g, w)
    check(g, cert, 3)
    assert competition_number_exact(g).k == 3


def test_g4_rejects_fig1(fig1):
    with pytest.raises(CertifierError, match="not in G4"):
        subgraph_for_g4(fig1)


def test_subdivided_domino_outside_g4_but_certified():
    g = SUBDIVIDED_DOMINO
    assert not recognize_families(g).g4
    res = upper_bound_pipeline(g)
    assert res.k_upper == hole_space_dimension(g) + 1 == 3
    assert competition_number_exact(g).k == 3


@pytest.mark.parametrize(
    "g, method, k",
    [(cycle_graph(6), "triangle-free", 2), (complete_graph(4), "chordal", 1), (SQUARE_WITH_TRIANGLE, "three-triangles", 2)],
)
def test_pipeline(g, method, k):
    res = upper_bound_pipeline(g)
    assert (res.method, res.k_upper, res.within_bound) == (method, k, True)
    assert res.certificate.method == method
    check(g, res.certificate, k)


def test_pipeline_fig1_has_no_method(fig1):
    res = upper_bound_pipeline(fig1)
    assert res.certificate is None and res.method is None
    assert competition_number_exact(fig1).k == 1


@given(connected_graphs(min_n=2, max_n=8))
@settings(max_examples=100, deadline=None)
def test_pipeline_certificates_sound(g):
    res = upper_bound_pipeline(g)
    if res.certificate is None:
        assert len(triangles(g)) > 3 and not recognize_families(g).g4
        return
    check(g, res.certificate)
    assert res.k_upper >= competition_number_exact(g).k
