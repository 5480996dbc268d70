"""Hole-space dimension and competition numbers of small graphs."""

from .certifiers import (
    SubgraphWitness,
    chordal_certificate,
    newfamily_certificate,
    subgraph_for_g4,
    subgraph_for_three_triangles,
    triangle_free_certificate,
    upper_bound_pipeline,
)
from .competition import (
    Certificate,
    competition_graph,
    competition_number_direct_bruteforce,
    competition_number_exact,
    is_acyclic,
    verify_certificate,
)
from .graph import (
    Digraph,
    Graph,
    add_isolated_vertices,
    delete_edges,
    is_connected,
    parse_edge_list,
    parse_graph6,
    spanning_tree_containing_forest,
)
from .holes import Cycle, holes, induced_cycles_through_edge, is_chordal, recognize_families, triangles
from .holespace import (
    Gf2Basis,
    chi,
    cycle_space_dimension,
    decompose_cycle,
    hole_space_dimension,
    in_span,
)

__version__ = "0.1.0"
