"""Constructive upper-bound certificates for the competition number.

* :func:`chordal_certificate` -- one added vertex for connected chordal graphs.
* :func:`triangle_free_certificate` -- ``|E| - |V| + 2`` added vertices.
* :func:`newfamily_certificate` -- from a connected, spanning, chordal subgraph
  that keeps every triangle: one added vertex plus one per dropped edge.
* :func:`subgraph_for_three_triangles` and :func:`subgraph_for_g4` build such
  subgraphs for graphs with at most three triangles and for G4 graphs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .competition import Certificate, competition_number_exact, verify_certificate
from .graph import (
    Digraph,
    Graph,
    bfs_order,
    bits,
    edge_subgraph,
    is_connected,
    is_forest,
    is_triangle_free,
    spanning_tree_containing_forest,
)
from .holes import Cycle, is_chordal, recognize_families, triangles
from .holespace import Gf2Basis, hole_space_basis


class CertifierError(ValueError):
    """A certifier's precondition does not hold for the input graph."""


class ConstructionError(AssertionError):
    """A construction produced an object violating a guaranteed property."""


@dataclass(frozen=True)
class SubgraphWitness:
    """A spanning subgraph ``G'`` given by the edge ids it keeps."""

    kept_edges: int
    star_edges: int
    chosen: dict[tuple[int, ...], int] = field(default_factory=dict)

    @classmethod
    def from_kept(cls, g: Graph, kept: int, chosen: dict | None = None) -> "SubgraphWitness":
        return cls(kept, g.all_edges & ~kept, dict(chosen or {}))

    def subgraph(self, g: Graph) -> Graph:
        return edge_subgraph(g, self.kept_edges)

    def to_json(self, g: Graph) -> dict[str, Any]:
        return {
            "kept_edges": [list(e) for e in g.edges_of(self.kept_edges)],
            "star_edges": [list(e) for e in g.edges_of(self.star_edges)],
            "chosen": [
                {"cycle": list(c), "edge": list(g.edges[e])} for c, e in sorted(self.chosen.items())
            ],
        }

    @classmethod
    def from_json(cls, g: Graph, data: dict[str, Any]) -> "SubgraphWitness":
        kept = g.edge_mask(tuple(e) for e in data["kept_edges"])
        if "star_edges" in data:
            star = g.edge_mask(tuple(e) for e in data["star_edges"])
            if star != g.all_edges & ~kept:
                raise CertifierError("star_edges is not the complement of kept_edges")
        chosen = {tuple(c["cycle"]): g.edge_id(*c["edge"]) for c in data.get("chosen", [])}
        return cls.from_kept(g, kept, chosen)


def witness_violations(g: Graph, w: SubgraphWitness, require_chordal: bool = True) -> list[str]:
    """Names of the witness invariants that fail (empty when all hold)."""
    problems = []
    if w.kept_edges | w.star_edges != g.all_edges or w.kept_edges & w.star_edges:
        problems.append("kept and star edges do not partition E(G)")
    sub = w.subgraph(g)
    if not is_connected(sub):
        problems.append("subgraph is not connected")
    for t in triangles(g):
        if t.edges & ~w.kept_edges:
            problems.append(f"triangle {t.vertices} is not kept")
            break
    if require_chordal and not is_chordal(sub):
        problems.append("subgraph is not chordal")
    return problems


def _require_connected_nontrivial(g: Graph) -> None:
    if g.m == 0:
        raise CertifierError("graph has no edges")
    if not is_connected(g):
        raise CertifierError("graph is not connected")


# -- certificates -----------------------------------------------------------------


def chordal_certificate(g: Graph) -> Certificate:
    """One added vertex ``a``: along a perfect elimination ordering v1..vn,
    vertex ``vi`` and its later neighbours all point at ``v(i-1)`` (``v0 = a``)."""
    _require_connected_nontrivial(g)
    res = is_chordal(g)
    if not res:
        raise CertifierError(f"graph is not chordal (hole {list(res.hole.vertices)})")
    peo = res.peo
    a = g.n
    arcs = []
    later = 0
    for i in reversed(range(g.n)):
        v = peo[i]
        prey = peo[i - 1] if i else a
        arcs += [(u, prey) for u in bits((g.adj[v] & later) | (1 << v))]
        later |= 1 << v
    cert = Certificate(Digraph.from_arcs(g.n + 1, arcs), g.n, 1, "chordal", tuple(reversed(peo)) + (a,))
    _check(g, cert)
    return cert


def triangle_free_certificate(g: Graph) -> Certificate:
    """``k = |E| - |V| + 2``: each edge gets its own prey placed after both endpoints.

    Vertices are ordered breadth-first, followed by the added vertices; edges
    are matched to eligible prey positions by maximum bipartite matching.
    """
    _require_connected_nontrivial(g)
    if not is_triangle_free(g):
        raise CertifierError("graph contains a triangle")
    k = g.m - g.n + 2
    order = bfs_order(g, 0) + list(range(g.n, g.n + k))
    pos = {v: i for i, v in enumerate(order)}
    rows, cols = [], []
    for e, (u, v) in enumerate(g.edges):
        for p in range(max(pos[u], pos[v]) + 1, len(order)):
            rows.append(e)
            cols.append(p)
    adj = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(g.m, len(order)))
    match = maximum_bipartite_matching(adj, perm_type="column")
    if (match < 0).any():
        raise ConstructionError("no edge-to-prey matching at k = |E|-|V|+2")
    arcs = []
    for e, p in enumerate(match):
        u, v = g.edges[e]
        arcs += [(u, order[p]), (v, order[p])]
    cert = Certificate(Digraph.from_arcs(g.n + k, arcs), g.n, k, "triangle-free", tuple(order))
    _check(g, cert)
    return cert


def shortest_cycle_through(sub: Graph, u: int, v: int) -> list[int]:
    """Shortest ``u``-``v`` path in ``sub``, lexicographically smallest among shortest."""
    dist = {v: 0}
    queue = deque([v])
    while queue:
        a = queue.popleft()
        for b in bits(sub.adj[a]):
            if b not in dist:
                dist[b] = dist[a] + 1
                queue.append(b)
    if u not in dist:
        raise ConstructionError(f"{u} and {v} are disconnected in the subgraph")
    path = [u]
    while path[-1] != v:
        a = path[-1]
        path.append(min(b for b in bits(sub.adj[a]) if dist.get(b) == dist[a] - 1))
    return path


def newfamily_certificate(
    g: Graph, w: SubgraphWitness, basis: Gf2Basis | None = None, oracle_limit: int = 9
) -> Certificate:
    """Certificate with ``k = |E*| + 1`` from a spanning subgraph ``G'``.

    ``G'`` must be connected, spanning and keep every triangle of ``G``;
    ``k(G') = 1`` is established by chordality or, failing that, by the exact
    oracle when ``G`` has at most ``oracle_limit`` vertices.  Every dropped
    edge ``e = xy`` gets a fresh prey of ``x`` and ``y``.  Also checks that the
    shortest cycles ``C_e`` through the dropped edges are holes of ``G' + e``
    with independent vectors lying in the hole space of ``G``.
    """
    if not is_connected(g):
        raise CertifierError("graph is not connected")
    problems = witness_violations(g, w, require_chordal=False)
    if problems:
        raise CertifierError("invalid witness: " + "; ".join(problems))
    sub = w.subgraph(g)
    if sub.m == 0:
        raise CertifierError("invalid witness: subgraph has no edges")
    if is_chordal(sub):
        base = chordal_certificate(sub)
    elif g.n <= oracle_limit:
        res = competition_number_exact(sub, k_max=1)
        if res.k != 1:
            raise CertifierError("invalid witness: subgraph is not chordal and k(G') != 1")
        base = res.certificate
    else:
        raise CertifierError("invalid witness: subgraph is not chordal")

    if basis is None:
        basis = hole_space_basis(g)
    star = list(bits(w.star_edges))
    c_vectors = Gf2Basis(g.m)
    for e in star:
        x, y = g.edges[e]
        path = shortest_cycle_through(sub, x, y)
        plus = Graph.from_edges(g.n, list(sub.edges) + [(x, y)])
        c_e = Cycle.from_vertices(plus, path)
        if len(c_e) < 4 or not c_e.is_induced(plus):
            raise ConstructionError(f"shortest cycle through {g.edges[e]} is not a hole of G'+e")
        vec = Cycle.from_vertices(g, path).edges
        if vec not in basis:
            raise ConstructionError(f"cycle through {g.edges[e]} is outside the hole space")
        c_vectors.insert(vec)
    if c_vectors.rank != len(star):
        raise ConstructionError("cycle vectors of the dropped edges are dependent")

    k = len(star) + 1
    arcs = set(base.digraph.arcs)
    for idx, e in enumerate(star):
        prey = g.n + 1 + idx
        x, y = g.edges[e]
        arcs |= {(x, prey), (y, prey)}
    cert = Certificate(Digraph.from_arcs(g.n + k, arcs), g.n, k, "newfamily")
    _check(g, cert)
    if k > basis.rank + 1:
        raise ConstructionError(f"k = {k} exceeds dim H + 1 = {basis.rank + 1}")
    return cert


# -- witnesses ----------------------------------------------------------------------


def subgraph_for_three_triangles(g: Graph) -> SubgraphWitness:
    """Chordal spanning subgraph for a connected graph with at most three triangles.

    Each triangle ``T`` keeps a private edge ``e_T`` (smallest id in no other
    triangle).  The remaining triangle edges form a forest, which is extended
    to a spanning tree; adding back every ``e_T`` gives ``G'``.
    """
    if not is_connected(g):
        raise CertifierError("graph is not connected")
    tris = triangles(g)
    if len(tris) > 3:
        raise CertifierError(f"graph has {len(tris)} triangles (more than 3)")
    triangle_edges = 0
    for t in tris:
        triangle_edges |= t.edges
    chosen = {}
    for t in tris:
        others = 0
        for s in tris:
            if s is not t:
                others |= s.edges
        private = t.edges & ~others
        if not private:
            raise ConstructionError(f"triangle {t.vertices} has no private edge")
        chosen[t.vertices] = (private & -private).bit_length() - 1
    picked = 0
    for e in chosen.values():
        picked |= 1 << e
    forest = triangle_edges & ~picked
    if not is_forest(g, forest):
        raise ConstructionError("triangle edges minus private edges contain a cycle")
    tree = spanning_tree_containing_forest(g, forest)
    w = SubgraphWitness.from_kept(g, tree | picked, chosen)
    problems = witness_violations(g, w)
    if problems:
        raise ConstructionError("; ".join(problems))
    return w


def subgraph_for_g4(g: Graph) -> SubgraphWitness:
    """``G'`` = ``G`` minus one private edge per hole (an edge on no other induced cycle)."""
    if not is_connected(g):
        raise CertifierError("graph is not connected")
    tags = recognize_families(g)
    if not tags.g4:
        raise CertifierError("graph is not in G4")
    dropped = 0
    for e in tags.private_edges.values():
        dropped |= 1 << e
    w = SubgraphWitness.from_kept(g, g.all_edges & ~dropped, tags.private_edges)
    problems = witness_violations(g, w)
    if problems:
        raise ConstructionError("; ".join(problems))
    return w


def _check(g: Graph, cert: Certificate) -> None:
    res = verify_certificate(g, cert)
    if not res:
        raise ConstructionError(f"{cert.method} certificate failed verification: {res.reason}")


# -- dispatch -------------------------------------------------------------------------


@dataclass
class PipelineResult:
    k_upper: int | None
    certificate: Certificate | None
    method: str | None
    within_bound: bool | None
    attempts: dict[str, str] = field(default_factory=dict)


# ties go to the earlier method
PIPELINE_ORDER = ("chordal", "triangle-free", "three-triangles", "g4")


def upper_bound_pipeline(g: Graph, basis: Gf2Basis | None = None) -> PipelineResult:
    """Try every applicable certifier and keep the smallest verified ``k``."""
    if g.m == 0 or not is_connected(g):
        return PipelineResult(None, None, None, None, {"all": "requires a connected graph with edges"})
    if basis is None:
        basis = hole_space_basis(g)
    builders = {
        "chordal": lambda: chordal_certificate(g),
        "triangle-free": lambda: triangle_free_certificate(g),
        "three-triangles": lambda: newfamily_certificate(g, subgraph_for_three_triangles(g), basis),
        "g4": lambda: newfamily_certificate(g, subgraph_for_g4(g), basis),
    }
    best: tuple[Certificate, str] | None = None
    attempts = {}
    for name in PIPELINE_ORDER:
        try:
            cert = builders[name]()
        except CertifierError as exc:
            attempts[name] = f"not applicable: {exc}"
            continue
        attempts[name] = f"k={cert.k}"
        if best is None or cert.k < best[0].k:
            best = (cert, name)
    if best is None:
        return PipelineResult(None, None, None, None, attempts)
    cert, name = best
    if name != cert.method:
        cert = Certificate(cert.digraph, cert.base_n, cert.k, name, cert.order)
    return PipelineResult(cert.k, cert, name, cert.k <= basis.rank + 1, attempts)
