"""Triangles, holes (chordless cycles of length >= 4), chordality and the
graph families recognised by :func:`recognize_families`."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph, bits, is_connected, popcount

DEFAULT_HOLE_BUDGET = 10**6


class HoleBudgetExceeded(RuntimeError):
    """Enumeration produced more cycles than the configured budget."""


def canonical_rotation(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotate/reflect a cyclic vertex sequence to start at its minimum vertex,
    followed by the smaller of that vertex's two cycle-neighbours."""
    seq = list(seq)
    i = seq.index(min(seq))
    seq = seq[i:] + seq[:i]
    if len(seq) > 2 and seq[-1] < seq[1]:
        seq = [seq[0]] + seq[:0:-1]
    return tuple(seq)


@dataclass(frozen=True, order=True)
class Cycle:
    """A cycle of a host graph in canonical rotation.  ``edges`` is an edge-id bitmask."""

    vertices: tuple[int, ...]
    edges: int = field(compare=False)

    @classmethod
    def from_vertices(cls, g: Graph, seq: Sequence[int]) -> "Cycle":
        if len(seq) < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        if len(set(seq)) != len(seq):
            raise ValueError(f"repeated vertex in cycle {tuple(seq)}")
        mask = 0
        for a, b in zip(seq, list(seq[1:]) + [seq[0]]):
            if not g.has_edge(a, b):
                raise ValueError(f"({a}, {b}) is not an edge of the graph")
            mask |= 1 << g.edge_id(a, b)
        return cls(canonical_rotation(seq), mask)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def vertex_mask(self) -> int:
        mask = 0
        for v in self.vertices:
            mask |= 1 << v
        return mask

    def chords(self, g: Graph) -> list[tuple[int, int]]:
        """Edges of ``g`` joining two non-consecutive cycle vertices."""
        on = self.vertex_mask
        own = set(g.edges_of(self.edges))
        return [
            (u, v) for u, v in g.edges_of(g.induced_edges(on)) if (u, v) not in own
        ]

    def is_induced(self, g: Graph) -> bool:
        return popcount(g.induced_edges(self.vertex_mask)) == len(self.vertices)


def triangles(g: Graph) -> list[Cycle]:
    out = []
    for u in range(g.n):
        higher = g.adj[u] >> (u + 1) << (u + 1)
        for v in bits(higher):
            for w in bits(g.adj[v] & higher & ~((1 << (v + 1)) - 1)):
                out.append(Cycle.from_vertices(g, (u, v, w)))
    return sorted(out)


def chordless_cycles(
    g: Graph, min_length: int = 3, budget: int = DEFAULT_HOLE_BUDGET
) -> list[Cycle]:
    """All chordless cycles of length ``>= min_length``.

    Each cycle is grown from its minimum vertex ``u`` through its smaller
    neighbour on the cycle; extensions that would create a chord are cut.
    """
    found: list[Cycle] = []
    adj = g.adj
    for u in range(g.n):
        above = g.all_vertices & ~((1 << (u + 1)) - 1)
        for v1 in bits(adj[u] & above):
            # Invariant: path is induced, only its first two vertices touch u,
            # and ``blocked`` is the neighbourhood of the path's interior.
            stack = [([u, v1], (1 << u) | (1 << v1), 0)]
            while stack:
                path, on_path, blocked = stack.pop()
                end = path[-1]
                for x in bits(adj[end] & above & ~on_path & ~blocked):
                    if adj[u] >> x & 1:
                        if x > v1 and len(path) + 1 >= min_length:
                            found.append(Cycle.from_vertices(g, path + [x]))
                            if len(found) > budget:
                                raise HoleBudgetExceeded(
                                    f"more than {budget} chordless cycles"
                                )
                        continue
                    stack.append((path + [x], on_path | (1 << x), blocked | adj[end]))
    return sorted(found)


def holes(g: Graph, budget: int = DEFAULT_HOLE_BUDGET) -> list[Cycle]:
    """The hole set H(G): every induced cycle of length at least 4, canonically sorted."""
    return chordless_cycles(g, min_length=4, budget=budget)


def induced_cycles_through_edge(
    g: Graph, e: int, budget: int = DEFAULT_HOLE_BUDGET
) -> list[Cycle]:
    """All chordless cycles (triangles included) that use edge id ``e``."""
    if not 0 <= e < g.m:
        raise ValueError(f"edge id {e} out of range")
    return [c for c in chordless_cycles(g, 3, budget) if c.edges >> e & 1]


def maximum_cardinality_search(g: Graph) -> list[int]:
    """Visit order of maximum cardinality search, lowest id on ties.

    The reverse of this order is a perfect elimination ordering iff ``g`` is chordal.
    """
    weight = [0] * g.n
    visited = 0
    order = []
    for _ in range(g.n):
        best = -1
        for v in range(g.n):
            if not visited >> v & 1 and (best < 0 or weight[v] > weight[best]):
                best = v
        order.append(best)
        visited |= 1 << best
        for w in bits(g.adj[best] & ~visited):
            weight[w] += 1
    return order


def is_perfect_elimination_ordering(g: Graph, order: Sequence[int]) -> bool:
    later = 0
    for v in reversed(order):
        if not g.is_clique(g.adj[v] & later):
            return False
        later |= 1 << v
    return True


def _find_hole(g: Graph) -> Cycle | None:
    # A hole through v with v-neighbours x, y is v, x, an induced x-y path
    # avoiding the rest of N[v], y.  Shortest paths are induced.
    for v in range(g.n):
        nbrs = list(bits(g.adj[v]))
        for i, x in enumerate(nbrs):
            for y in nbrs[i + 1 :]:
                if g.has_edge(x, y):
                    continue
                allowed = g.all_vertices & ~g.adj[v] & ~(1 << v) | (1 << x) | (1 << y)
                prev = {x: -1}
                queue = deque([x])
                while queue and y not in prev:
                    a = queue.popleft()
                    for b in bits(g.adj[a] & allowed):
                        if b not in prev:
                            prev[b] = a
                            queue.append(b)
                if y in prev:
                    path = [y]
                    while path[-1] != x:
                        path.append(prev[path[-1]])
                    return Cycle.from_vertices(g, [v] + path)
    return None


@dataclass(frozen=True)
class ChordalityResult:
    chordal: bool
    peo: tuple[int, ...] | None = None
    hole: Cycle | None = None

    def __bool__(self) -> bool:
        return self.chordal


def is_chordal(g: Graph) -> ChordalityResult:
    """Chordality test with a witness: a perfect elimination ordering or a hole."""
    peo = tuple(reversed(maximum_cardinality_search(g)))
    if is_perfect_elimination_ordering(g, peo):
        return ChordalityResult(True, peo=peo)
    hole = _find_hole(g)
    assert hole is not None and len(hole) >= 4 and hole.is_induced(g)
    return ChordalityResult(False, hole=hole)


def holes_independent(holeset: Sequence[Cycle]) -> bool:
    """Every hole is independent of every other hole.

    ``C`` is independent when, for each other hole ``C'``, the two share at
    most two vertices and, when they share exactly two, they share exactly one
    edge and ``C`` has length at least 5.
    """
    for c in holeset:
        for d in holeset:
            if c is d:
                continue
            shared = popcount(c.vertex_mask & d.vertex_mask)
            if shared > 2:
                return False
            if shared == 2 and (popcount(c.edges & d.edges) != 1 or len(c) < 5):
                return False
    return True


@dataclass(frozen=True)
class FamilyTags:
    connected: bool
    nontrivial: bool
    chordal: bool
    triangle_free: bool
    one_triangle: bool
    at_most_three_triangles: bool
    two_holes: bool
    independent_holes: bool
    edge_disjoint_holes: bool
    g4: bool
    private_edges: dict[tuple[int, ...], int] | None = None
    n_triangles: int = 0
    n_holes: int = 0

    def as_dict(self) -> dict:
        return {
            "connected": self.connected,
            "nontrivial": self.nontrivial,
            "chordal": self.chordal,
            "triangle_free": self.triangle_free,
            "one_triangle": self.one_triangle,
            "at_most_three_triangles": self.at_most_three_triangles,
            "G1_two_holes": self.two_holes,
            "G2_independent_holes": self.independent_holes,
            "G3_edge_disjoint_holes": self.edge_disjoint_holes,
            "G4": self.g4,
        }


def private_hole_edges(g: Graph, holeset: Sequence[Cycle]) -> dict[tuple[int, ...], int] | None:
    """For each hole, the smallest edge id lying on no other induced cycle.

    Returns ``None`` when some hole has no such edge (the graph is not in G4).
    """
    cycles = chordless_cycles(g, 3)
    usage = [0] * g.m
    for c in cycles:
        for e in bits(c.edges):
            usage[e] += 1
    chosen = {}
    for c in holeset:
        private = [e for e in bits(c.edges) if usage[e] == 1]
        if not private:
            return None
        chosen[c.vertices] = private[0]
    return chosen


def recognize_families(
    g: Graph, holeset: Sequence[Cycle] | None = None, tris: Sequence[Cycle] | None = None
) -> FamilyTags:
    if holeset is None:
        holeset = holes(g)
    if tris is None:
        tris = triangles(g)
    edge_disjoint = all(
        not (a.edges & b.edges) for i, a in enumerate(holeset) for b in holeset[i + 1 :]
    )
    private = private_hole_edges(g, holeset)
    return FamilyTags(
        connected=is_connected(g),
        nontrivial=g.n >= 2 and g.m >= 1,
        chordal=not holeset,
        triangle_free=not tris,
        one_triangle=len(tris) == 1,
        at_most_three_triangles=len(tris) <= 3,
        two_holes=len(holeset) == 2,
        independent_holes=holes_independent(holeset),
        edge_disjoint_holes=edge_disjoint,
        g4=private is not None,
        private_edges=private,
        n_triangles=len(tris),
        n_holes=len(holeset),
    )
