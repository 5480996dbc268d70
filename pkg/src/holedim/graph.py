"""Simple undirected graphs and digraphs with a canonical edge labeling.

Vertices are dense ids ``0..n-1``.  Edges are stored sorted by ``(u, v)``
with ``u < v`` and an edge's id is its position in that list; edge ids are
the coordinates of every GF(2) vector in this package.  Vertex sets and edge
sets are plain ``int`` bitmasks.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator


class GraphFormatError(ValueError):
    """Raised when a graph or digraph text encoding cannot be decoded."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen = set()
        prev = None
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) is not canonical for n={self.n}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            if prev is not None and (u, v) < prev:
                raise ValueError("edge list is not sorted")
            seen.add((u, v))
            prev = (u, v)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from unordered pairs in any order; duplicates are rejected."""
        canon = []
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            canon.append((min(u, v), max(u, v)))
        if len(set(canon)) != len(canon):
            raise ValueError("duplicate edge")
        return cls(n, tuple(sorted(canon)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood bitmask of every vertex."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def incident(self) -> tuple[int, ...]:
        """Bitmask over edge ids of the edges incident to each vertex."""
        inc = [0] * self.n
        for i, (u, v) in enumerate(self.edges):
            inc[u] |= 1 << i
            inc[v] |= 1 << i
        return tuple(inc)

    @property
    def all_vertices(self) -> int:
        return (1 << self.n) - 1

    @property
    def all_edges(self) -> int:
        return (1 << self.m) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and bool(self.adj[u] >> v & 1)

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self.edge_index[(min(u, v), max(u, v))]
        except KeyError:
            raise KeyError(f"({u}, {v}) is not an edge") from None

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def edge_mask(self, pairs: Iterable[tuple[int, int]]) -> int:
        mask = 0
        for u, v in pairs:
            mask |= 1 << self.edge_id(u, v)
        return mask

    def edges_of(self, mask: int) -> list[tuple[int, int]]:
        return [self.edges[i] for i in bits(mask)]

    def induced_edges(self, vertices: int) -> int:
        """Edge-id bitmask of the subgraph induced by a vertex bitmask."""
        mask = 0
        for i, (u, v) in enumerate(self.edges):
            if vertices >> u & 1 and vertices >> v & 1:
                mask |= 1 << i
        return mask

    def is_clique(self, vertices: int) -> bool:
        return all(vertices & ~(1 << v) & ~self.adj[v] == 0 for v in bits(vertices))

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for u, v in self.arcs:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={self.n}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        return cls(n, frozenset((int(u), int(v)) for u, v in arcs))

    @cached_property
    def in_neighbors(self) -> tuple[int, ...]:
        inn = [0] * self.n
        for u, v in self.arcs:
            inn[v] |= 1 << u
        return tuple(inn)

    @cached_property
    def out_neighbors(self) -> tuple[int, ...]:
        out = [0] * self.n
        for u, v in self.arcs:
            out[u] |= 1 << v
        return tuple(out)

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)


class UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; False if they were already merged."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


# -- text formats -----------------------------------------------------------

_HEADER = re.compile(r"^n\s+(\d+)$")
_PAIR = re.compile(r"^(\d+)\s+(\d+)$")


def parse_edge_list(text: str) -> Graph:
    """Parse ``"u v"`` lines with an optional ``"n <count>"`` header.

    ``#`` starts a comment.  Errors name the offending line number.
    """
    n_header = 0
    pairs: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _HEADER.match(line):
            n_header = max(n_header, int(m.group(1)))
            continue
        m = _PAIR.match(line)
        if not m:
            raise GraphFormatError(f"line {lineno}: malformed edge {raw.strip()!r}")
        u, v = int(m.group(1)), int(m.group(2))
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in pairs:
            raise GraphFormatError(
                f"line {lineno}: duplicate edge {key} (first seen on line {pairs[key]})"
            )
        pairs[key] = lineno
    n = max([n_header] + [v + 1 for _, v in pairs])
    return Graph(n, tuple(sorted(pairs)))


def serialize_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def _graph6_size(data: bytes) -> tuple[int, bytes]:
    if not data:
        raise GraphFormatError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, data[1:]
    if len(data) >= 4 and data[1] != 126:
        val = 0
        for c in data[1:4]:
            val = (val << 6) | (c - 63)
        return val, data[4:]
    if len(data) >= 8:
        val = 0
        for c in data[2:8]:
            val = (val << 6) | (c - 63)
        return val, data[8:]
    raise GraphFormatError("truncated graph6 size field")


def parse_graph6(line: str) -> Graph:
    """Decode a single graph6 string (the optional ``>>graph6<<`` header is allowed)."""
    line = line.strip()
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    try:
        data = line.encode("ascii")
    except UnicodeEncodeError:
        raise GraphFormatError(f"non-ascii graph6 string {line!r}") from None
    if any(c < 63 or c > 126 for c in data):
        raise GraphFormatError(f"invalid graph6 character in {line!r}")
    n, payload = _graph6_size(data)
    need = (n * (n - 1) // 2 + 5) // 6
    if len(payload) != need:
        raise GraphFormatError(
            f"graph6 payload has {len(payload)} bytes, expected {need} for n={n}"
        )
    bitstream = []
    for c in payload:
        val = c - 63
        bitstream.extend((val >> (5 - i)) & 1 for i in range(6))
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if bitstream[k]:
                edges.append((u, v))
            k += 1
    return Graph.from_edges(n, edges)


def to_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        head = [n + 63]
    elif n < 258048:
        head = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        head = [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    stream = [1 if g.has_edge(u, v) else 0 for v in range(1, n) for u in range(v)]
    stream += [0] * (-len(stream) % 6)
    body = [
        63 + sum(b << (5 - i) for i, b in enumerate(stream[j : j + 6]))
        for j in range(0, len(stream), 6)
    ]
    return bytes(head + body).decode("ascii")


def parse_digraph(text: str) -> tuple[Digraph, int, int]:
    """Parse an arc list: header ``"base_n k"`` then ``"u v"`` lines meaning u -> v.

    Returns ``(digraph, base_n, k)``; the digraph has ``base_n + k`` vertices.
    """
    header = None
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _PAIR.match(line)
        if not m:
            raise GraphFormatError(f"line {lineno}: malformed line {raw.strip()!r}")
        a, b = int(m.group(1)), int(m.group(2))
        if header is None:
            header = (a, b)
            continue
        if a == b:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {a}")
        arcs.append((a, b))
    if header is None:
        raise GraphFormatError("missing 'base_n k' header")
    base_n, k = header
    total = base_n + k
    for u, v in arcs:
        if u >= total or v >= total:
            raise GraphFormatError(f"arc ({u}, {v}) outside {total} vertices")
    return Digraph.from_arcs(total, arcs), base_n, k


def serialize_digraph(d: Digraph, base_n: int) -> str:
    lines = [f"{base_n} {d.n - base_n}"] + [f"{u} {v}" for u, v in d.sorted_arcs()]
    return "\n".join(lines) + "\n"


# -- structure ----------------------------------------------------------------


def components(g: Graph) -> list[int]:
    """Vertex bitmasks of the connected components, ordered by smallest vertex."""
    seen = 0
    comps = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def bfs_order(g: Graph, source: int = 0) -> list[int]:
    order = [source]
    seen = 1 << source
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in bits(g.adj[v] & ~seen):
            seen |= 1 << w
            order.append(w)
            queue.append(w)
    return order


def is_forest(g: Graph, edge_set: int) -> bool:
    uf = UnionFind(g.n)
    return all(uf.union(*g.edges[i]) for i in bits(edge_set))


def spanning_tree_containing_forest(g: Graph, forest: int = 0) -> int:
    """Extend an acyclic edge set to a spanning tree of a connected graph.

    Forest edges are merged first, then the remaining edges are scanned in
    increasing id order and kept whenever they join two components.
    """
    if not is_connected(g):
        raise ValueError("graph is disconnected")
    if forest >> g.m:
        raise ValueError("edge id out of range")
    uf = UnionFind(g.n)
    tree = 0
    for i in bits(forest):
        if not uf.union(*g.edges[i]):
            raise ValueError(f"forest edge {g.edges[i]} closes a cycle")
        tree |= 1 << i
    for i, (u, v) in enumerate(g.edges):
        if not tree >> i & 1 and uf.union(u, v):
            tree |= 1 << i
    return tree


def delete_edges(g: Graph, edge_set: int) -> tuple[Graph, dict[int, int]]:
    """Remove edges by id.  Returns the new graph and the old->new id map of kept edges."""
    if edge_set >> g.m:
        raise ValueError("edge id out of range")
    kept = [i for i in range(g.m) if not edge_set >> i & 1]
    remap = {old: new for new, old in enumerate(kept)}
    return Graph(g.n, tuple(g.edges[i] for i in kept)), remap


def edge_subgraph(g: Graph, edge_set: int) -> Graph:
    """Spanning subgraph keeping exactly the given edge ids."""
    return delete_edges(g, g.all_edges & ~edge_set)[0]


def add_isolated_vertices(g: Graph, k: int) -> Graph:
    if k < 0:
        raise ValueError("k must be non-negative")
    return Graph(g.n + k, g.edges)


def is_triangle_free(g: Graph) -> bool:
    return all(not (g.adj[u] & g.adj[v]) for u, v in g.edges)
