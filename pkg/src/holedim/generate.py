"""Graph sources for sweeps: named families, exhaustive small-graph
enumeration up to isomorphism, and seeded random graphs."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Callable, Iterator

from .graph import Graph, bits, is_connected, is_triangle_free, popcount


# -- named graphs ----------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete_multipartite(*sizes: int) -> Graph:
    part = [p for p, s in enumerate(sizes) for _ in range(s)]
    n = len(part)
    return Graph.from_edges(n, ((a, b) for a, b in itertools.combinations(range(n), 2) if part[a] != part[b]))


def complete_bipartite(a: int, b: int) -> Graph:
    return complete_multipartite(a, b)


def empty_graph(n: int) -> Graph:
    return Graph(n, ())


# -- canonical form --------------------------------------------------------------


def _refine(g: Graph, cells: list[int]) -> list[int]:
    """Equitable refinement of an ordered partition (cells are vertex bitmasks).

    Splitting is by neighbour counts into earlier cells, so the result depends
    only on the graph structure and the input partition, not on vertex labels.
    """
    while True:
        new = []
        for cell in cells:
            if popcount(cell) == 1:
                new.append(cell)
                continue
            groups: dict[tuple[int, ...], int] = {}
            for v in bits(cell):
                sig = tuple(popcount(g.adj[v] & c) for c in cells)
                groups[sig] = groups.get(sig, 0) | (1 << v)
            new.extend(groups[s] for s in sorted(groups))
        if len(new) == len(cells):
            return new
        cells = new


def _code(g: Graph, order: list[int]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(order)}
    return tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in g.edges))


def canonical_form(g: Graph) -> Graph:
    """Canonical relabelling: the smallest edge code over the leaves of an
    individualisation-refinement search tree."""
    best: tuple | None = None

    def search(cells: list[int]) -> None:
        nonlocal best
        cells = _refine(g, cells)
        if all(popcount(c) == 1 for c in cells):
            code = _code(g, [c.bit_length() - 1 for c in cells])
            if best is None or code < best:
                best = code
            return
        i = next(i for i, c in enumerate(cells) if popcount(c) > 1)
        for v in bits(cells[i]):
            search(cells[:i] + [1 << v, cells[i] & ~(1 << v)] + cells[i + 1 :])

    search([g.all_vertices] if g.n else [])
    return Graph(g.n, tuple(best or ()))


def canonical_key(g: Graph) -> tuple[int, tuple]:
    c = canonical_form(g)
    return (c.n, c.edges)


# -- exhaustive enumeration ----------------------------------------------------------


@lru_cache(maxsize=None)
def _all_graphs(n: int, hereditary: Callable[[Graph], bool] | None) -> tuple[Graph, ...]:
    """All graphs on n vertices up to isomorphism that satisfy a hereditary predicate.

    Every such graph arises by adding one vertex to such a graph on n-1 vertices.
    """
    if n == 0:
        return (Graph(0, ()),)
    seen = {}
    for base in _all_graphs(n - 1, hereditary):
        for nbrs in range(1 << (n - 1)):
            g = Graph.from_edges(n, base.edges + tuple((u, n - 1) for u in bits(nbrs)))
            if hereditary is not None and not hereditary(g):
                continue
            key = canonical_key(g)
            if key not in seen:
                seen[key] = Graph(*key)
    return tuple(seen[k] for k in sorted(seen))


def all_graphs(n: int, triangle_free: bool = False) -> list[Graph]:
    return list(_all_graphs(n, is_triangle_free if triangle_free else None))


def connected_graphs(n: int, triangle_free: bool = False) -> list[Graph]:
    return [g for g in all_graphs(n, triangle_free) if is_connected(g)]


def exhaustive(max_n: int, min_n: int = 1, connected: bool = True, triangle_free: bool = False) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        if connected:
            yield from connected_graphs(n, triangle_free)
        else:
            yield from all_graphs(n, triangle_free)


# -- random --------------------------------------------------------------------------


def random_graphs(n: int, p: float, count: int, seed: int) -> Iterator[Graph]:
    """``count`` independent G(n, p) samples from a seeded generator."""
    rng = random.Random(seed)
    pairs = list(itertools.combinations(range(n), 2))
    for _ in range(count):
        yield Graph(n, tuple(e for e in pairs if rng.random() < p))
