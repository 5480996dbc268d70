"""GF(2) edge-space linear algebra: characteristic vectors, cycle-space and
hole-space dimensions, span membership and chordless cycle decomposition.

Vectors are ``int`` bitmasks; bit ``i`` is the coordinate of edge id ``i``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .graph import Graph, bits, components
from .holes import DEFAULT_HOLE_BUDGET, Cycle, holes


class Gf2Basis:
    """Row-echelon basis keyed by each row's highest set bit."""

    def __init__(self, length: int, rows: Iterable[int] = ()) -> None:
        self.length = length
        self.rows: dict[int, int] = {}
        for r in rows:
            self.insert(r)

    def _check(self, v: int) -> None:
        if v < 0 or v >> self.length:
            raise ValueError(f"vector has bits beyond length {self.length}")

    def reduce(self, v: int) -> int:
        self._check(v)
        while v:
            top = v.bit_length() - 1
            row = self.rows.get(top)
            if row is None:
                return v
            v ^= row
        return 0

    def insert(self, v: int) -> bool:
        """Add ``v`` to the span; True if it was independent of the current rows."""
        r = self.reduce(v)
        if not r:
            return False
        self.rows[r.bit_length() - 1] = r
        return True

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def vectors(self) -> list[int]:
        return [self.rows[k] for k in sorted(self.rows)]


def gf2_rank(vectors: Iterable[int], length: int) -> int:
    return Gf2Basis(length, vectors).rank


def in_span(basis: Gf2Basis, v: int) -> bool:
    return v in basis


def chi(g: Graph, cycle: Cycle | Sequence[int]) -> int:
    """Characteristic vector of a cycle's edge set."""
    if not isinstance(cycle, Cycle):
        cycle = Cycle.from_vertices(g, cycle)
    return cycle.edges


def vector_string(v: int, length: int) -> str:
    """0/1 string in edge-id order (coordinate 0 first)."""
    return "".join("1" if v >> i & 1 else "0" for i in range(length))


def parse_vector_string(s: str) -> int:
    return sum(1 << i for i, c in enumerate(s) if c == "1")


def cycle_space_dimension(g: Graph) -> int:
    return g.m - g.n + len(components(g))


def hole_space_basis(
    g: Graph, holeset: Sequence[Cycle] | None = None, budget: int = DEFAULT_HOLE_BUDGET
) -> Gf2Basis:
    if holeset is None:
        holeset = holes(g, budget)
    basis = Gf2Basis(g.m)
    cap = cycle_space_dimension(g)
    for c in holeset:
        basis.insert(c.edges)
        if basis.rank == cap:
            break
    return basis


def hole_space_dimension(
    g: Graph, holeset: Sequence[Cycle] | None = None, budget: int = DEFAULT_HOLE_BUDGET
) -> int:
    return hole_space_basis(g, holeset, budget).rank


def decompose_cycle(g: Graph, cycle: Cycle | Sequence[int]) -> list[Cycle]:
    """Split a cycle into triangles and holes whose vectors sum to the cycle's.

    While the current cycle has a chord, take the chord whose shorter section
    is shortest (ties: smallest chord edge id); the short side closed by the
    chord is chordless and is emitted, the long side is processed next.
    """
    seq = list(cycle.vertices if isinstance(cycle, Cycle) else cycle)
    Cycle.from_vertices(g, seq)
    pieces = []
    while True:
        ell = len(seq)
        pos = {v: i for i, v in enumerate(seq)}
        best = None
        for i, a in enumerate(seq):
            for b in bits(g.adj[a]):
                j = pos.get(b)
                if j is None or j <= i or j - i in (1, ell - 1):
                    continue
                short = min(j - i, ell - (j - i))
                key = (short, g.edge_id(a, b))
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            pieces.append(Cycle.from_vertices(g, seq))
            return pieces
        _, i, j = best
        inner = seq[i : j + 1]
        outer = seq[j:] + seq[: i + 1]
        if len(inner) > len(outer):
            inner, outer = outer, inner
        pieces.append(Cycle.from_vertices(g, inner))
        seq = outer
