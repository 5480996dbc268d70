"""Competition graphs of acyclic digraphs, certificate checking and exact
competition numbers.

A certificate for ``k(G) <= k`` is an acyclic digraph on ``n + k`` vertices
(ids ``n..n+k-1`` are the added ones) whose competition graph is ``G`` plus
``k`` isolated vertices.
"""

from __future__ import annotations

import heapq
import itertools
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .graph import Digraph, Graph, bits, popcount

METHODS = ("oracle", "chordal", "triangle-free", "newfamily", "three-triangles", "g4", "user")


@dataclass(frozen=True)
class Certificate:
    digraph: Digraph
    base_n: int
    k: int
    method: str = "user"
    order: tuple[int, ...] | None = None

    def to_json(self) -> dict[str, Any]:
        order = self.order
        if order is None:
            order = is_acyclic(self.digraph).order
        return {
            "base_n": self.base_n,
            "k": self.k,
            "method": self.method,
            "arcs": [list(a) for a in self.digraph.sorted_arcs()],
            "topological_order": list(order) if order is not None else None,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Certificate":
        base_n, k = int(data["base_n"]), int(data["k"])
        d = Digraph.from_arcs(base_n + k, (tuple(a) for a in data["arcs"]))
        order = data.get("topological_order")
        return cls(d, base_n, k, data.get("method", "user"), tuple(order) if order else None)


def competition_graph(d: Digraph) -> Graph:
    """Graph on V(D) joining two vertices iff they share an out-neighbour."""
    pairs = set()
    for w in range(d.n):
        preds = list(bits(d.in_neighbors[w]))
        pairs.update(itertools.combinations(preds, 2))
    return Graph(d.n, tuple(sorted(pairs)))


@dataclass(frozen=True)
class AcyclicityResult:
    acyclic: bool
    order: tuple[int, ...] | None = None
    cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.acyclic


def is_acyclic(d: Digraph) -> AcyclicityResult:
    """Kahn's algorithm (smallest id first); a directed cycle is the failure witness."""
    indeg = [popcount(d.in_neighbors[v]) for v in range(d.n)]
    ready = [v for v in range(d.n) if indeg[v] == 0]
    order = []
    heapq.heapify(ready)
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in bits(d.out_neighbors[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(order) == d.n:
        return AcyclicityResult(True, order=tuple(order))
    # Every remaining vertex has a remaining in-neighbour; walk backwards.
    left = 0
    for v in range(d.n):
        if indeg[v] > 0:
            left |= 1 << v
    v = next(bits(left))
    seen: dict[int, int] = {}
    walk = []
    while v not in seen:
        seen[v] = len(walk)
        walk.append(v)
        v = next(bits(d.in_neighbors[v] & left))
    cyc = walk[seen[v] :]
    return AcyclicityResult(False, cycle=tuple(reversed(cyc)))


@dataclass(frozen=True)
class Verification:
    ok: bool
    reason: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(g: Graph, cert: Certificate) -> Verification:
    """Check a certificate bit-exactly; the reason names the first violated condition."""
    d = cert.digraph
    if cert.base_n != g.n:
        return Verification(False, f"base_n {cert.base_n} != |V(G)| {g.n}")
    if cert.k < 0 or d.n != cert.base_n + cert.k:
        return Verification(False, f"digraph has {d.n} vertices, expected {g.n}+{cert.k}")
    acyc = is_acyclic(d)
    if not acyc:
        return Verification(False, f"cycle found: {list(acyc.cycle)}")
    cg = competition_graph(d)
    want = set(g.edges)
    got = set(cg.edges)
    for u, v in sorted(want - got):
        return Verification(False, f"missing edge ({u}, {v})")
    for u, v in sorted(got - want):
        if u >= g.n or v >= g.n:
            w = u if u >= g.n else v
            return Verification(False, f"added vertex {w} is not isolated (edge ({u}, {v}))")
        return Verification(False, f"spurious edge ({u}, {v})")
    return Verification(True)


# -- exact oracle ---------------------------------------------------------------


class BudgetExhausted(Exception):
    pass


@dataclass
class OracleResult:
    """Outcome of the exact search.

    ``k`` is set only when the minimum is known.  ``lower`` is a proven lower
    bound in every case; ``upper`` is the best verified upper bound, if any.
    """

    k: int | None
    lower: int
    upper: int | None = None
    certificate: Certificate | None = None
    infeasible_below: bool = False
    nodes: int = 0
    trace: list[dict[str, Any]] = field(default_factory=list)

    @property
    def known(self) -> bool:
        return self.k is not None


def _maximal_cliques(g: Graph, cand: int) -> list[int]:
    """Maximal cliques (bitmasks) of the subgraph induced by ``cand``; Bron-Kerbosch with pivoting."""
    out = []
    adj = g.adj

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        pivot = max(bits(p | x), key=lambda u: popcount(adj[u] & p))
        for v in bits(p & ~adj[pivot]):
            expand(r | (1 << v), p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if cand:
        expand(0, cand, 0)
    return out


class _Search:
    """Feasibility search for a fixed number of added vertices.

    The vertex order is built from the last vertex backwards.  ``slots``
    counts positions available to host cliques of the remaining vertices:
    the added vertices plus every already-placed vertex.  Placing ``v`` as
    the latest remaining vertex forces all its uncovered edges to be covered
    now by cliques containing ``v``; afterwards ``v``'s own position becomes
    a slot.  ``fail[(R, U)]`` is the largest slot count known to fail.
    """

    def __init__(self, g: Graph, deadline: float | None) -> None:
        self.g = g
        self.deadline = deadline
        self.fail: dict[tuple[int, int], int] = {}
        self.nodes = 0
        self.clique_cache: dict[tuple[int, int], list[int]] = {}
        # pair (e, f) of edge ids can share a clique iff the union of their endpoints is a clique
        self.compatible = [0] * g.m
        for i, (a, b) in enumerate(g.edges):
            for j, (c, d) in enumerate(g.edges):
                vs = (1 << a) | (1 << b) | (1 << c) | (1 << d)
                if g.is_clique(vs):
                    self.compatible[i] |= 1 << j
        self.pair_edges: dict[int, int] = {}

    def clique_edges(self, clique: int) -> int:
        mask = self.pair_edges.get(clique)
        if mask is None:
            mask = self.g.induced_edges(clique)
            self.pair_edges[clique] = mask
        return mask

    def cover_lower_bound(self, uncovered: int) -> int:
        """Size of a greedy set of uncovered edges no two of which fit in one clique."""
        count = 0
        rest = uncovered
        while rest:
            e = (rest & -rest).bit_length() - 1
            count += 1
            rest &= ~self.compatible[e]
        return count

    def cliques_at(self, v: int, remaining: int) -> list[int]:
        key = (v, remaining)
        cl = self.clique_cache.get(key)
        if cl is None:
            cl = [c | (1 << v) for c in _maximal_cliques(self.g, self.g.adj[v] & remaining)]
            self.clique_cache[key] = cl
        return cl

    def covers(self, v: int, remaining: int, uncovered: int, limit: int) -> list[tuple[list[int], int]]:
        """Clique sets covering v's uncovered edges, at most ``limit`` cliques each.

        Each clique is chosen to cover the lowest still-uncovered neighbour, which
        reaches every inclusion-minimal cover.  Returns (cliques, newly covered edges).
        """
        g = self.g
        need = 0
        for e in bits(uncovered & g.incident[v]):
            a, b = g.edges[e]
            need |= 1 << (b if a == v else a)
        cliques = [c for c in self.cliques_at(v, remaining) if c & need]
        results: dict[frozenset[int], int] = {}

        def rec(todo: int, chosen: list[int], covered: int) -> None:
            if not todo:
                results.setdefault(frozenset(chosen), covered)
                return
            if len(chosen) >= limit:
                return
            x = (todo & -todo).bit_length() - 1
            for c in cliques:
                if c >> x & 1:
                    rec(todo & ~c, chosen + [c], covered | self.clique_edges(c))

        rec(need, [], 0)
        out = [(sorted(cs), cov & uncovered) for cs, cov in results.items()]
        # most coverage first, then fewest cliques
        out.sort(key=lambda item: (len(item[0]), -popcount(item[1]), item[0]))
        return out

    def solve(self, remaining: int, uncovered: int, slots: int) -> list[tuple[int, list[int]]] | None:
        """Removal steps ``(v, cliques)`` from latest to earliest, or None if infeasible."""
        self.nodes += 1
        if self.deadline is not None and self.nodes & 255 == 0 and time.monotonic() > self.deadline:
            raise BudgetExhausted
        if not uncovered:
            return [(v, []) for v in sorted(bits(remaining), reverse=True)]
        key = (remaining, uncovered)
        if self.fail.get(key, -1) >= slots:
            return None
        g = self.g
        size = popcount(remaining)
        if self.cover_lower_bound(uncovered) > slots + size - 2:
            self.fail[key] = max(self.fail.get(key, -1), slots)
            return None
        # A vertex with no uncovered edges can be made latest at no cost.
        for v in bits(remaining):
            if not uncovered & g.incident[v]:
                rest = self.solve(remaining & ~(1 << v), uncovered, slots + 1)
                if rest is None:
                    self.fail[key] = max(self.fail.get(key, -1), slots)
                    return None
                return [(v, [])] + rest
        candidates = sorted(bits(remaining), key=lambda v: (popcount(uncovered & g.incident[v]), v))
        for v in candidates:
            for cliques, newly in self.covers(v, remaining, uncovered, slots):
                rest = self.solve(remaining & ~(1 << v), uncovered & ~newly, slots - len(cliques) + 1)
                if rest is not None:
                    return [(v, cliques)] + rest
        self.fail[key] = max(self.fail.get(key, -1), slots)
        return None


def _certificate_from_steps(g: Graph, k: int, steps: list[tuple[int, list[int]]]) -> Certificate:
    # Slots are handed out in the order they became available; any free slot works.
    n = g.n
    free = deque(range(n, n + k))
    arcs = []
    for v, cliques in steps:
        for c in cliques:
            prey = free.popleft()
            arcs.extend((u, prey) for u in bits(c))
        free.append(v)
    order = [v for v, _ in reversed(steps)] + list(range(n, n + k))
    return Certificate(Digraph.from_arcs(n + k, arcs), n, k, "oracle", tuple(order))


def competition_number_lower_bound(g: Graph) -> int:
    """``k >= (pairwise clique-incompatible edges) - n + 2``, and ``k >= 0``."""
    if g.m == 0:
        return 0
    return max(0, _Search(g, None).cover_lower_bound(g.all_edges) - g.n + 2)


def competition_number_exact(
    g: Graph,
    k_max: int | None = None,
    time_budget: float | None = 60.0,
    k_start: int | None = None,
) -> OracleResult:
    """Smallest ``k`` such that ``G`` plus ``k`` isolated vertices is the
    competition graph of an acyclic digraph, by iterative deepening on ``k``.

    ``time_budget`` applies to each level separately.  When the budget runs out
    or ``k_max`` is passed, the result carries only the proven lower bound.
    """
    if g.m == 0:
        cert = Certificate(Digraph.from_arcs(g.n, ()), g.n, 0, "oracle", tuple(range(g.n)))
        return OracleResult(0, 0, 0, cert, infeasible_below=True)
    if k_max is None:
        k_max = g.m
    lower = competition_number_lower_bound(g)
    k = lower if k_start is None else max(lower, k_start)
    search = _Search(g, None)
    trace = []
    while k <= k_max:
        search.deadline = None if time_budget is None else time.monotonic() + time_budget
        before = search.nodes
        started = time.monotonic()
        try:
            steps = search.solve(g.all_vertices, g.all_edges, k)
        except BudgetExhausted:
            trace.append({"k": k, "result": "timeout", "nodes": search.nodes - before})
            return OracleResult(None, k, None, None, False, search.nodes, trace)
        trace.append(
            {
                "k": k,
                "result": "feasible" if steps is not None else "infeasible",
                "nodes": search.nodes - before,
                "seconds": round(time.monotonic() - started, 6),
            }
        )
        if steps is not None:
            cert = _certificate_from_steps(g, k, steps)
            return OracleResult(k, k, k, cert, True, search.nodes, trace)
        k += 1
    return OracleResult(None, k, None, None, False, search.nodes, trace)


# -- brute force cross-check ------------------------------------------------------

BRUTEFORCE_MAX_TOTAL = 6


def _realizable(target: Graph) -> bool:
    """Is ``target`` the competition graph of some acyclic digraph on its vertices?

    Every acyclic digraph is a set of forward arcs of some vertex permutation, so
    enumerate permutations and, for each, every in-neighbourhood choice.
    """
    n = target.n
    pair_bit = {}
    for a in range(n):
        for b in range(a + 1, n):
            pair_bit[(a, b)] = len(pair_bit)
    want = 0
    for u, v in target.edges:
        want |= 1 << pair_bit[(u, v)]
    for perm in itertools.permutations(range(n)):
        combos = np.zeros(1, dtype=np.int64)
        for p in range(2, n):
            earlier = perm[:p]
            options = np.zeros(1 << p, dtype=np.int64)
            for s in range(1 << p):
                members = [earlier[i] for i in range(p) if s >> i & 1]
                mask = 0
                for a, b in itertools.combinations(members, 2):
                    mask |= 1 << pair_bit[(min(a, b), max(a, b))]
                options[s] = mask
            options = np.unique(options)
            combos = np.unique((combos[:, None] | options[None, :]).ravel())
            combos = combos[(combos & ~want) == 0]
        if np.any(combos == want):
            return True
    return False


def competition_number_direct_bruteforce(g: Graph, max_total: int = BRUTEFORCE_MAX_TOTAL) -> int:
    """Minimal ``k`` by exhaustive enumeration of acyclic digraphs on ``n + k`` vertices.

    Raises ``ValueError`` when the answer would need more than ``max_total`` vertices.
    """
    if g.n > max_total:
        raise ValueError(f"n={g.n} exceeds the brute-force limit {max_total}")
    for k in range(0, max_total - g.n + 1):
        target = Graph(g.n + k, g.edges)
        if _realizable(target):
            return k
    raise ValueError(f"k(G) > {max_total - g.n}: beyond the brute-force limit {max_total}")
