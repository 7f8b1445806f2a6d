"""Next-to-shortest path search on a layered graph.

The solver enumerates endpoint pairs (a, b) of a potential middle segment
(both incident to back-edges, with d(a) > d(b)) together with a pair of
same-layer forward waypoint edges. For each tuple it builds two disjoint
forward paths s -> a and b -> t through the waypoints, removes their
vertices, and completes the route with an exact shortest a -> b path on the
residual graph. The minimum-weight completed route over all tuples is the
answer; if no tuple completes, no not-shortest path exists.

Any completed route is automatically a simple not-shortest s -> t path: the
middle segment descends from d(a) to d(b) < d(a), which forces a back-edge.
"""
from __future__ import annotations

import heapq
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .disjoint import DisjointPathPair, ForwardDag, two_disjoint_paths
from .graph import (
    DistanceTable,
    InternalInvariantError,
    Path,
    SolveOutcome,
    WeightedDigraph,
    classify_edges,
    dijkstra,
    layer_assignment,
    path_weight,
    shortest_distances,
    validate_path,
)


@dataclass(frozen=True)
class BackEdgeDecomposition:
    """Split of a not-shortest path at its first and last back-edges.

    `middle` runs from the tail of the first back-edge to the head of the
    last one; prefix and suffix contain forward edges only.
    """

    prefix: Path
    middle: Path
    suffix: Path

    @property
    def middle_start(self) -> int:
        return self.middle[0]

    @property
    def middle_end(self) -> int:
        return self.middle[-1]

    def whole(self) -> Path:
        return self.prefix + self.middle[1:-1] + self.suffix


def back_edge_decomposition(
    g: WeightedDigraph, d: DistanceTable, path: Path
) -> BackEdgeDecomposition | None:
    """Decompose a simple s-to-t path at its back-edges; None when the path
    has no back-edge (i.e. is shortest)."""
    check = validate_path(g, path, d)
    if not check.simple or path[0] != g.s or path[-1] != g.t:
        raise ValueError("decomposition needs a simple s-to-t path")
    backs = [
        i
        for i, (u, v) in enumerate(zip(path, path[1:]))
        if d.from_s[u] + g.edges[(u, v)] > d.from_s[v]
    ]
    if not backs:
        return None
    i, j = backs[0], backs[-1]
    return BackEdgeDecomposition(
        prefix=path[: i + 1], middle=path[i : j + 2], suffix=path[j + 1 :]
    )


def shortest_path_avoiding(
    g: WeightedDigraph, blocked: frozenset[int] | set[int], a: int, b: int
) -> Path | None:
    """Exact shortest a-to-b path avoiding `blocked`, over all edge types."""
    if a in blocked or b in blocked:
        raise ValueError("endpoints must not be blocked")
    dist = {a: 0}
    parent: dict[int, int] = {}
    settled: set[int] = set()
    heap = [(0, a)]
    while heap:
        du, u = heapq.heappop(heap)
        if u in settled:
            continue
        settled.add(u)
        if u == b:
            rev = [b]
            while rev[-1] != a:
                rev.append(parent[rev[-1]])
            return tuple(reversed(rev))
        for v, w in g.adj_out[u]:
            if v in blocked or v in settled:
                continue
            nd = du + w
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                parent[v] = u
                heapq.heappush(heap, (nd, v))
    return None


class _LayeredSearch:
    """Shared, read-only state for one solve: distances, layers, the forward
    DAG, and memoized half-queries for the disjoint-path construction."""

    def __init__(self, g: WeightedDigraph):
        self.g = g
        self.d = shortest_distances(g)
        self.layers = layer_assignment(g, self.d)  # rejects non-layered input
        self.cls = classify_edges(g, self.d)
        self.dst: int = self.d.from_s[g.t]
        self.dag = ForwardDag.forward_subgraph(g, self.cls)
        self.lam = self.layers.layer
        # Smallest possible excess of any not-shortest path over d(s,t):
        # every back-edge contributes its own slack, forward edges none.
        self.floor = self.dst + min(
            (self.d.from_s[u] + w - self.d.from_s[v] for (u, v), w in g.edges.items()
             if (u, v) in self.cls.back_edges),
            default=0,
        )
        self._prefix_cache: dict[tuple[int, int, int], DisjointPathPair | None] = {}
        self._suffix_cache: dict[tuple[int, int, int], DisjointPathPair | None] = {}
        self._dist_from: dict[int, dict[int, int]] = {}

    def dist_between(self, a: int, b: int) -> int | None:
        """Unrestricted a-to-b distance (lower bound for any residual route)."""
        table = self._dist_from.get(a)
        if table is None:
            table = dijkstra(self.g.adj_out, a)
            self._dist_from[a] = table
        return table.get(b)

    def prefix_pair(self, b: int, xp: int, yp: int) -> DisjointPathPair | None:
        key = (b, xp, yp)
        try:
            return self._prefix_cache[key]
        except KeyError:
            res = two_disjoint_paths(self.dag, (self.g.s, xp), (b, yp))
            self._prefix_cache[key] = res
            return res

    def suffix_pair(self, a: int, x: int, y: int) -> DisjointPathPair | None:
        key = (a, x, y)
        try:
            return self._suffix_cache[key]
        except KeyError:
            res = two_disjoint_paths(self.dag, (x, a), (y, self.g.t))
            self._suffix_cache[key] = res
            return res

    def middle_endpoint_pairs(self) -> list[tuple[int, int]]:
        """Candidate (a, b) pairs in enumeration order: both incident to a
        back-edge, d(a) > d(b), and neither colliding with a terminal role."""
        vb = sorted(self.cls.back_vertices)
        dfs = self.d.from_s
        return [
            (a, b)
            for a in vb
            for b in vb
            if dfs[a] > dfs[b] and b != self.g.s and a != self.g.t
        ]

    def scan_pairs(self, pairs: list[tuple[int, int, int]]) -> tuple | None:
        """Evaluate the tuple space of a contiguous block of (a, b) pairs.

        Returns the block's best candidate as (weight, pair_pos, tuple_pos,
        path), or None. Pruning only ever drops tuples that cannot strictly
        beat an earlier candidate, so the block result equals what a plain
        scan in enumeration order would produce.
        """
        g, d, lam, dag = self.g, self.d, self.lam, self.dag
        dfs = d.from_s
        by_layer = self.layers.forward_by_tail_layer
        best: tuple | None = None
        for pair_pos, a, b in pairs:
            base = dfs[a] - dfs[b] + self.dst
            lower = self.dist_between(a, b)
            if lower is None:
                continue
            if best is not None and base + lower >= best[0]:
                continue
            tuple_pos = 0
            prune_pair = False
            for layer in range(lam[b], lam[a]):
                if prune_pair:
                    break
                edges_here = by_layer.get(layer, ())
                for xp, x in edges_here:
                    if prune_pair:
                        break
                    if xp == b or x == b or not dag.reaches(x, a):
                        tuple_pos += len(edges_here)
                        continue
                    for yp, y in edges_here:
                        tuple_pos += 1
                        if best is not None and base + lower >= best[0]:
                            prune_pair = True
                            break
                        if xp == yp or x == y or y == a:
                            continue
                        if not dag.reaches(b, yp):
                            continue
                        prefix = self.prefix_pair(b, xp, yp)
                        if prefix is None:
                            continue
                        suffix = self.suffix_pair(a, x, y)
                        if suffix is None:
                            continue
                        p1 = prefix.p1 + suffix.p1
                        p2 = prefix.p2 + suffix.p2
                        blocked = (set(p1) | set(p2)) - {a, b}
                        p0 = shortest_path_avoiding(g, blocked, a, b)
                        if p0 is None:
                            continue
                        weight = base + path_weight(g, p0)
                        full = p1 + p0[1:] + p2[1:]
                        _check_candidate(g, d, full, weight, self.dst)
                        if best is None or weight < best[0]:
                            best = (weight, pair_pos, tuple_pos, full)
                            if weight <= self.floor:
                                return best
        return best


def _check_candidate(
    g: WeightedDigraph, d: DistanceTable, path: Path, weight: int, dst: int
) -> None:
    """Defensive check, kept in release builds: a constructed candidate that
    fails validation is a solver bug, never an input condition."""
    check = validate_path(g, path, d)
    if not check.simple or check.weight != weight or weight <= dst:
        raise InternalInvariantError(
            f"solver built an invalid candidate {path} (weight {weight})"
        )


def solve_layered(g: WeightedDigraph, threads: int = 1) -> SolveOutcome:
    """Find a next-to-shortest s-to-t path of a layered graph, or report none.

    Deterministic: tuples are enumerated with a ascending, b ascending, then
    waypoint-edge pairs in lexicographic order, and ties in weight keep the
    first-found path. With threads > 1 the pair blocks are scanned
    concurrently and the per-block minima merged by (weight, enumeration
    position), which reproduces the sequential result exactly.
    """
    search = _LayeredSearch(g)
    if not search.cls.back_edges:
        return SolveOutcome.none()
    pairs = [(i, a, b) for i, (a, b) in enumerate(search.middle_endpoint_pairs())]
    if not pairs:
        return SolveOutcome.none()
    if threads <= 1 or len(pairs) < 2:
        best = search.scan_pairs(pairs)
    else:
        # Contiguous blocks keep the in-block prune exact and share the
        # memoized half-queries well.
        chunk_count = min(threads * 4, len(pairs))
        size = (len(pairs) + chunk_count - 1) // chunk_count
        chunks = [pairs[i : i + size] for i in range(0, len(pairs), size)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(search.scan_pairs, chunks))
        candidates = [r for r in results if r is not None]
        best = min(candidates, key=lambda r: r[:3]) if candidates else None
    if best is None:
        return SolveOutcome.none()
    return SolveOutcome.of(best[3], best[0])
