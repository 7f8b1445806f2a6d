"""Core digraph types: exact integer weights, distances, edge classification.

Weights are kept as exact scaled integers (a decimal input like "2.5" is
stored as 25 with scale=1) so that the equality tests behind edge
classification and the straight/layered predicates are never subject to
rounding. Graphs are immutable after construction and safe to share.
"""
from __future__ import annotations

import bisect
import heapq
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

Edge = tuple[int, int]
Path = tuple[int, ...]

# Parse-time guard: reject inputs whose path weights could exceed a signed
# 64-bit accumulator. Python ints never wrap, but the format contract does
# not depend on that.
MAX_ACCUMULATOR = 2**63 - 1

_WEIGHT_RE = re.compile(r"^(\d+)(?:\.(\d{1,9}))?$")


class GraphFormatError(ValueError):
    """Malformed edge-list input; carries the 1-based offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InvalidPathError(ValueError):
    """A vertex sequence is not a walk of the host graph."""


class InternalInvariantError(RuntimeError):
    """A structural guarantee failed; indicates a bug, not bad input."""


@dataclass(frozen=True)
class WeightedDigraph:
    """Simple directed graph with strictly positive integer edge weights.

    `vertices` need not be contiguous: reductions delete vertices and
    subdivisions allocate fresh ids past the current maximum, keeping the
    surviving ids stable. `scale` is the power of ten by which the original
    decimal weights were multiplied; it only matters when formatting output.
    """

    vertices: frozenset[int]
    edges: dict[Edge, int]
    s: int
    t: int
    scale: int = 0

    def __post_init__(self) -> None:
        if self.s == self.t:
            raise ValueError("source and sink must differ")
        if self.s not in self.vertices or self.t not in self.vertices:
            raise ValueError("source/sink must be graph vertices")
        for (u, v), w in self.edges.items():
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge ({u}, {v}) leaves the vertex set")
            if w <= 0:
                raise ValueError(f"non-positive weight on edge ({u}, {v})")

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adj_out(self) -> dict[int, tuple[tuple[int, int], ...]]:
        """Outgoing adjacency, `u -> ((v, w), ...)` sorted by head id."""
        adj: dict[int, list[tuple[int, int]]] = {u: [] for u in self.vertices}
        for (u, v), w in self.edges.items():
            adj[u].append((v, w))
        return {u: tuple(sorted(nbrs)) for u, nbrs in adj.items()}

    @cached_property
    def adj_in(self) -> dict[int, tuple[tuple[int, int], ...]]:
        """Incoming adjacency, `v -> ((u, w), ...)` sorted by tail id."""
        adj: dict[int, list[tuple[int, int]]] = {u: [] for u in self.vertices}
        for (u, v), w in self.edges.items():
            adj[v].append((u, w))
        return {v: tuple(sorted(nbrs)) for v, nbrs in adj.items()}

    def weight(self, u: int, v: int) -> int:
        return self.edges[(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def replace(self, *, vertices=None, edges=None) -> "WeightedDigraph":
        """Copy with a new vertex set and/or edge map (s, t, scale kept)."""
        return WeightedDigraph(
            vertices=self.vertices if vertices is None else frozenset(vertices),
            edges=dict(self.edges) if edges is None else dict(edges),
            s=self.s,
            t=self.t,
            scale=self.scale,
        )


@dataclass(frozen=True)
class DistanceTable:
    """Exact distances from s and to t; None marks unreachable.

    Unreachable is a real sentinel, never a large finite stand-in, so it can
    never leak into weight arithmetic.
    """

    from_s: dict[int, int | None]
    to_t: dict[int, int | None]


@dataclass(frozen=True)
class EdgeClassification:
    """Partition of the edges into back-edges and forward-edges.

    An edge (u, v) is a back-edge when d(s,u) + w(u,v) > d(s,v) and a
    forward-edge when equality holds; no third case exists on edges whose
    tail is reachable from s. `back_vertices` collects every endpoint of a
    back-edge.
    """

    back_edges: frozenset[Edge]
    forward_edges: frozenset[Edge]
    back_vertices: frozenset[int]

    def is_back(self, edge: Edge) -> bool:
        return edge in self.back_edges


@dataclass(frozen=True)
class PathCheck:
    simple: bool
    weight: int
    uses_back_edge: bool


@dataclass(frozen=True)
class LayerAssignment:
    """1-based layer indices: layer(u) = rank of d(s,u) among distinct values."""

    layer: dict[int, int]
    values: tuple[int, ...]
    by_layer: dict[int, tuple[int, ...]]
    forward_by_tail_layer: dict[int, tuple[Edge, ...]]

    @property
    def layer_count(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class SolveOutcome:
    """Either a next-to-shortest path with its weight, or the explicit
    "none exists" marker (path and weight both None)."""

    path: Path | None
    weight: int | None

    @property
    def found(self) -> bool:
        return self.path is not None

    @staticmethod
    def none() -> "SolveOutcome":
        return SolveOutcome(None, None)

    @staticmethod
    def of(path: Path, weight: int) -> "SolveOutcome":
        return SolveOutcome(tuple(path), weight)


def dijkstra(adj: Mapping[int, Iterable[tuple[int, int]]], source: int) -> dict[int, int]:
    """Exact single-source distances over an adjacency map; omits unreachable."""
    dist: dict[int, int] = {}
    heap = [(0, source)]
    while heap:
        du, u = heapq.heappop(heap)
        if u in dist:
            continue
        dist[u] = du
        for v, w in adj.get(u, ()):
            if v not in dist:
                heapq.heappush(heap, (du + w, v))
    return dist


def shortest_distances(g: WeightedDigraph) -> DistanceTable:
    """Distances from s to every vertex and from every vertex to t."""
    out = dijkstra(g.adj_out, g.s)
    into = dijkstra(g.adj_in, g.t)
    return DistanceTable(
        from_s={u: out.get(u) for u in g.vertices},
        to_t={u: into.get(u) for u in g.vertices},
    )


def st_distance(g: WeightedDigraph, d: DistanceTable) -> int | None:
    return d.from_s[g.t]


def classify_edges(g: WeightedDigraph, d: DistanceTable) -> EdgeClassification:
    """Tag each edge back/forward by the defining distance inequality.

    Requires every edge tail to be reachable from s; the caller removes
    unreachable vertices first.
    """
    back: set[Edge] = set()
    forward: set[Edge] = set()
    touched: set[int] = set()
    for (u, v), w in g.edges.items():
        du = d.from_s[u]
        if du is None:
            raise ValueError(f"edge ({u}, {v}) has a tail unreachable from s")
        dv = d.from_s[v]
        # Relaxation guarantees dv <= du + w, so dv is finite here.
        if dv is None or du + w < dv:
            raise AssertionError(f"distance table inconsistent at edge ({u}, {v})")
        if du + w > dv:
            back.add((u, v))
            touched.add(u)
            touched.add(v)
        else:
            forward.add((u, v))
    return EdgeClassification(frozenset(back), frozenset(forward), frozenset(touched))


def path_weight(g: WeightedDigraph, path: Path) -> int:
    """Exact weight of a walk; raises InvalidPathError on a missing edge."""
    total = 0
    for u, v in zip(path, path[1:]):
        try:
            total += g.edges[(u, v)]
        except KeyError:
            raise InvalidPathError(f"missing edge ({u}, {v})") from None
    return total


def validate_path(g: WeightedDigraph, path: Path, d: DistanceTable | None = None) -> PathCheck:
    """Check edge existence, simplicity, exact weight and back-edge usage.

    An edge whose tail is unreachable from s cannot be classified and is not
    counted as a back-edge; this only affects walks that do not start at s.
    """
    if not path:
        raise InvalidPathError("empty vertex sequence")
    for u in path:
        if u not in g.vertices:
            raise InvalidPathError(f"unknown vertex {u}")
    weight = path_weight(g, path)
    if d is None:
        d = shortest_distances(g)
    uses_back = False
    for u, v in zip(path, path[1:]):
        du = d.from_s[u]
        if du is None:
            continue  # tail unreachable from s: the edge has no classification
        # d.from_s[v] is finite whenever d.from_s[u] is (edge relaxation).
        if du + g.edges[(u, v)] > d.from_s[v]:
            uses_back = True
            break
    return PathCheck(simple=len(set(path)) == len(path), weight=weight, uses_back_edge=uses_back)


def is_straight(g: WeightedDigraph, d: DistanceTable) -> bool:
    """True when every vertex lies on at least one shortest s-to-t path."""
    dst = d.from_s[g.t]
    if dst is None:
        return False
    for u in g.vertices:
        du, ut = d.from_s[u], d.to_t[u]
        if du is None or ut is None or du + ut != dst:
            return False
    return True


def is_layered(g: WeightedDigraph, d: DistanceTable) -> bool:
    """True when the graph is straight, no edge joins equal-distance vertices,
    and no edge spans strictly past an intermediate distance value."""
    if not is_straight(g, d):
        return False
    values = sorted({d.from_s[u] for u in g.vertices})
    for (u, v), w in g.edges.items():
        du, dv = d.from_s[u], d.from_s[v]
        if du == dv:
            return False
        if du < dv and _has_value_strictly_between(values, du, du + w):
            return False
    return True


def _has_value_strictly_between(sorted_values: list[int], lo: int, hi: int) -> bool:
    i = bisect.bisect_right(sorted_values, lo)
    return i < len(sorted_values) and sorted_values[i] < hi


def layer_assignment(g: WeightedDigraph, d: DistanceTable) -> LayerAssignment:
    """Layer function of a layered graph; rejects non-layered input.

    Layers are 1-based; forward edges advance the layer by exactly one and
    back-edges go strictly backward.
    """
    if not is_layered(g, d):
        raise ValueError("graph is not (s,t)-layered")
    values = tuple(sorted({d.from_s[u] for u in g.vertices}))
    rank = {val: i + 1 for i, val in enumerate(values)}
    layer = {u: rank[d.from_s[u]] for u in g.vertices}
    by_layer: dict[int, list[int]] = {i + 1: [] for i in range(len(values))}
    for u in sorted(g.vertices):
        by_layer[layer[u]].append(u)
    cls = classify_edges(g, d)
    fwd_by_tail: dict[int, list[Edge]] = {i + 1: [] for i in range(len(values))}
    for u, v in sorted(cls.forward_edges):
        fwd_by_tail[layer[u]].append((u, v))
    return LayerAssignment(
        layer=layer,
        values=values,
        by_layer={k: tuple(v) for k, v in by_layer.items()},
        forward_by_tail_layer={k: tuple(v) for k, v in fwd_by_tail.items()},
    )


def min_parents_from_s(g: WeightedDigraph, d: DistanceTable) -> dict[int, int]:
    """Smallest-id optimal predecessor for every vertex reachable from s."""
    parents: dict[int, int] = {}
    for v in g.vertices:
        dv = d.from_s[v]
        if v == g.s or dv is None:
            continue
        best = None
        for u, w in g.adj_in[v]:
            du = d.from_s[u]
            if du is not None and du + w == dv:
                best = u
                break  # adj_in is sorted by tail id
        if best is not None:
            parents[v] = best
    return parents


def min_children_to_t(g: WeightedDigraph, d: DistanceTable) -> dict[int, int]:
    """Smallest-id optimal successor toward t for every co-reachable vertex."""
    children: dict[int, int] = {}
    for u in g.vertices:
        ut = d.to_t[u]
        if u == g.t or ut is None:
            continue
        for v, w in g.adj_out[u]:
            vt = d.to_t[v]
            if vt is not None and w + vt == ut:
                children[u] = v
                break
    return children


def tree_path_from_s(g: WeightedDigraph, parents: dict[int, int], v: int) -> Path:
    """Shortest s-to-v path along the smallest-id predecessor tree."""
    rev = [v]
    while rev[-1] != g.s:
        rev.append(parents[rev[-1]])
    return tuple(reversed(rev))


def tree_path_to_t(g: WeightedDigraph, children: dict[int, int], u: int) -> Path:
    """Shortest u-to-t path along the smallest-id successor tree."""
    out = [u]
    while out[-1] != g.t:
        out.append(children[out[-1]])
    return tuple(out)


# ---------------------------------------------------------------------------
# Edge-list text format
#
#   first data line:  n m s t        (counts and 0-based terminal ids)
#   then m lines:     u v w          (w a positive decimal, <= 9 fraction digits)
#   '#' starts a comment; blank lines are ignored.
# ---------------------------------------------------------------------------


def parse_graph(text: str | bytes) -> WeightedDigraph:
    """Parse the edge-list format into a graph with scaled integer weights.

    All weights are scaled by one global power of ten (the smallest making
    every weight integral); errors carry the offending line number.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = text.splitlines()
    header: tuple[int, int, int, int] | None = None
    raw_edges: list[tuple[int, int, int, int, str]] = []  # (line, u, v, int_part, frac)
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        fields = stripped.split()
        if header is None:
            if len(fields) != 4:
                raise GraphFormatError("expected header 'n m s t'", lineno)
            try:
                n, m, s, t = (int(f) for f in fields)
            except ValueError:
                raise GraphFormatError("non-integer header field", lineno) from None
            if n < 2:
                raise GraphFormatError("need at least two vertices", lineno)
            if m < 0:
                raise GraphFormatError("negative edge count", lineno)
            if not (0 <= s < n and 0 <= t < n):
                raise GraphFormatError("source/sink id out of range", lineno)
            if s == t:
                raise GraphFormatError("source and sink must differ", lineno)
            header = (n, m, s, t)
            continue
        if len(fields) != 3:
            raise GraphFormatError("expected edge line 'u v w'", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError("non-integer vertex id", lineno) from None
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex id out of range 0..{n - 1}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        match = _WEIGHT_RE.match(fields[2])
        if match is None:
            raise GraphFormatError(
                "weight must be a positive decimal with at most 9 fractional digits", lineno
            )
        int_part = int(match.group(1))
        frac = (match.group(2) or "").rstrip("0")
        if int_part == 0 and not frac:
            raise GraphFormatError("non-positive weight", lineno)
        raw_edges.append((lineno, u, v, int_part, frac))

    if header is None:
        raise GraphFormatError("empty input: missing header line")
    n, m, s, t = header
    if len(raw_edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(raw_edges)}")

    scale = max((len(frac) for (_, _, _, _, frac) in raw_edges), default=0)
    edges: dict[Edge, int] = {}
    max_w_line = None
    max_w = 0
    for lineno, u, v, int_part, frac in raw_edges:
        if (u, v) in edges:
            raise GraphFormatError(f"duplicate edge ({u}, {v})", lineno)
        w = int_part * 10**scale + int(frac.ljust(scale, "0") or "0")
        edges[(u, v)] = w
        if w > max_w:
            max_w, max_w_line = w, lineno
    if max_w and n * max_w > MAX_ACCUMULATOR:
        raise GraphFormatError("weight overflow after scaling", max_w_line)
    return WeightedDigraph(frozenset(range(n)), edges, s, t, scale)


def format_weight(w: int, scale: int) -> str:
    """Render a scaled integer weight back in the input's decimal scale."""
    if scale == 0:
        return str(w)
    q, r = divmod(w, 10**scale)
    frac = str(r).zfill(scale).rstrip("0")
    return f"{q}.{frac}" if frac else str(q)


def serialize_graph(g: WeightedDigraph) -> str:
    """Exact inverse of parse_graph (edges sorted by endpoint ids)."""
    if g.vertices != frozenset(range(g.vertex_count)):
        raise ValueError("only graphs with contiguous vertex ids serialize")
    out = [f"{g.vertex_count} {g.edge_count} {g.s} {g.t}"]
    for (u, v) in sorted(g.edges):
        out.append(f"{u} {v} {format_weight(g.edges[(u, v)], g.scale)}")
    return "\n".join(out) + "\n"
