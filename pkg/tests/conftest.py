"""Shared builders for the test suite."""
from __future__ import annotations

from nextpath import WeightedDigraph


def build_graph(n, edges, s=0, t=None, scale=0):
    """Graph on vertices 0..n-1 from an {(u, v): w} mapping or (u, v, w) list."""
    if not isinstance(edges, dict):
        edges = {(u, v): w for u, v, w in edges}
    return WeightedDigraph(frozenset(range(n)), dict(edges), s, n - 1 if t is None else t, scale)


TRIANGLE = "3 3 0 2\n0 1 1\n1 2 1\n0 2 1\n"

# two parallel unit chains 0-1-2-5 and 0-3-4-5 plus back-edge 4->1
PARALLEL_CHAINS = {
    (0, 1): 1, (1, 2): 1, (2, 5): 1,
    (0, 3): 1, (3, 4): 1, (4, 5): 1,
    (4, 1): 1,
}


def floyd_warshall(g):
    """Independent all-pairs distances (no Dijkstra involved)."""
    verts = sorted(g.vertices)
    dist = {(u, v): (0 if u == v else None) for u in verts for v in verts}
    for (u, v), w in g.edges.items():
        if dist[(u, v)] is None or w < dist[(u, v)]:
            dist[(u, v)] = w
    for k in verts:
        for i in verts:
            dik = dist[(i, k)]
            if dik is None:
                continue
            for j in verts:
                dkj = dist[(k, j)]
                if dkj is None:
                    continue
                old = dist[(i, j)]
                if old is None or dik + dkj < old:
                    dist[(i, j)] = dik + dkj
    return dist


def bellman_ford_from(g, source):
    """Independent single-source distances by edge relaxation."""
    dist = {u: None for u in g.vertices}
    dist[source] = 0
    for _ in range(len(g.vertices)):
        changed = False
        for (u, v), w in g.edges.items():
            if dist[u] is not None and (dist[v] is None or dist[u] + w < dist[v]):
                dist[v] = dist[u] + w
                changed = True
        if not changed:
            break
    return dist
