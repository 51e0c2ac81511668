"""Independent reference oracles used only by the test suite.

These are deliberately separate implementations (Prim instead of Kruskal,
Bellman-Ford instead of Dijkstra, matrix BFS instead of the library girth)
so the production code is checked against something it does not share code
with.
"""

from __future__ import annotations

import math
from collections import deque

from spanwright.graph import WeightedGraph


def prim_mst_weight(g: WeightedGraph) -> int:
    """Prim's algorithm, lazy heap, per component; returns forest weight."""
    import heapq

    visited = [False] * g.n
    total = 0
    for start in range(g.n):
        if visited[start]:
            continue
        visited[start] = True
        heap = [(w, idx, u) for u, idx in g.adj[start] for w in (g.edges[idx][2],)]
        heapq.heapify(heap)
        while heap:
            w, idx, u = heapq.heappop(heap)
            if visited[u]:
                continue
            visited[u] = True
            total += w
            for x, jdx in g.adj[u]:
                if not visited[x]:
                    heapq.heappush(heap, (g.edges[jdx][2], jdx, x))
    return total


def bellman_ford(g: WeightedGraph, source: int) -> list:
    dist = [math.inf] * g.n
    dist[source] = 0
    for _ in range(g.n - 1):
        changed = False
        for u, v, w in g.edges:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
            if dist[v] + w < dist[u]:
                dist[u] = dist[v] + w
                changed = True
        if not changed:
            break
    return dist


def hop_distances(g: WeightedGraph, source: int, kept=None) -> list:
    """BFS hop counts, optionally restricted to an edge subset."""
    adj: list[list[int]] = [[] for _ in range(g.n)]
    indices = range(g.m) if kept is None else kept
    for idx in indices:
        u, v, _ = g.edges[idx]
        adj[u].append(v)
        adj[v].append(u)
    dist = [math.inf] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if dist[y] is math.inf:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def brute_girth(g: WeightedGraph):
    """Exhaustive shortest-cycle search: BFS from every edge with that edge
    removed; cycle through (u,v) has length 1 + hops(u,v) without it."""
    best = math.inf
    for idx, (u, v, _) in enumerate(g.edges):
        others = [i for i in range(g.m) if i != idx]
        hops = hop_distances(g, u, others)
        if hops[v] + 1 < best:
            best = hops[v] + 1
    return best


def exhaustive_stretch(g: WeightedGraph, kept, pairs=None):
    """Max over pairs of d_H(u,v)/d_G(u,v) using Bellman-Ford on both sides."""
    from fractions import Fraction

    sub_edges = [g.edges[i] for i in kept]
    h = WeightedGraph(g.n, sub_edges)
    worst = Fraction(0)
    if pairs is None:
        pairs = [(u, v) for u in range(g.n) for v in range(u + 1, g.n)]
    for u, v in pairs:
        dg = bellman_ford(g, u)[v]
        if dg is math.inf or dg == 0:
            continue
        dh = bellman_ford(h, u)[v]
        if dh is math.inf:
            return math.inf
        worst = max(worst, Fraction(dh, dg))
    return worst
