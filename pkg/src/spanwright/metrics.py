"""Exact verification metrics: MST, distances, stretch, lightness, girth."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .graph import INF, GraphError, SpannerResult, WeightedGraph

Stretch = Fraction


def as_stretch(t) -> Fraction:
    if isinstance(t, Fraction):
        return t
    if isinstance(t, int):
        return Fraction(t)
    if isinstance(t, str):
        return Fraction(t)
    if isinstance(t, float):
        return Fraction(t).limit_denominator(10**12)
    raise TypeError(f"cannot interpret stretch {t!r}")


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def mst(g: WeightedGraph) -> SpannerResult:
    """Kruskal minimum spanning forest, ties broken by (weight, edge index)."""
    order = sorted(range(g.m), key=lambda i: (g.edges[i][2], i))
    uf = UnionFind(g.n)
    kept = []
    for idx in order:
        u, v, _ = g.edges[idx]
        if uf.union(u, v):
            kept.append(idx)
    result = SpannerResult(g, tuple(kept), claimed_stretch=None)
    result.metrics["weight"] = result.weight_units()
    return result


def dijkstra(
    g: WeightedGraph,
    source: int,
    *,
    allowed: Optional[Sequence[int]] = None,
    cutoff: Optional[int] = None,
) -> dict[int, int]:
    """Exact distances from source.  `allowed` restricts to an edge subset
    (indices); `cutoff` stops exploring beyond that distance (units)."""
    if allowed is None:
        adj = g.adj
    else:
        allowed_set = set(allowed)
        adj = [[] for _ in range(g.n)]
        for idx in allowed_set:
            u, v, _ = g.edges[idx]
            adj[u].append((v, idx))
            adj[v].append((u, idx))
    dist = {source: 0}
    heap = [(0, source)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for u, idx in adj[v]:
            nd = d + g.edges[idx][2]
            if cutoff is not None and nd > cutoff:
                continue
            if nd < dist.get(u, math.inf):
                dist[u] = nd
                heapq.heappush(heap, (nd, u))
    return dist


def exact_distances(g: WeightedGraph, sources: Optional[Iterable[int]] = None) -> dict[int, dict[int, int]]:
    """Dijkstra distance table from each source (all vertices by default).

    Unreachable pairs are simply absent; callers treat absence as infinity.
    """
    if sources is None:
        sources = range(g.n)
    return {s: dijkstra(g, s) for s in sources}


@dataclass
class StretchCheck:
    ok: bool
    measured: Fraction | float  # max over edges of d_H(u,v) / w(u,v); inf if disconnected
    worst_pair: Optional[tuple[int, int]]

    def __bool__(self) -> bool:  # pragma: no cover
        return self.ok


def _kept_of(h) -> tuple[int, ...]:
    if isinstance(h, SpannerResult):
        return h.kept
    return tuple(h)


def verify_stretch(g: WeightedGraph, h, t) -> StretchCheck:
    """Check d_H(u,v) <= t * w(u,v) for every edge (u,v) of g.

    Checking host edges suffices for all-pairs stretch: a shortest path is a
    concatenation of host edges, each detoured within factor t.  Reports the
    maximum ratio and its witness pair.
    """
    t = as_stretch(t)
    kept = _kept_of(h)
    for idx in kept:
        if not (0 <= idx < g.m):
            raise GraphError(f"spanner edge index {idx} not in host graph")
    sub_adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for idx in kept:
        u, v, w = g.edges[idx]
        sub_adj[u].append((v, w))
        sub_adj[v].append((u, w))

    def sub_dijkstra(source: int, cutoff: Optional[int]) -> dict[int, int]:
        dist = {source: 0}
        heap = [(0, source)]
        while heap:
            d, x = heapq.heappop(heap)
            if d > dist[x]:
                continue
            for y, w in sub_adj[x]:
                nd = d + w
                if cutoff is not None and nd > cutoff:
                    continue
                if nd < dist.get(y, math.inf):
                    dist[y] = nd
                    heapq.heappush(heap, (nd, y))
        return dist

    # Pass 1: bounded search per source; exact whenever the edge is satisfied.
    by_source: dict[int, list[tuple[int, int, int]]] = {}
    for u, v, w in g.edges:
        by_source.setdefault(u, []).append((v, w, u))
    measured: Fraction | float = Fraction(0)
    worst: Optional[tuple[int, int]] = None
    violations: list[tuple[int, int, int]] = []
    for u, targets in by_source.items():
        bound_frac = max(t * w for _, w, _ in targets)
        cutoff = bound_frac.numerator // bound_frac.denominator
        dist = sub_dijkstra(u, cutoff)
        for v, w, _ in targets:
            dh = dist.get(v)
            if dh is None or dh > t * w:
                violations.append((u, v, w))
                continue
            ratio = Fraction(dh, w)
            if ratio > measured:
                measured, worst = ratio, (u, v)
    # Pass 2: exact ratios for violated edges (unbounded search).
    done: dict[int, dict[int, int]] = {}
    for u, v, w in violations:
        if u not in done:
            done[u] = sub_dijkstra(u, None)
        dh = done[u].get(v)
        if dh is None:
            return StretchCheck(False, INF, (u, v))
        ratio = Fraction(dh, w)
        if ratio > measured:
            measured, worst = ratio, (u, v)
    return StretchCheck(not violations, measured, worst)


def lightness(g: WeightedGraph, h) -> Fraction:
    """Total kept weight over MST weight; requires a connected host."""
    from .graph import is_connected

    if not is_connected(g):
        raise GraphError("lightness needs a connected graph")
    base = mst(g).weight_units()
    if base == 0:
        raise GraphError("lightness undefined for an edgeless graph")
    kept = _kept_of(h)
    total = sum(g.edges[i][2] for i in kept)
    return Fraction(total, base)


def girth(g: WeightedGraph, hop_limit: Optional[int] = None):
    """Edge count of the shortest cycle (weights ignored).

    Per-vertex truncated BFS; returns math.inf when no cycle of length at
    most hop_limit exists (or no cycle at all when hop_limit is None).
    """
    best = INF
    limit = hop_limit if hop_limit is not None else 2 * g.n + 1
    depth_cap = limit // 2 + 1
    for s in range(g.n):
        level = {s: 0}
        parent_edge = {s: -1}
        frontier = [s]
        depth = 0
        while frontier and depth < depth_cap:
            nxt = []
            for x in frontier:
                for y, idx in g.adj[x]:
                    if idx == parent_edge[x]:
                        continue
                    if y in level:
                        candidate = level[x] + level[y] + 1
                        if candidate < best:
                            best = candidate
                    else:
                        level[y] = level[x] + 1
                        parent_edge[y] = idx
                        nxt.append(y)
            frontier = nxt
            depth += 1
    if hop_limit is not None and best > hop_limit:
        return INF
    return best


def spanner_metrics(g: WeightedGraph, result: SpannerResult, *, with_lightness: bool = True) -> SpannerResult:
    """Fill in size/weight/lightness metrics on a result (in place)."""
    result.metrics["size"] = result.size
    result.metrics["weight"] = result.weight_units()
    if with_lightness:
        from .graph import is_connected

        if is_connected(g) and g.m > 0 and g.n > 1:
            result.metrics["lightness"] = lightness(g, result)
    return result
