"""Linear-time sparse spanner over well-separated weight classes, plus the
bounded-aspect-ratio light spanner.

sparse_spanner splits edges into geometric weight buckets, groups buckets
into classes far enough apart that cluster diameters stay negligible, and
runs the degree-priority ball-growing spanner on a contracted cluster graph
per class level.  aspect_spanner buckets non-forest edges by weight, carves
the spanning forest into low-diameter clusters per bucket, and runs the
plain ball-growing spanner on each contracted bucket graph.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .graph import GraphError, SpannerResult, WeightedGraph
from .hz import hz_spanner, modified_hz_spanner
from .metrics import as_stretch, mst


def geometric_thresholds(base_units: int, ratio: Fraction, top_units: int) -> list[Fraction]:
    """Ascending exact thresholds base * ratio**b covering top_units."""
    if ratio <= 1:
        raise GraphError("ratio must exceed 1")
    out = [Fraction(base_units)]
    while out[-1] <= top_units:
        out.append(out[-1] * ratio)
    return out


def bucket_of(thresholds: list[Fraction], w: int) -> int:
    """Largest b with thresholds[b] <= w."""
    return bisect_right(thresholds, w) - 1


@dataclass
class LevelRecord:
    class_index: int
    level: int
    clusters_before: int
    clusters_after: int
    edges_added: int


@dataclass
class SparseTrace:
    n: int
    k: int
    eps: Fraction
    separation: int
    w_min: int
    levels: list[LevelRecord] = field(default_factory=list)
    class_kept: dict[int, list[int]] = field(default_factory=dict)
    class_clusters: dict[tuple[int, int], list[list[int]]] = field(default_factory=dict)


def class_separation(k: int, eps: Fraction) -> int:
    """Smallest S with (1+eps)**S >= 18k/eps; classes j and j+S never mix."""
    target = Fraction(18 * k) / eps
    base = 1 + eps
    power = Fraction(1)
    s = 0
    while power < target:
        power *= base
        s += 1
    return max(s, 1)


def _partition_singleton_component(neighbors: dict[int, list[int]], comp: list[int], k: int) -> list[list[int]]:
    """Split one component of the residual cluster graph into connected
    pieces of size >= k and hop diameter <= 3k (single piece if |comp| < k)."""
    if len(comp) < k:
        return [list(comp)]
    comp_set = set(comp)
    root = comp[0]
    parent = {root: None}
    order = [root]
    for x in order:
        for y in neighbors[x]:
            if y in comp_set and y not in parent:
                parent[y] = x
                order.append(y)
    children: dict[int, list[int]] = {v: [] for v in comp}
    for v in order[1:]:
        children[parent[v]].append(v)
    pieces: list[list[int]] = []
    pend: dict[int, list[int]] = {}
    for v in reversed(order):
        bag = [v]
        for c in children[v]:
            if c in pend:
                bag.extend(pend.pop(c))
        if len(bag) >= k:
            pieces.append(bag)
        else:
            pend[v] = bag
    if root in pend:
        pieces[-1].extend(pend.pop(root))
    return pieces


def sparse_spanner(
    g: WeightedGraph,
    k: int,
    eps,
    *,
    include_mst: bool = True,
    trace: Optional[SparseTrace] = None,
) -> SpannerResult:
    """Sparse (2k-1)(1+3*eps)-spanner in near-linear work.

    include_mst unions in the minimum spanning forest so the output is always
    connected per component; disable it to inspect the class machinery alone.
    """
    eps = as_stretch(eps)
    if k < 1:
        raise GraphError("k must be >= 1")
    if not (0 < eps < 1):
        raise GraphError("eps must be in (0, 1)")
    claimed = (2 * k - 1) * (1 + 3 * eps)
    if g.m == 0:
        return SpannerResult(g, (), claimed)
    if k == 1:
        # Stretch-1 target: every edge must stay; the class machinery and its
        # size accounting need k >= 2.
        return SpannerResult(g, tuple(range(g.m)), claimed)
    w_min = min(w for _, _, w in g.edges)
    w_max = max(w for _, _, w in g.edges)
    thresholds = geometric_thresholds(w_min, 1 + eps, w_max)
    sep = class_separation(k, eps)
    max_bucket = bucket_of(thresholds, w_max)
    buckets: dict[int, list[int]] = {}
    for idx, (_, _, w) in enumerate(g.edges):
        buckets.setdefault(bucket_of(thresholds, w), []).append(idx)
    if trace is not None:
        trace.n = g.n
        trace.k = k
        trace.eps = eps
        trace.separation = sep
        trace.w_min = w_min
    kept: set[int] = set()
    for j in range(sep):
        if not any(b in buckets for b in range(j, max_bucket + 1, sep)):
            continue
        kept_j = _sparse_class(g, k, j, sep, buckets, max_bucket, trace)
        kept.update(kept_j)
    if include_mst:
        kept.update(mst(g).kept)
    return SpannerResult(g, tuple(kept), claimed)


def _sparse_class(g, k, j, sep, buckets, max_bucket, trace) -> list[int]:
    n = g.n
    assignment = list(range(n))  # vertex -> cluster id
    members: list[list[int]] = [[v] for v in range(n)]
    kept_j: list[int] = []
    level = 0
    b = j
    while b <= max_bucket:
        bucket_edges = buckets.get(b, ())
        if bucket_edges:
            assignment, members, added = _sparse_level(
                g, k, j, level, bucket_edges, assignment, members, kept_j, trace
            )
            kept_j.extend(added)
        level += 1
        b += sep
    if trace is not None:
        trace.class_kept[j] = kept_j
    return kept_j


def _sparse_level(g, k, j, level, bucket_edges, assignment, members, kept_so_far, trace):
    c = len(members)
    rep: dict[tuple[int, int], tuple[int, int]] = {}
    for idx in bucket_edges:
        u, v, w = g.edges[idx]
        a, b = assignment[u], assignment[v]
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        cand = (w, idx)
        if key not in rep or cand < rep[key]:
            rep[key] = cand
    pair_keys = sorted(rep)
    from .graph import SCALE

    cluster_graph = WeightedGraph(c, [(a, b, SCALE) for a, b in pair_keys])
    edge_map = [rep[key][1] for key in pair_keys]
    run = modified_hz_spanner(cluster_graph, k)
    added = [edge_map[i] for i in run.result.kept]

    # Form next-level clusters: merged non-singleton deletion sets, then the
    # leftover singletons chunked per residual component.
    new_members: list[list[int]] = []
    singleton_nodes: list[int] = []
    for removed in run.sets:
        if len(removed) > 1:
            merged: list[int] = []
            for node in removed:
                merged.extend(members[node])
            new_members.append(merged)
        else:
            singleton_nodes.append(removed[0])
    if singleton_nodes:
        singleton_set = set(singleton_nodes)
        neighbors: dict[int, list[int]] = {v: [] for v in singleton_nodes}
        for a, b in pair_keys:
            if a in singleton_set and b in singleton_set:
                neighbors[a].append(b)
                neighbors[b].append(a)
        seen: set[int] = set()
        for start in singleton_nodes:
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            for x in comp:
                for y in neighbors[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
            for piece in _partition_singleton_component(neighbors, comp, k):
                merged = []
                for node in piece:
                    merged.extend(members[node])
                new_members.append(merged)
    new_assignment = [0] * g.n
    for cid, mem in enumerate(new_members):
        for v in mem:
            new_assignment[v] = cid
    if trace is not None:
        trace.levels.append(LevelRecord(j, level, c, len(new_members), len(added)))
        trace.class_clusters[(j, level + 1)] = [sorted(mem) for mem in new_members]
    return new_assignment, new_members, added


def check_sparse_potential(trace: SparseTrace) -> list[str]:
    """Exact per-level size accounting: edges added at a level never exceed
    twice the cluster-count drop times n**(1/k); per class the total stays
    under 2 * n**(1+1/k).  Comparisons are exact integer k-th powers."""
    problems = []
    n, k = trace.n, trace.k
    for rec in trace.levels:
        drop = rec.clusters_before - rec.clusters_after
        if drop < 0:
            problems.append(f"class {rec.class_index} level {rec.level}: cluster count grew")
            continue
        if rec.edges_added**k > (2 * drop) ** k * n:
            problems.append(
                f"class {rec.class_index} level {rec.level}: "
                f"{rec.edges_added} edges > 2*{drop}*n^(1/k)"
            )
    for j, kept in trace.class_kept.items():
        if len(kept) ** k > 2**k * n ** (k + 1):
            problems.append(f"class {j}: size {len(kept)} > 2*n^(1+1/k)")
    return problems


def check_cluster_diameters(g: WeightedGraph, trace: SparseTrace) -> list[str]:
    """Measure every recorded cluster's diameter inside its class spanner and
    compare against eps/2 * (1+eps)**(j + level*separation) * w_min."""
    import heapq

    problems = []
    base = 1 + trace.eps
    for (j, level), clusters in sorted(trace.class_clusters.items()):
        kept = trace.class_kept.get(j, [])
        adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        for idx in kept:
            u, v, w = g.edges[idx]
            adj[u].append((v, w))
            adj[v].append((u, w))
        bound = Fraction(trace.eps, 2) * base ** (j + level * trace.separation) * trace.w_min
        for mem in clusters:
            if len(mem) == 1:
                continue
            bad = None
            for s in mem:
                dist = {s: 0}
                heap = [(0, s)]
                while heap:
                    d, x = heapq.heappop(heap)
                    if d > dist[x]:
                        continue
                    for y, w in adj[x]:
                        nd = d + w
                        if nd < dist.get(y, math.inf):
                            dist[y] = nd
                            heapq.heappush(heap, (nd, y))
                for t in mem:
                    dt = dist.get(t)
                    if dt is None or dt > bound:
                        bad = (s, t)
                        break
                if bad:
                    break
            if bad:
                problems.append(
                    f"class {j} level {level}: cluster diameter past "
                    f"{float(bound):.3f} between {bad[0]} and {bad[1]}"
                )
    return problems


# ---------------------------------------------------------------------------
# Bounded-aspect-ratio light spanner


@dataclass
class AspectBucket:
    index: int
    assignment: list[int]
    kept: list[int]


@dataclass
class AspectTrace:
    buckets: list[AspectBucket] = field(default_factory=list)


def carve_forest(g: WeightedGraph, forest: tuple[int, ...], radius: Fraction) -> list[int]:
    """Partition vertices into forest-connected clusters of weighted radius
    <= radius around a carrier vertex (so diameter <= 2*radius)."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for idx in forest:
        u, v, w = g.edges[idx]
        adj[u].append((v, w))
        adj[v].append((u, w))
    assignment = [-1] * g.n
    clusters = 0
    visited = [False] * g.n
    for root in range(g.n):
        if visited[root]:
            continue
        parent: dict[int, Optional[int]] = {root: None}
        order = [root]
        visited[root] = True
        for x in order:
            for y, _ in adj[x]:
                if not visited[y]:
                    visited[y] = True
                    parent[y] = x
                    order.append(y)
        children: dict[int, list[tuple[int, int]]] = {v: [] for v in order}
        for v in order[1:]:
            for y, w in adj[v]:
                if y == parent[v]:
                    children[y].append((v, w))
                    break
        pend: dict[int, list[int]] = {}
        reach: dict[int, int] = {}
        for v in reversed(order):
            bag = [v]
            r = 0
            for c, w in children[v]:
                if c not in pend:
                    continue
                cand = reach[c] + w
                if cand > radius:
                    for x in pend.pop(c):
                        assignment[x] = clusters
                    clusters += 1
                else:
                    bag.extend(pend.pop(c))
                    r = max(r, cand)
            if parent[v] is None:
                for x in bag:
                    assignment[x] = clusters
                clusters += 1
            else:
                pend[v] = bag
                reach[v] = r
    return assignment


def aspect_spanner(
    g: WeightedGraph,
    k: int,
    eps,
    *,
    trace: Optional[AspectTrace] = None,
) -> SpannerResult:
    """(2k-1)(1+3*eps)-spanner whose lightness scales with log of the aspect
    ratio.  Keeps the spanning forest, buckets the remaining edges by weight,
    and prunes each bucket on a low-diameter cluster contraction."""
    eps = as_stretch(eps)
    if k < 1:
        raise GraphError("k must be >= 1")
    if not (0 < eps < 1):
        raise GraphError("eps must be in (0, 1)")
    claimed = (2 * k - 1) * (1 + 3 * eps)
    if g.m == 0:
        return SpannerResult(g, (), claimed)
    forest = mst(g).kept
    kept: set[int] = set(forest)
    non_forest = [i for i in range(g.m) if i not in kept]
    if not non_forest:
        return SpannerResult(g, tuple(kept), claimed)
    w_min = min(w for _, _, w in g.edges)
    w_max = max(w for _, _, w in g.edges)
    rho = 1 + eps
    thresholds = geometric_thresholds(w_min, rho, w_max)
    buckets: dict[int, list[int]] = {}
    for idx in non_forest:
        buckets.setdefault(bucket_of(thresholds, g.edges[idx][2]), []).append(idx)
    from .graph import SCALE

    for b in sorted(buckets):
        radius = Fraction(eps, 2) * thresholds[b]
        assignment = carve_forest(g, forest, radius)
        rep: dict[tuple[int, int], tuple[int, int]] = {}
        for idx in buckets[b]:
            u, v, w = g.edges[idx]
            a, bb = assignment[u], assignment[v]
            if a == bb:
                continue
            key = (a, bb) if a < bb else (bb, a)
            cand = (w, idx)
            if key not in rep or cand < rep[key]:
                rep[key] = cand
        pair_keys = sorted(rep)
        n_clusters = max(assignment) + 1
        cluster_graph = WeightedGraph(n_clusters, [(a, bb, SCALE) for a, bb in pair_keys])
        run = hz_spanner(cluster_graph, k)
        added = [rep[pair_keys[i]][1] for i in run.kept]
        kept.update(added)
        if trace is not None:
            trace.buckets.append(AspectBucket(b, assignment, added))
    return SpannerResult(g, tuple(kept), claimed)
