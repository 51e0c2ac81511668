"""Cluster hierarchies over a unit spanning tree, and the two-phase framework
that turns a bounded-aspect-ratio spanner algorithm plus a sparse spanner
algorithm into a light spanner for general graphs.

The preparation phase rounds weights to multiples of the average tree-edge
weight, subdivides tree edges into unit pieces, and hands the light edges to
the sparse algorithm.  The bootstrapping phase buckets the remaining edges
by geometric weight scale, contracts a grown cluster hierarchy per scale,
and runs the bounded-aspect algorithm on each contracted graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .graph import GraphError, SpannerResult, WeightedGraph, run_per_component
from .metrics import as_stretch, mst


def _ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass
class ClusterLevel:
    threshold: Fraction
    assignment: list[int]
    members: list[list[int]]
    cores: list[list[int]]


@dataclass
class ClusterHierarchy:
    n: int
    levels: list[ClusterLevel]

    def level(self, i: int) -> ClusterLevel:
        return self.levels[i]


def build_clustering(
    n: int,
    unit_tree_edges: list[tuple[int, int]],
    k: int,
    growth: int,
    eps,
    max_level: int,
) -> ClusterHierarchy:
    """Grow nested clusters over a unit-weight tree.

    Level i clusters hold at least eps * growth**(i*k) vertices (unless a
    whole component is smaller) and are connected subtrees, built by growing
    cores one neighbor at a time and folding undersized leftovers into an
    adjacent core.  Levels refine upward: each level is grown on the tree
    contracted by the previous one.
    """
    eps = as_stretch(eps)
    if growth < 2 or k < 1 or not (0 < eps <= 1):
        raise GraphError("need growth >= 2, k >= 1, eps in (0, 1]")
    levels: list[ClusterLevel] = []
    prev_assignment = list(range(n))
    prev_count = n
    prev_members = [[v] for v in range(n)]
    for i in range(max_level + 1):
        threshold = eps * Fraction(growth) ** (i * k)
        neighbors: list[set[int]] = [set() for _ in range(prev_count)]
        for a, b in unit_tree_edges:
            ca, cb = prev_assignment[a], prev_assignment[b]
            if ca != cb:
                neighbors[ca].add(cb)
                neighbors[cb].add(ca)
        sorted_neighbors = [sorted(s) for s in neighbors]
        sizes = [len(m) for m in prev_members]
        cluster_of = [-1] * prev_count
        in_core = [False] * prev_count
        groups: list[list[int]] = []
        group_cores: list[list[int]] = []
        for start in range(prev_count):
            if cluster_of[start] != -1:
                continue
            bag = [start]
            cluster_of[start] = -2  # provisional
            size = sizes[start]
            queue = deque([start])
            while size < threshold:
                nxt = None
                while queue:
                    x = queue[0]
                    for y in sorted_neighbors[x]:
                        if cluster_of[y] == -1:
                            nxt = y
                            break
                    if nxt is not None:
                        break
                    queue.popleft()
                if nxt is None:
                    break
                cluster_of[nxt] = -2
                bag.append(nxt)
                queue.append(nxt)
                size += sizes[nxt]
            if size >= threshold:
                cid = len(groups)
                groups.append(bag)
                group_cores.append(list(bag))
                for x in bag:
                    cluster_of[x] = cid
                    in_core[x] = True
                continue
            # Undersized leftover: fold into an adjacent core, or stand alone
            # when the whole component is this bag.
            merge_edge = None
            for x in sorted(bag):
                for y in sorted_neighbors[x]:
                    if cluster_of[y] >= 0 and in_core[y]:
                        merge_edge = (x, y)
                        break
                if merge_edge:
                    break
            if merge_edge is None:
                has_clustered_neighbor = any(
                    cluster_of[y] >= 0 for x in bag for y in sorted_neighbors[x]
                )
                if has_clustered_neighbor:
                    raise GraphError("leftover cluster saw no adjacent core")
                cid = len(groups)
                groups.append(bag)
                group_cores.append(list(bag))
                for x in bag:
                    cluster_of[x] = cid
                    in_core[x] = True
                continue
            target = cluster_of[merge_edge[1]]
            groups[target].extend(bag)
            for x in bag:
                cluster_of[x] = target
        assignment = [0] * n
        members: list[list[int]] = [[] for _ in groups]
        cores: list[list[int]] = [[] for _ in groups]
        for node, cid in enumerate(cluster_of):
            for v in prev_members[node]:
                assignment[v] = cid
                members[cid].append(v)
                if in_core[node]:
                    cores[cid].append(v)
        levels.append(ClusterLevel(threshold, assignment, members, cores))
        prev_assignment = assignment
        prev_count = len(groups)
        prev_members = members
    return ClusterHierarchy(n, levels)


def tree_cluster_diameter(unit_tree_edges: list[tuple[int, int]], members: list[int]) -> int:
    """Hop diameter of a member set inside the unit tree (double BFS)."""
    mem = set(members)
    adj: dict[int, list[int]] = {v: [] for v in members}
    for a, b in unit_tree_edges:
        if a in mem and b in mem:
            adj[a].append(b)
            adj[b].append(a)

    def far(source):
        dist = {source: 0}
        queue = deque([source])
        best = (0, source)
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    if dist[y] > best[0]:
                        best = (dist[y], y)
                    queue.append(y)
        return best

    if not members:
        return 0
    _, a = far(members[0])
    d, _ = far(a)
    return d


# ---------------------------------------------------------------------------
# Framework


@dataclass
class AlgorithmHandle:
    """A spanner algorithm with its claimed stretch.

    For the bounded-aspect slot the callable receives graphs whose minimum
    spanning tree edges all share the minimum weight, with maximum weight at
    most growth**k times it; implementations normalize internally.  Summable
    running time across scales is a documentation-level contract only.
    """

    name: str
    run: Callable[[WeightedGraph], SpannerResult]
    stretch: Fraction


@dataclass
class FrameworkConfig:
    k: int
    growth: int
    eps: Fraction
    a1: AlgorithmHandle
    a2: AlgorithmHandle

    def __post_init__(self):
        self.eps = as_stretch(self.eps)
        if self.k < 1 or self.growth < 2 or not (0 < self.eps <= 1):
            raise GraphError("need k >= 1, growth >= 2, eps in (0, 1]")


@dataclass
class FrameworkTrace:
    prepared_vertices: int = 0
    host_vertices: int = 0
    level_records: list[dict] = field(default_factory=list)


def framework_claimed_stretch(cfg: FrameworkConfig) -> Fraction:
    return max((1 + 8 * cfg.eps) * (1 + cfg.eps) * cfg.a1.stretch, cfg.a2.stretch)


def framework_run(
    g: WeightedGraph, cfg: FrameworkConfig, trace: Optional[FrameworkTrace] = None
) -> SpannerResult:
    """Light spanner for a general graph; runs per connected component."""
    result = run_per_component(g, lambda sub: _framework_connected(sub, cfg, trace))
    result.claimed_stretch = framework_claimed_stretch(cfg)
    return result


def _framework_connected(g, cfg, trace) -> SpannerResult:
    claimed = framework_claimed_stretch(cfg)
    if g.m == 0 or g.n < 2:
        return SpannerResult(g, tuple(range(g.m)), claimed)
    tree = mst(g)
    tree_weight = tree.weight_units()
    w_prime = Fraction(tree_weight, g.n - 1)
    kept: set[int] = set(tree.kept)

    # Light edges: at most w_prime / eps, handled by the sparse algorithm.
    light_cut = w_prime / cfg.eps
    light_idx = [i for i, (_, _, w) in enumerate(g.edges) if w <= light_cut]
    if light_idx:
        sub = WeightedGraph(g.n, [g.edges[i] for i in light_idx])
        h2 = cfg.a2.run(sub)
        kept.update(light_idx[i] for i in h2.kept)

    # Prepared graph: weights rounded up to multiples of w_prime, tree edges
    # subdivided into unit pieces (fewer than 2n vertices total).
    q = [_ceil_fraction(Fraction(w) / w_prime) for _, _, w in g.edges]
    tree_set = set(tree.kept)
    n1 = g.n
    unit_edges: list[tuple[int, int]] = []
    for idx in tree.kept:
        u, v, _ = g.edges[idx]
        prev = u
        for _ in range(q[idx] - 1):
            unit_edges.append((prev, n1))
            prev = n1
            n1 += 1
        unit_edges.append((prev, v))
    assert n1 < 2 * g.n
    if trace is not None:
        trace.prepared_vertices += n1
        trace.host_vertices += g.n

    base = cfg.growth**cfg.k
    buckets: dict[int, list[int]] = {}
    for idx in range(g.m):
        if idx in tree_set:
            continue
        level = 0
        cap = base
        while q[idx] >= cap:
            cap *= base
            level += 1
        buckets.setdefault(level, []).append(idx)
    if not buckets:
        return SpannerResult(g, tuple(kept), claimed)
    hierarchy = build_clustering(n1, unit_edges, cfg.k, cfg.growth, cfg.eps, max(buckets))
    for level in sorted(buckets):
        lvl = hierarchy.levels[level]
        scale = cfg.growth ** (level * cfg.k)
        assignment = lvl.assignment
        tree_pairs: set[tuple[int, int]] = set()
        for a, b in unit_edges:
            ca, cb = assignment[a], assignment[b]
            if ca != cb:
                tree_pairs.add((ca, cb) if ca < cb else (cb, ca))
        rep: dict[tuple[int, int], tuple[int, int]] = {}
        intra = 0
        for idx in buckets[level]:
            u, v, _ = g.edges[idx]
            ca, cb = assignment[u], assignment[v]
            if ca == cb:
                intra += 1
                continue
            key = (ca, cb) if ca < cb else (cb, ca)
            if key in tree_pairs:
                continue  # the cheaper contracted tree edge already covers it
            cand = (q[idx], idx)
            if key not in rep or cand < rep[key]:
                rep[key] = cand
        pairs = sorted(tree_pairs)
        scale_edges = [(a, b, scale) for a, b in pairs]
        host_map: list[Optional[int]] = [None] * len(pairs)
        for key in sorted(rep):
            scale_edges.append((key[0], key[1], rep[key][0]))
            host_map.append(rep[key][1])
        level_graph = WeightedGraph(len(lvl.members), scale_edges)
        res = cfg.a1.run(level_graph)
        for pos in res.kept:
            host = host_map[pos]
            if host is not None:
                kept.add(host)
        if trace is not None:
            trace.level_records.append(
                {
                    "level": level,
                    "bucket_edges": len(buckets[level]),
                    "intra_cluster_edges": intra,
                    "clusters": len(lvl.members),
                    "max_tree_diameter": max(
                        (tree_cluster_diameter(unit_edges, mem) for mem in lvl.members),
                        default=0,
                    ),
                    "diameter_bound": cfg.eps * 4 * Fraction(cfg.growth) ** (level * cfg.k),
                    "kept": sum(1 for pos in res.kept if host_map[pos] is not None),
                }
            )
    return SpannerResult(g, tuple(kept), claimed)
