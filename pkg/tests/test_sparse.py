from __future__ import annotations

from fractions import Fraction

from spanwright.graph import SCALE, WeightedGraph, bad_cycle, gnm
from spanwright.hz import modified_hz_spanner
from spanwright.metrics import lightness, mst, verify_stretch
from spanwright.sparse import (
    AspectTrace,
    SparseTrace,
    aspect_spanner,
    carve_forest,
    check_cluster_diameters,
    check_sparse_potential,
    class_separation,
    sparse_spanner,
)


def budget(k, eps):
    return (2 * k - 1) * (1 + 3 * Fraction(eps))


def test_unit_graph_equals_one_modified_hz_run():
    g = gnm(60, 300, seed=2, weights="unit")
    res = sparse_spanner(g, 2, Fraction(1, 4), include_mst=False)
    ref = modified_hz_spanner(g, 2)
    assert set(res.kept) == set(ref.result.kept)


def test_sparse_bad_cycle_stretch():
    g = bad_cycle(3, 10**6 * SCALE)
    res = sparse_spanner(g, 2, Fraction(1, 2))
    assert verify_stretch(g, res, budget(2, Fraction(1, 2))).ok


def test_sparse_tree_is_identity():
    g = WeightedGraph(6, [(0, 1, SCALE), (1, 2, 3 * SCALE), (1, 3, 7), (3, 4, 5 * SCALE), (0, 5, 2)])
    res = sparse_spanner(g, 3, Fraction(1, 4))
    assert set(res.kept) == set(range(g.m))


def test_sparse_contains_mst_and_size_budget():
    for seed in (0, 3):
        g = gnm(90, 700, seed=seed)
        k = 3
        trace = SparseTrace(0, 0, Fraction(0), 0, 0)
        res = sparse_spanner(g, k, Fraction(1, 4), trace=trace)
        assert set(mst(g).kept) <= set(res.kept)
        sep = class_separation(k, Fraction(1, 4))
        assert res.size <= 2 * sep * g.n ** (1 + 1 / k) + (g.n - 1)
        assert verify_stretch(g, res, budget(k, Fraction(1, 4))).ok


def test_sparse_potential_accounting():
    for seed in (1, 5):
        g = gnm(80, 600, seed=seed)
        trace = SparseTrace(0, 0, Fraction(0), 0, 0)
        sparse_spanner(g, 2, Fraction(1, 3), trace=trace)
        assert check_sparse_potential(trace) == []


def test_cluster_diameter_bound():
    g = gnm(120, 900, seed=7)
    trace = SparseTrace(0, 0, Fraction(0), 0, 0)
    sparse_spanner(g, 3, Fraction(1, 4), trace=trace)
    assert check_cluster_diameters(g, trace) == []


def test_cluster_diameter_bound_path_trivial():
    g = WeightedGraph(10, [(i, i + 1, SCALE) for i in range(9)])
    trace = SparseTrace(0, 0, Fraction(0), 0, 0)
    sparse_spanner(g, 2, Fraction(1, 2), trace=trace)
    assert check_cluster_diameters(g, trace) == []


def test_level_zero_clusters_are_singletons():
    # Level-0 clusters are vertices, diameter zero; nothing recorded below level 1.
    trace = SparseTrace(0, 0, Fraction(0), 0, 0)
    sparse_spanner(gnm(30, 100, seed=1), 2, Fraction(1, 3), trace=trace)
    assert all(level >= 1 for _, level in trace.class_clusters)


def test_sparse_k1_keeps_everything():
    g = gnm(20, 60, seed=4)
    res = sparse_spanner(g, 1, Fraction(1, 2))
    assert set(res.kept) == set(range(g.m))


def test_carve_forest_radius():
    g = gnm(40, 39, seed=9)  # sparse; mostly forest
    forest = mst(g).kept
    radius = Fraction(5 * SCALE, 2)
    assignment = carve_forest(g, forest, radius)
    assert min(assignment) >= 0
    # Clusters are forest-connected with bounded internal distance.
    import heapq

    adj = [[] for _ in range(g.n)]
    for idx in forest:
        u, v, w = g.edges[idx]
        adj[u].append((v, w))
        adj[v].append((u, w))
    for cid in range(max(assignment) + 1):
        mem = [v for v in range(g.n) if assignment[v] == cid]
        s = mem[0]
        dist = {s: 0}
        heap = [(0, s)]
        while heap:
            d, x = heapq.heappop(heap)
            if d > dist[x]:
                continue
            for y, w in adj[x]:
                if assignment[y] == cid and d + w < dist.get(y, float("inf")):
                    dist[y] = d + w
                    heapq.heappush(heap, (d + w, y))
        assert all(v in dist for v in mem)


def test_aspect_unit_weights_single_bucket():
    g = gnm(50, 300, seed=6, weights="unit")
    trace = AspectTrace()
    res = aspect_spanner(g, 2, Fraction(1, 2), trace=trace)
    assert len(trace.buckets) == 1
    assert set(res.kept) == set(mst(g).kept) | set(trace.buckets[0].kept)
    assert verify_stretch(g, res, budget(2, Fraction(1, 2))).ok


def test_aspect_bad_cycle():
    g = bad_cycle(3, 4 * SCALE)
    res = aspect_spanner(g, 2, Fraction(1, 2))
    assert verify_stretch(g, res, budget(2, Fraction(1, 2))).ok
    assert lightness(g, res) >= 1


def test_aspect_tree_identity():
    g = WeightedGraph(5, [(0, 1, SCALE), (1, 2, 2 * SCALE), (2, 3, 4 * SCALE), (3, 4, SCALE)])
    res = aspect_spanner(g, 3, Fraction(1, 4))
    assert set(res.kept) == set(range(g.m))
    assert lightness(g, res) == 1


def test_aspect_kept_edges_cross_clusters():
    g = gnm(70, 500, seed=8)
    trace = AspectTrace()
    res = aspect_spanner(g, 2, Fraction(1, 3), trace=trace)
    assert verify_stretch(g, res, budget(2, Fraction(1, 3))).ok
    for bucket in trace.buckets:
        for idx in bucket.kept:
            u, v, _ = g.edges[idx]
            assert bucket.assignment[u] != bucket.assignment[v]


def test_aspect_stretch_random():
    for seed in (0, 1):
        g = gnm(60, 400, seed=seed)
        for k in (2, 3):
            res = aspect_spanner(g, k, Fraction(1, 4))
            assert verify_stretch(g, res, budget(k, Fraction(1, 4))).ok
