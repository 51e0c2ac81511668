from __future__ import annotations

import math

from spanwright.graph import SCALE, WeightedGraph, gnm
from spanwright.hz import as_unit_graph, hz_spanner, modified_hz_spanner
from spanwright.metrics import verify_stretch

from .reference import hop_distances


def star(n):
    return WeightedGraph(n, [(0, i, SCALE) for i in range(1, n)])


def path(n):
    return WeightedGraph(n, [(i, i + 1, SCALE) for i in range(n - 1)])


def hop_stretch_ok(g, kept, bound):
    unit = as_unit_graph(g)
    return verify_stretch(unit, kept, bound).ok


def test_star_keeps_all_edges():
    for k in (1, 2, 3):
        res = hz_spanner(star(9), k)
        assert set(res.kept) == set(range(8))


def test_k4_k1_keeps_clique():
    g = WeightedGraph(4, [(u, v, SCALE) for u in range(4) for v in range(u + 1, 4)])
    res = hz_spanner(g, 1)
    assert set(res.kept) == set(range(6))
    assert hop_stretch_ok(g, res.kept, 1)


def test_gnm_stretch_and_size():
    g = gnm(100, 1000, seed=4, weights="unit")
    res = hz_spanner(g, 2)
    assert hop_stretch_ok(g, res.kept, 3)
    assert res.size <= 4 * 100**1.5


def test_radius_bound():
    for seed in range(3):
        g = gnm(60, 300, seed=seed, weights="unit")
        for k in (1, 2, 3):
            res = hz_spanner(g, k)
            assert all(r <= k - 1 for r in res.metrics["radii"])


def test_per_ball_edge_budget():
    g = gnm(80, 700, seed=6, weights="unit")
    for k in (2, 3):
        run = modified_hz_spanner(g, k)
        eta = g.n ** (1.0 / k)
        for step in run.steps:
            assert len(step.batch) <= math.ceil(len(step.removed) * eta) - 1 or not step.batch
        assert run.result.size <= g.n * eta + g.n


def test_modified_path_k2():
    g = path(4)
    run = modified_hz_spanner(g, 2)
    assert set(run.result.kept) == {0, 1, 2}
    covered = sorted(v for s in run.sets for v in s)
    assert covered == [0, 1, 2, 3]


def test_modified_empty_graph():
    g = WeightedGraph(5, [])
    run = modified_hz_spanner(g, 2)
    assert run.result.kept == ()
    assert run.sets == [[0], [1], [2], [3], [4]]


def assert_partition_properties(g, k, run):
    n = g.n
    eta = n ** (1.0 / k)
    seen: set[int] = set()
    order: dict[int, int] = {}
    for i, removed in enumerate(run.sets):
        for v in removed:
            assert v not in seen
            seen.add(v)
            order[v] = i
    assert seen == set(range(n))
    # Hop diameter of each deleted set inside the final spanner.
    for i, step in enumerate(run.steps):
        members = set(step.removed)
        for anchor in step.removed:
            hops = hop_distances(g, anchor, run.result.kept)
            assert all(hops[v] <= 2 * k - 2 for v in members)
        # Batch cap and direction.
        assert len(step.batch) < len(members) * eta or not step.batch
        for idx in step.batch:
            u, v, _ = g.edges[idx]
            assert order[u] >= i and order[v] >= i
    # Size-ordered prefix, then singletons forever.
    sizes = [len(s) for s in run.sets]
    first_singleton = next((i for i, s in enumerate(sizes) if s == 1), len(sizes))
    for i, s in enumerate(sizes):
        if i < first_singleton:
            assert s >= eta - 1e-9
        else:
            assert s == 1


def test_modified_partition_properties():
    g = gnm(80, 800, seed=8, weights="unit")
    run = modified_hz_spanner(g, 3)
    assert_partition_properties(g, 3, run)
    assert hop_stretch_ok(g, run.result.kept, 5)


def test_modified_partition_properties_more_seeds():
    for seed in (1, 2, 9):
        g = gnm(50, 400, seed=seed, weights="unit")
        for k in (2, 3):
            run = modified_hz_spanner(g, k)
            assert_partition_properties(g, k, run)
            assert hop_stretch_ok(g, run.result.kept, 2 * k - 1)
