from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from spanwright.oracle import (
    EsApsp,
    IncrementalDistanceOracle,
    LoggedOracle,
    OracleError,
    RadiusGrid,
    replay_log,
)

INF = math.inf


def exact_dijkstra(adj, s):
    import heapq

    dist = {s: 0}
    heap = [(0, s)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for y, w in adj[x].items():
            if d + w < dist.get(y, INF):
                dist[y] = d + w
                heapq.heappush(heap, (d + w, y))
    return dist


class Mirror:
    """Plain adjacency mirror with the same improving-reinsert rule."""

    def __init__(self, n):
        self.adj = [dict() for _ in range(n)]

    def insert(self, u, v, w):
        cur = self.adj[u].get(v)
        if cur is not None and cur <= w:
            return
        self.adj[u][v] = w
        self.adj[v][u] = w

    def dist(self, u, v):
        return exact_dijkstra(self.adj, u).get(v, INF)


def test_radius_grid():
    grid = RadiusGrid(Fraction(1, 2), Fraction(100))
    assert grid.value(0) == 1
    assert grid.floor(-1) == 0
    assert grid.largest_below(1) == -1
    assert grid.largest_below(2) == 1  # 1.5 < 2 <= 2.25
    for idx in range(len(grid.powers) - 1):
        assert grid.powers[idx] < grid.powers[idx + 1]


def test_single_vertex_query():
    oracle = IncrementalDistanceOracle(1, 1, 5, Fraction(1, 2))
    assert oracle.query(0, 0) == 0


def test_fresh_state_is_infinite():
    oracle = IncrementalDistanceOracle(8, 2, 10, Fraction(1, 2))
    assert oracle.query(0, 5) == INF
    assert oracle.query(3, 3) == 0


def test_class_count_matches_config():
    eps = Fraction(1, 2)
    d = 20
    oracle = IncrementalDistanceOracle(10, 3, d, eps)
    for i in range(3):
        target = (3 + 2 * eps) ** i * d
        power = Fraction(1)
        count = 0
        while power < target:
            power *= 1 + eps
            count += 1
        assert oracle.radius_caps[i] == count


def test_single_edge_query():
    oracle = IncrementalDistanceOracle(4, 2, 10, Fraction(1, 2))
    oracle.insert(0, 1, 1)
    assert oracle.query(0, 1) == 1
    assert oracle.query(1, 0) == 1
    assert oracle.check_invariants() == []


def test_path_beyond_threshold_overestimates_only():
    oracle = IncrementalDistanceOracle(6, 2, 3, Fraction(1, 2))
    for i in range(5):
        oracle.insert(i, i + 1, 2)
    got = oracle.query(0, 5)
    assert got >= 10  # true distance; inf allowed


def test_rejects_bad_inserts():
    oracle = IncrementalDistanceOracle(4, 2, 5, Fraction(1, 2))
    with pytest.raises(OracleError):
        oracle.insert(0, 0, 1)
    with pytest.raises(OracleError):
        oracle.insert(0, 9, 1)
    with pytest.raises(OracleError):
        oracle.insert(0, 1, 0)


def test_improving_reinserts():
    oracle = IncrementalDistanceOracle(3, 2, 10, Fraction(1, 2))
    assert oracle.insert(0, 1, 5)
    assert not oracle.insert(0, 1, 5)
    assert not oracle.insert(0, 1, 7)
    assert oracle.insert(0, 1, 2)
    assert oracle.query(0, 1) == 2
    assert oracle.check_invariants() == []


def test_invariant_sweep_under_random_insertions():
    rng = random.Random(17)
    n = 60
    oracle = IncrementalDistanceOracle(n, 2, 20, Fraction(1, 2))
    mirror = Mirror(n)
    for step in range(500):
        u = rng.randrange(n)
        v = rng.randrange(n)
        while v == u:
            v = rng.randrange(n)
        w = rng.randint(1, 8)
        oracle.insert(u, v, w)
        mirror.insert(u, v, w)
        if step % 25 == 0:
            assert oracle.check_invariants() == []
    assert oracle.check_invariants() == []
    for _ in range(200):
        u = rng.randrange(n)
        v = rng.randrange(n)
        truth = mirror.dist(u, v)
        got = oracle.query(u, v)
        assert got >= truth


def test_query_contract_small_distances():
    rng = random.Random(5)
    n = 100
    k, d, eps = 3, 30, Fraction(1, 2)
    oracle = IncrementalDistanceOracle(n, k, d, eps)
    mirror = Mirror(n)
    bound = oracle.stretch_bound()
    assert bound == 2 * 4**2 - 1 == 31
    checked_small = 0
    for step in range(2000):
        u = rng.randrange(n)
        v = rng.randrange(n)
        while v == u:
            v = rng.randrange(n)
        oracle.insert(u, v, rng.randint(1, 6))
        mirror.insert(u, v, rng.randint(1, 6))
        # mirror must stay identical: reuse the same weight stream
    # rebuild both identically instead: the streams above diverged
    oracle = IncrementalDistanceOracle(n, k, d, eps)
    mirror = Mirror(n)
    rng = random.Random(5)
    for step in range(2000):
        u = rng.randrange(n)
        v = rng.randrange(n)
        while v == u:
            v = rng.randrange(n)
        w = rng.randint(1, 6)
        oracle.insert(u, v, w)
        mirror.insert(u, v, w)
        if step % 2 == 0:
            a = rng.randrange(n)
            b = rng.randrange(n)
            truth = mirror.dist(a, b)
            got = oracle.query(a, b)
            assert got >= truth
            if truth <= d:
                assert got <= bound * truth
                checked_small += 1
    assert checked_small > 300
    assert oracle.check_invariants() == []


def test_determinism_and_log_replay():
    rng = random.Random(9)
    n = 40
    oracle = LoggedOracle(IncrementalDistanceOracle(n, 2, 12, Fraction(1, 2)))
    last = 0
    for _ in range(300):
        # adaptive flavor: the next edge depends on the previous answer
        u = (rng.randrange(n) + (1 if last == INF else int(last))) % n
        v = rng.randrange(n)
        if u == v:
            v = (v + 1) % n
        oracle.insert(u, v, rng.randint(1, 5))
        last = oracle.query(rng.randrange(n), rng.randrange(n))
    assert replay_log(oracle.lines, n, 2, 12, Fraction(1, 2)) == []
    tampered = list(oracle.lines)
    for i, line in enumerate(tampered):
        if line.startswith("?") and not line.endswith("inf"):
            parts = line.split()
            parts[3] = str(int(parts[3]) + 1)
            tampered[i] = " ".join(parts)
            break
    assert replay_log(tampered, n, 2, 12, Fraction(1, 2)) != []


def test_doubling_preserves_answers():
    # budget starts at n and must double several times
    n = 10
    oracle = IncrementalDistanceOracle(n, 2, 10, Fraction(1, 2))
    mirror = Mirror(n)
    rng = random.Random(3)
    for _ in range(120):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        w = rng.randint(1, 4)
        oracle.insert(u, v, w)
        mirror.insert(u, v, w)
    assert oracle.budget > n  # doubled at least twice from the initial n
    assert len(oracle.log) <= oracle.budget
    assert oracle.check_invariants() == []
    for u in range(n):
        for v in range(n):
            truth = mirror.dist(u, v)
            got = oracle.query(u, v)
            assert got >= truth
            if truth <= 10:
                assert got <= oracle.stretch_bound() * truth


def test_es_apsp_chain_threshold():
    es = EsApsp(4, 2)
    es.insert(0, 1, 1)
    es.insert(1, 2, 1)
    assert es.query(0, 2) == 2
    es.insert(2, 3, 1)
    assert es.query(0, 3) == INF


def test_es_apsp_matches_dijkstra():
    rng = random.Random(11)
    n, d = 50, 8
    es = EsApsp(n, d)
    mirror = Mirror(n)
    history = []
    for _ in range(300):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        w = rng.randint(1, 5)
        es.insert(u, v, w)
        mirror.insert(u, v, w)
        a, b = rng.randrange(n), rng.randrange(n)
        truth = mirror.dist(a, b)
        expect = truth if truth <= d else INF
        got = es.query(a, b)
        assert got == expect
        history.append(((a, b), got))
    # distances never increase across the log
    seen = {}
    for (a, b), got in history:
        if (a, b) in seen and seen[(a, b)] != INF:
            assert got <= seen[(a, b)] or got == seen[(a, b)]
        seen[(a, b)] = got


def test_es_apsp_monotone():
    rng = random.Random(2)
    n, d = 30, 10
    es = EsApsp(n, d)
    pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(50)]
    pairs = [(a, b) for a, b in pairs if a != b]
    last = {p: INF for p in pairs}
    for _ in range(200):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        es.insert(u, v, rng.randint(1, 4))
        for p in pairs:
            cur = es.query(*p)
            assert cur <= last[p]
            last[p] = cur
