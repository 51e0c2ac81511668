"""Greedy spanners: the exact classic, the oracle-driven approximate variant,
its unweighted girth variant, and the bounded-threshold APSP variant.

The two theorem-level assemblies (fast_light_spanner, slow_good_spanner) plug
these into the clustering framework.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import Optional

from .graph import GraphError, SpannerResult, WeightedGraph
from .metrics import as_stretch
from .oracle import EsApsp, IncrementalDistanceOracle, LoggedOracle

INF = math.inf


def _ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor_fraction(x: Fraction) -> int:
    return x.numerator // x.denominator


class _PartialSpanner:
    """Growing adjacency with bounded point-to-point queries."""

    def __init__(self, n: int):
        self.adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]

    def add(self, u: int, v: int, w: int) -> None:
        self.adj[u].append((v, w))
        self.adj[v].append((u, w))

    def within(self, source: int, target: int, cutoff: int) -> bool:
        """True when d(source, target) <= cutoff in the current subgraph."""
        if source == target:
            return True
        dist = {source: 0}
        heap = [(0, source)]
        while heap:
            d, x = heapq.heappop(heap)
            if d > dist[x]:
                continue
            if x == target:
                return True
            for y, w in self.adj[x]:
                nd = d + w
                if nd <= cutoff and nd < dist.get(y, INF):
                    dist[y] = nd
                    heapq.heappush(heap, (nd, y))
        return False


def greedy_spanner(g: WeightedGraph, t) -> SpannerResult:
    """Classic greedy t-spanner: scan edges by (weight, index) and keep an
    edge exactly when the current spanner distance exceeds t times its
    weight."""
    t = as_stretch(t)
    if t < 1:
        raise GraphError("stretch must be >= 1")
    partial = _PartialSpanner(g.n)
    kept: list[int] = []
    for idx in sorted(range(g.m), key=lambda i: (g.edges[i][2], i)):
        u, v, w = g.edges[idx]
        if not partial.within(u, v, _floor_fraction(t * w)):
            kept.append(idx)
            partial.add(u, v, w)
    return SpannerResult(g, tuple(kept), t)


def normalized_weights(g: WeightedGraph) -> tuple[list[int], int]:
    """Integer weights ceil(w / w_min) and the normalization unit w_min."""
    w_min = min(w for _, _, w in g.edges)
    return [-((-w) // w_min) for _, _, w in g.edges], w_min


def approx_greedy_spanner(
    g: WeightedGraph,
    k: int,
    eps,
    *,
    oracle_k: int = 2,
    oracle_eps=Fraction(1, 2),
    keep_log: bool = False,
) -> SpannerResult:
    """Greedy scan answered by the incremental distance oracle.

    Weights are first normalized to integers (divide by the minimum, round
    up), which costs at most a factor recorded in the claimed stretch.  An
    edge is kept when the oracle estimate exceeds t times its normalized
    weight, with t = c1 * (1 + eps) * (2k - 1) and c1 the oracle's own
    stretch bound.
    """
    eps = as_stretch(eps)
    oracle_eps = as_stretch(oracle_eps)
    if k < 1:
        raise GraphError("k must be >= 1")
    c1 = 2 * (3 + 2 * oracle_eps) ** (oracle_k - 1) - 1
    t = c1 * (1 + eps) * (2 * k - 1)
    if g.m == 0:
        return SpannerResult(g, (), t)
    norm, w_min = normalized_weights(g)
    w_top = max(norm)
    threshold = max(1, _ceil_fraction(t * w_top))
    oracle = IncrementalDistanceOracle(g.n, oracle_k, threshold, oracle_eps)
    logger = LoggedOracle(oracle) if keep_log else oracle
    kept: list[int] = []
    for idx in sorted(range(g.m), key=lambda i: (g.edges[i][2], i)):
        u, v, _ = g.edges[idx]
        if logger.query(u, v) > t * norm[idx]:
            kept.append(idx)
            logger.insert(u, v, norm[idx])
    rounding = max(Fraction(w_min * norm[i], g.edges[i][2]) for i in range(g.m))
    result = SpannerResult(g, tuple(kept), t * rounding)
    result.metrics["oracle_params"] = (g.n, oracle_k, threshold, oracle_eps)
    if keep_log:
        result.metrics["oracle_log"] = logger.lines
    return result


def girth_spanner(
    g: WeightedGraph,
    k: int,
    *,
    oracle_k: int = 2,
    oracle_eps=Fraction(1, 2),
) -> SpannerResult:
    """Greedy scan on the hop metric: keep an edge when the oracle sees no
    path of at most c1*(2k-1) edges between its endpoints.  The output has
    unweighted girth above 2k, and weighted stretch c1*(2k-1) because edges
    arrive in nondecreasing weight order."""
    oracle_eps = as_stretch(oracle_eps)
    if k < 1:
        raise GraphError("k must be >= 1")
    c1 = 2 * (3 + 2 * oracle_eps) ** (oracle_k - 1) - 1
    hop_threshold = _ceil_fraction(c1 * (2 * k - 1))
    if g.m == 0:
        return SpannerResult(g, (), Fraction(hop_threshold))
    oracle = IncrementalDistanceOracle(g.n, oracle_k, hop_threshold, oracle_eps)
    kept: list[int] = []
    for idx in sorted(range(g.m), key=lambda i: (g.edges[i][2], i)):
        u, v, _ = g.edges[idx]
        if oracle.query(u, v) > hop_threshold:
            kept.append(idx)
            oracle.insert(u, v, 1)
    result = SpannerResult(g, tuple(kept), Fraction(hop_threshold))
    result.metrics["hop_threshold"] = hop_threshold
    return result


def quad_greedy_spanner(g: WeightedGraph, k: int, eps) -> SpannerResult:
    """Greedy scan answered by the exact threshold-bounded incremental APSP.

    Edges whose round-up to an integer multiple of the minimum weight would
    cost more than a (1+eps) factor are handled by the exact greedy spanner
    at stretch 2k-1; the rest are rounded and scanned against the APSP with
    threshold (1+eps)(2k-1) times their rounded weight.
    """
    eps = as_stretch(eps)
    if k < 1:
        raise GraphError("k must be >= 1")
    if eps <= 0:
        raise GraphError("eps must be positive")
    claimed = (1 + 3 * eps) * (2 * k - 1)
    if g.m == 0:
        return SpannerResult(g, (), claimed)
    norm, w_min = normalized_weights(g)
    exact_part: list[int] = []
    rounded_part: list[int] = []
    for idx, (_, _, w) in enumerate(g.edges):
        if Fraction(norm[idx] * w_min) > (1 + eps) * w:
            exact_part.append(idx)
        else:
            rounded_part.append(idx)
    kept: list[int] = []
    if exact_part:
        light = WeightedGraph(g.n, [g.edges[i] for i in exact_part])
        sub = greedy_spanner(light, 2 * k - 1)
        kept.extend(exact_part[i] for i in sub.kept)
    if rounded_part:
        tau = (1 + eps) * (2 * k - 1)
        w_top = max(norm[i] for i in rounded_part)
        es = EsApsp(g.n, max(1, _ceil_fraction(tau * w_top)))
        for idx in sorted(rounded_part, key=lambda i: (g.edges[i][2], i)):
            u, v, _ = g.edges[idx]
            if es.query(u, v) > tau * norm[idx]:
                kept.append(idx)
                es.insert(u, v, norm[idx])
    return SpannerResult(g, tuple(kept), claimed)


# ---------------------------------------------------------------------------
# Theorem-level assemblies via the clustering framework


def fast_light_spanner(g: WeightedGraph, k: int, eps_prime=Fraction(1, 2)) -> SpannerResult:
    """O(k)-stretch spanner with optimal-order size and lightness: the
    clustering framework with the oracle-driven greedy on each bounded
    weight scale and the girth variant on the light edges.

    eps_prime is the oracle accuracy knob (it scales the constant inside the
    O(k), not the shape of the guarantee).
    """
    from .clustering import AlgorithmHandle, FrameworkConfig, framework_run

    eps_prime = as_stretch(eps_prime)
    c1 = 2 * (3 + 2 * eps_prime) - 1
    fw_eps = Fraction(1)
    f1 = 2 * c1 * (1 + fw_eps) * (2 * k - 1)  # rounding x oracle greedy claim
    f2 = c1 * (2 * k - 1)
    a1 = AlgorithmHandle(
        "approx-greedy",
        lambda sub: approx_greedy_spanner(sub, k, fw_eps, oracle_eps=eps_prime),
        f1,
    )
    a2 = AlgorithmHandle(
        "girth",
        lambda sub: girth_spanner(sub, k, oracle_eps=eps_prime),
        f2,
    )
    cfg = FrameworkConfig(k=k, growth=2, eps=fw_eps, a1=a1, a2=a2)
    return framework_run(g, cfg)


def slow_good_spanner(g: WeightedGraph, k: int, eps) -> SpannerResult:
    """(1+3*eps)(2k-1)-spanner with optimal-order size and lightness: the
    framework with the threshold-APSP greedy per weight scale and the exact
    greedy at 2k-1 on the light edges.  Internal accuracies run at eps/8 so
    the composed bound stays within the claimed budget for eps <= 1."""
    eps = as_stretch(eps)
    if not (0 < eps <= 1):
        raise GraphError("eps must be in (0, 1]")
    from .clustering import AlgorithmHandle, FrameworkConfig, framework_run

    a = eps / 8
    a1 = AlgorithmHandle(
        "quad-greedy",
        lambda sub: quad_greedy_spanner(sub, k, a),
        (1 + 3 * a) * (2 * k - 1),
    )
    a2 = AlgorithmHandle(
        "greedy",
        lambda sub: greedy_spanner(sub, 2 * k - 1),
        Fraction(2 * k - 1),
    )
    cfg = FrameworkConfig(k=k, growth=2, eps=a, a1=a1, a2=a2)
    result = framework_run(g, cfg)
    result.claimed_stretch = (1 + 3 * eps) * (2 * k - 1)
    return result
