"""Linear-time unweighted (2k-1)-spanners built by ball growing.

Both variants repeatedly pick an active vertex, grow a hop-ball around it
until the next layer stops being a large multiplicative step, keep the BFS
tree of the ball plus one extra layer, and delete the inner ball.  The
modified variant prefers high-residual-degree centers and reports the
deletion order, which downstream clustering relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import GraphError, SpannerResult, WeightedGraph

# Guard against double rounding when comparing integer ball sizes against
# s * n**(1/k); the bound direction is safe (see size tests).
_TIE = 1e-9


def _growth_cap(size: int, eta: float) -> int:
    return math.floor(size * eta + _TIE)


@dataclass
class BallStep:
    """One deletion step: the removed set, the edges added, and the radius."""

    center: int
    removed: list[int]
    batch: list[int]  # host edge indices of the BFS tree added
    radius: int


@dataclass
class HzRun:
    result: SpannerResult
    steps: list[BallStep] = field(default_factory=list)

    @property
    def sets(self) -> list[list[int]]:
        return [step.removed for step in self.steps]

    @property
    def batches(self) -> list[list[int]]:
        return [step.batch for step in self.steps]


def _grow_ball(g: WeightedGraph, center: int, active: list[bool], eta: float, k: int):
    """Return (inner ball, outer ball, tree edges, radius r) for one center."""
    level = {center: 0}
    layers = [[center]]
    tree: list[int] = []
    while True:
        r = len(layers) - 1
        nxt = []
        new_tree: list[int] = []
        for x in layers[-1]:
            for y, idx in g.adj[x]:
                if active[y] and y not in level:
                    level[y] = r + 1
                    nxt.append(y)
                    new_tree.append(idx)
        inner = len(level) - len(nxt)
        if len(level) <= _growth_cap(inner, eta):
            outer = [v for layer in layers for v in layer] + nxt
            removed = outer[: len(outer) - len(nxt)]
            tree.extend(new_tree)
            return removed, outer, tree, r
        layers.append(nxt)
        tree.extend(new_tree)


def _run(g: WeightedGraph, k: int, prefer_degree: bool) -> HzRun:
    if k < 1:
        raise GraphError("spanner parameter k must be >= 1")
    n = g.n
    eta = n ** (1.0 / k) if n > 0 else 1.0
    degree_floor = math.floor(eta + _TIE)
    active = [True] * n
    residual_deg = [g.degree(v) for v in range(n)]
    eligible = {v for v in range(n) if residual_deg[v] >= degree_floor} if prefer_degree else set()
    remaining = n
    cursor = 0  # lowest possibly-active vertex id
    kept: list[int] = []
    steps: list[BallStep] = []
    while remaining:
        if prefer_degree and eligible:
            center = min(eligible)
        else:
            while not active[cursor]:
                cursor += 1
            center = cursor
        removed, outer, tree, radius = _grow_ball(g, center, active, eta, k)
        assert radius <= k - 1, "radius bound broken"
        kept.extend(tree)
        for v in removed:
            active[v] = False
        remaining -= len(removed)
        for v in removed:
            eligible.discard(v)
            for u, _ in g.adj[v]:
                if active[u]:
                    residual_deg[u] -= 1
                    if prefer_degree and residual_deg[u] < degree_floor:
                        eligible.discard(u)
        steps.append(BallStep(center, removed, tree, radius))
    result = SpannerResult(g, tuple(kept), claimed_stretch=Fraction(2 * k - 1))
    result.metrics["hop_stretch"] = 2 * k - 1
    result.metrics["radii"] = [s.radius for s in steps]
    return HzRun(result, steps)


def hz_spanner(g: WeightedGraph, k: int) -> SpannerResult:
    """(2k-1) hop-stretch spanner; weights are ignored.  Centers are the
    lowest active vertex id, for determinism."""
    return _run(g, k, prefer_degree=False).result


def modified_hz_spanner(g: WeightedGraph, k: int) -> HzRun:
    """Degree-priority variant returning the deletion partition.

    Centers with residual degree large enough that the inner ball cannot stop
    at radius 0 are preferred (lowest id among them).  Consequently every
    emitted non-singleton set has at least n**(1/k) vertices, and once a
    singleton is emitted all later sets are singletons.
    """
    return _run(g, k, prefer_degree=True)


def as_unit_graph(g: WeightedGraph) -> WeightedGraph:
    """Copy of g with all weights 1, for hop-metric verification."""
    from .graph import SCALE

    return WeightedGraph(g.n, [(u, v, SCALE) for u, v, _ in g.edges])
