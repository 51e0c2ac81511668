"""Deterministic incremental approximate distance oracle for short distances,
plus an incremental exact APSP bounded by a distance threshold.

The oracle maintains, per level i, a ball around every promoted root whose
degree load stays under a level budget.  When an insertion pushes a ball over
budget, the ball is frozen (emitted), its radius shrunk to the largest grid
power below its current reach, and the live ball truncated; emitted balls are
claimed into per-radius-class disjoint families whose centers form the next
level, with detour pointers left behind for query navigation.  Everything is
integer or exact-rational arithmetic: radii live on a precomputed power grid,
so no runtime floating point is involved.
"""

from __future__ import annotations

import heapq
import math
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .metrics import as_stretch

INF = math.inf


class OracleError(ValueError):
    """Bad oracle input or a broken internal invariant."""


class RadiusGrid:
    """Ascending exact powers of (1+eps); index -1 denotes radius zero.

    Distances are integers, so each power only matters through its floor;
    the floors are precomputed as comparison keys.
    """

    def __init__(self, eps: Fraction, top: Fraction):
        base = 1 + eps
        powers = [Fraction(1)]
        while powers[-1] < top:
            powers.append(powers[-1] * base)
        self.powers = powers
        self.floors = [p.numerator // p.denominator for p in powers]

    def floor(self, idx: int) -> int:
        return 0 if idx < 0 else self.floors[idx]

    def value(self, idx: int) -> Fraction:
        return Fraction(0) if idx < 0 else self.powers[idx]

    def at_least(self, target: Fraction) -> int:
        idx = bisect_left(self.powers, target)
        if idx >= len(self.powers):
            raise OracleError("radius grid too small")
        return idx

    def largest_below(self, dist: int) -> int:
        return bisect_left(self.powers, Fraction(dist)) - 1


def _ceil_root_power(m: int, num: int, den: int) -> int:
    """Smallest integer c with c**den >= m**num (exact)."""
    target = m**num
    c = max(1, round(m ** (num / den)))
    while c**den < target:
        c += 1
    while c > 1 and (c - 1) ** den >= target:
        c -= 1
    return c


@dataclass(frozen=True)
class FrozenTree:
    """Snapshot of a ball at freeze time.

    radius_idx is the post-shrink radius index; the radius class of the
    snapshot is radius_idx + 1.  dist maps members to exact distances, reach
    is the maximum of those, and load is the degree load that forced the
    freeze (always above the level budget).
    """

    root: int
    level: int
    radius_idx: int
    dist: dict
    members: frozenset
    load: int
    reach: int


class LiveTree:
    __slots__ = ("root", "radius_idx", "dist", "parent", "members", "load")

    def __init__(self, root: int, radius_idx: int):
        self.root = root
        self.radius_idx = radius_idx
        self.dist = {root: 0}
        self.parent = {root: None}
        self.members: set[int] = set()
        self.load = 0


class LevelStructure:
    """All live balls of one level plus the vertex -> roots reverse index."""

    def __init__(self, level: int, radius_cap: int, load_cap: int):
        self.level = level
        self.cap_idx = radius_cap
        self.load_cap = load_cap
        self.trees: dict[int, LiveTree] = {}
        self.containing: dict[int, set[int]] = {}
        self.shrink_count: Counter = Counter()

    def insert_vertex(self, root: int, oracle: "IncrementalDistanceOracle") -> list[FrozenTree]:
        tree = LiveTree(root, self.cap_idx)
        self.trees[root] = tree
        return self._grow(tree, [(0, root)], oracle)

    def insert_edge(
        self, v1: int, v2: int, w: int, fresh: bool, oracle: "IncrementalDistanceOracle"
    ) -> list[FrozenTree]:
        roots = sorted(self.containing.get(v1, set()) | self.containing.get(v2, set()))
        outputs: list[FrozenTree] = []
        for root in roots:
            tree = self.trees[root]
            if fresh:
                tree.load += (v1 in tree.members) + (v2 in tree.members)
            bound = oracle.grid.floor(tree.radius_idx)
            d1 = tree.dist.get(v1, INF)
            d2 = tree.dist.get(v2, INF)
            heap = []
            if d1 + w < d2 and d1 + w <= bound:
                tree.dist[v2] = d1 + w
                tree.parent[v2] = v1
                heap = [(d1 + w, v2)]
            elif d2 + w < d1 and d2 + w <= bound:
                tree.dist[v1] = d2 + w
                tree.parent[v1] = v2
                heap = [(d2 + w, v1)]
            if heap:
                outputs.extend(self._grow(tree, heap, oracle))
            else:
                outputs.extend(self._cascade(tree, oracle))
        return outputs

    def _grow(self, tree: LiveTree, heap: list, oracle) -> list[FrozenTree]:
        """Run bounded Dijkstra to completion, then rebalance the budget.

        Distances are exact on return, so membership always equals the exact
        ball of the current radius; the budget is restored by the freeze and
        shrink cascade, never by stopping the search early.
        """
        bound = oracle.grid.floor(tree.radius_idx)
        adj = oracle.adj
        dist = tree.dist
        parent = tree.parent
        while heap:
            d, v = heapq.heappop(heap)
            if d > dist[v]:
                continue
            for u, w in adj[v].items():
                nd = d + w
                if nd <= bound and nd < dist.get(u, INF):
                    dist[u] = nd
                    parent[u] = v
                    heapq.heappush(heap, (nd, u))
        for v in dist:
            if v not in tree.members:
                tree.members.add(v)
                tree.load += len(adj[v])
                self.containing.setdefault(v, set()).add(tree.root)
        return self._cascade(tree, oracle)

    def _cascade(self, tree: LiveTree, oracle) -> list[FrozenTree]:
        """Freeze and shrink until the degree load fits the level budget.

        Each step emits the current ball (load above budget) and drops the
        radius to the largest grid power below the current reach, so the
        emitted ball's reach is at most (1+eps) times its recorded radius.
        A bare root that alone exceeds the budget bottoms out at radius zero.
        """
        outputs: list[FrozenTree] = []
        while tree.load > self.load_cap and tree.radius_idx >= 0:
            reach = max(tree.dist.values())
            new_idx = oracle.grid.largest_below(reach)
            outputs.append(
                FrozenTree(
                    tree.root,
                    self.level,
                    new_idx,
                    dict(tree.dist),
                    frozenset(tree.members),
                    tree.load,
                    reach,
                )
            )
            self.shrink_count[tree.root] += 1
            floor = oracle.grid.floor(new_idx)
            for v in [x for x, dx in tree.dist.items() if dx > floor]:
                del tree.dist[v]
                del tree.parent[v]
                tree.members.discard(v)
                tree.load -= len(oracle.adj[v])
                self.containing[v].discard(tree.root)
            tree.radius_idx = new_idx
        return outputs


class IncrementalDistanceOracle:
    """Insert-only approximate distance oracle, sound against an adaptive
    adversary: answers never depend on anything but the insertion history.

    query(u, v) >= d(u, v) always, and query(u, v) <= stretch_bound() * d(u, v)
    whenever d(u, v) <= d.  Edge weights are positive integers.  Reinserting
    an edge with a strictly smaller weight is an improving insertion; equal
    or heavier reinserts are ignored.
    """

    def __init__(self, n: int, k: int, d: int, eps, *, budget: Optional[int] = None):
        if n < 1:
            raise OracleError("need at least one vertex")
        if k < 1 or d < 1:
            raise OracleError("k and d must be positive")
        eps = as_stretch(eps)
        if eps <= 0:
            raise OracleError("eps must be positive")
        self.n = n
        self.k = k
        self.d = d
        self.eps = eps
        self.log: list[tuple[int, int, int]] = []
        self._build(budget if budget is not None else max(n, 1))

    def _build(self, budget: int) -> None:
        self.budget = budget
        top = (3 + 2 * self.eps) ** (self.k - 1) * self.d
        self.grid = RadiusGrid(self.eps, Fraction(top))
        self.radius_caps = tuple(
            self.grid.at_least((3 + 2 * self.eps) ** i * self.d) for i in range(self.k)
        )
        self.load_caps = tuple(
            2 * _ceil_root_power(budget, i + 1, self.k) for i in range(self.k)
        )
        self.adj: list[dict[int, int]] = [dict() for _ in range(self.n)]
        self.levels = [
            LevelStructure(i, self.radius_caps[i], self.load_caps[i]) for i in range(self.k)
        ]
        self.reach_sets: list[set[int]] = [set() for _ in range(self.k)]
        self.reach_sets[0] = set(range(self.n))
        self.claimed: dict[tuple[int, int], set[int]] = {}
        self.claim_root: dict[tuple[int, int], dict[int, int]] = {}
        self.entry_point: dict[tuple[int, int], dict[int, int]] = {}
        self.class_trees: dict[tuple[int, int], dict[int, FrozenTree]] = {}
        self.selected: dict[tuple[int, int], list[FrozenTree]] = {}
        for v in range(self.n):
            outputs = self.levels[0].insert_vertex(v, self)
            if outputs:  # pragma: no cover - impossible on the empty graph
                raise OracleError("level budget smaller than an isolated vertex")

    # -- updates ----------------------------------------------------------

    def insert(self, u: int, v: int, w: int) -> bool:
        """Insert edge (u, v, w); returns False for an ignored reinsert."""
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise OracleError("vertex id out of range")
        if u == v:
            raise OracleError("self-loops not supported")
        if not isinstance(w, int) or w < 1:
            raise OracleError("weight must be a positive integer")
        cur = self.adj[u].get(v)
        if cur is not None and cur <= w:
            return False
        self.log.append((u, v, w))
        if len(self.log) > self.budget:
            new_budget = self.budget
            while len(self.log) > new_budget:
                new_budget *= 2
            self._build(new_budget)
            for a, b, ww in self.log:
                self._apply(a, b, ww)
        else:
            self._apply(u, v, w)
        return True

    def _apply(self, u: int, v: int, w: int) -> None:
        fresh = v not in self.adj[u]
        self.adj[u][v] = w
        self.adj[v][u] = w
        pending: list[int] = []
        for i in range(self.k):
            outputs = self.levels[i].insert_edge(u, v, w, fresh, self)
            for root in pending:
                self.reach_sets[i].add(root)
                outputs.extend(self.levels[i].insert_vertex(root, self))
            nxt: list[int] = []
            for tree in outputs:
                j = tree.radius_idx + 1
                key = (i, j)
                self.class_trees.setdefault(key, {})[tree.root] = tree
                claimed = self.claimed.setdefault(key, set())
                inter = claimed & tree.members
                if not inter:
                    claimed |= tree.members
                    owners = self.claim_root.setdefault(key, {})
                    for x in tree.members:
                        owners[x] = tree.root
                    self.selected.setdefault(key, []).append(tree)
                    if (
                        i + 1 < self.k
                        and tree.root not in self.reach_sets[i + 1]
                        and tree.root not in nxt
                    ):
                        nxt.append(tree.root)
                else:
                    self.entry_point.setdefault(key, {})[tree.root] = min(inter)
            pending = nxt

    # -- queries -----------------------------------------------------------

    def query(self, u: int, v: int):
        """Upper-bounding distance estimate; exact-or-provably-far contract."""
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise OracleError("vertex id out of range")
        if u == v:
            return 0
        ui, s = u, 0
        for i in range(self.k):
            level = self.levels[i]
            tree = level.trees[ui]
            dv = tree.dist.get(v)
            if dv is not None:
                return s + dv
            if tree.radius_idx >= level.cap_idx:
                return INF
            if i + 1 >= self.k:
                break
            if ui in self.reach_sets[i + 1]:
                continue
            key = (i, tree.radius_idx + 1)
            w_pt = self.entry_point.get(key, {}).get(ui)
            if w_pt is None:
                raise OracleError("detour pointer missing; invariant broken")
            nxt_root = self.claim_root[key][w_pt]
            s += self.class_trees[key][ui].dist[w_pt] + self.class_trees[key][nxt_root].dist[w_pt]
            ui = nxt_root
        raise OracleError("query walked past the top level; invariant broken")

    def stretch_bound(self) -> Fraction:
        return 2 * (3 + 2 * self.eps) ** (self.k - 1) - 1

    # -- verification ------------------------------------------------------

    def _exact_ball(self, root: int, cutoff: int) -> dict[int, int]:
        dist = {root: 0}
        heap = [(0, root)]
        while heap:
            d, x = heapq.heappop(heap)
            if d > dist[x]:
                continue
            for y, w in self.adj[x].items():
                nd = d + w
                if nd <= cutoff and nd < dist.get(y, INF):
                    dist[y] = nd
                    heapq.heappush(heap, (nd, y))
        return dist

    def check_invariants(self) -> list[str]:
        """Exact recomputation of every structural invariant; [] when sound."""
        problems = []
        for i, level in enumerate(self.levels):
            if set(level.trees) != self.reach_sets[i]:
                problems.append(f"level {i}: tree roots differ from level set")
            if i > 0 and not self.reach_sets[i] <= self.reach_sets[i - 1]:
                problems.append(f"level {i}: set not nested in level {i - 1}")
            for root, tree in sorted(level.trees.items()):
                if tree.radius_idx > level.cap_idx:
                    problems.append(f"level {i} root {root}: radius above cap")
                ball = self._exact_ball(root, self.grid.floor(tree.radius_idx))
                if ball != tree.dist:
                    problems.append(f"level {i} root {root}: ball mismatch")
                true_load = sum(len(self.adj[v]) for v in tree.dist)
                if true_load != tree.load:
                    problems.append(f"level {i} root {root}: stale degree load")
                if tree.load > level.load_cap and not (
                    tree.radius_idx == -1 and set(tree.dist) == {root}
                ):
                    problems.append(f"level {i} root {root}: load above budget")
                if level.shrink_count[root] > level.cap_idx + 2:
                    problems.append(f"level {i} root {root}: too many shrink events")
        for (i, j), trees in sorted(self.selected.items()):
            seen: set[int] = set()
            for tree in trees:
                if seen & tree.members:
                    problems.append(f"class ({i},{j}): selected balls overlap")
                seen |= tree.members
                if tree.load <= self.levels[i].load_cap:
                    problems.append(f"class ({i},{j}): selected ball not overweight")
                limit = (1 + self.eps) * self.grid.value(tree.radius_idx)
                if tree.radius_idx >= 0 and tree.reach > limit:
                    problems.append(f"class ({i},{j}): frozen reach beyond (1+eps) radius")
                if tree.radius_idx == -1 and tree.reach > 1:
                    problems.append(f"class ({i},{j}): zero-radius ball reaching past 1")
            if seen != self.claimed.get((i, j), set()):
                problems.append(f"class ({i},{j}): claimed set out of sync")
        for i in range(self.k - 1):
            cap = Fraction(2 * self.budget, self.load_caps[i]) * self.radius_caps[i]
            if len(self.reach_sets[i + 1]) > cap:
                problems.append(f"level {i + 1}: set larger than the disjointness budget")
        return problems


# ---------------------------------------------------------------------------
# Incremental exact APSP with a distance threshold


class EsApsp:
    """Per-source incremental shortest-path trees, exact up to a threshold.

    query(u, v) returns the exact distance when it is <= threshold and inf
    otherwise.  Distances never increase under insertions.
    """

    def __init__(self, n: int, threshold: int):
        if n < 1 or threshold < 1:
            raise OracleError("need n >= 1 and threshold >= 1")
        self.n = n
        self.threshold = threshold
        self.adj: list[dict[int, int]] = [dict() for _ in range(n)]
        self.dist = [{s: 0} for s in range(n)]

    def insert(self, u: int, v: int, w: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
            raise OracleError("bad edge endpoints")
        if not isinstance(w, int) or w < 1:
            raise OracleError("weight must be a positive integer")
        cur = self.adj[u].get(v)
        if cur is not None and cur <= w:
            return False
        self.adj[u][v] = w
        self.adj[v][u] = w
        for s in range(self.n):
            ds = self.dist[s]
            du = ds.get(u, INF)
            dv = ds.get(v, INF)
            if du + w < dv and du + w <= self.threshold:
                ds[v] = du + w
                heap = [(du + w, v)]
            elif dv + w < du and dv + w <= self.threshold:
                ds[u] = dv + w
                heap = [(dv + w, u)]
            else:
                continue
            while heap:
                dd, x = heapq.heappop(heap)
                if dd > ds[x]:
                    continue
                for y, wy in self.adj[x].items():
                    nd = dd + wy
                    if nd <= self.threshold and nd < ds.get(y, INF):
                        ds[y] = nd
                        heapq.heappush(heap, (nd, y))
        return True

    def query(self, u: int, v: int):
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise OracleError("vertex id out of range")
        return self.dist[u].get(v, INF)


# ---------------------------------------------------------------------------
# Insertion/query logs: `+ u v w` inserts, `? u v expected` queries, where
# expected is an integer, `inf`, or `*` (don't check).


class ReplayMismatch(AssertionError):
    pass


class LoggedOracle:
    """Wrapper recording a replayable operation log."""

    def __init__(self, oracle: IncrementalDistanceOracle):
        self.oracle = oracle
        self.lines: list[str] = []

    def insert(self, u: int, v: int, w: int) -> bool:
        self.lines.append(f"+ {u} {v} {w}")
        return self.oracle.insert(u, v, w)

    def query(self, u: int, v: int):
        ans = self.oracle.query(u, v)
        token = "inf" if ans == INF else str(ans)
        self.lines.append(f"? {u} {v} {token}")
        return ans


def replay_log(lines, n: int, k: int, d: int, eps) -> list[str]:
    """Re-execute a log against a fresh oracle; returns mismatch descriptions."""
    oracle = IncrementalDistanceOracle(n, k, d, eps)
    mismatches = []
    for lineno, line in enumerate(lines, start=1):
        parts = line.split()
        if not parts or line.startswith("c"):
            continue
        if parts[0] == "+":
            oracle.insert(int(parts[1]), int(parts[2]), int(parts[3]))
        elif parts[0] == "?":
            ans = oracle.query(int(parts[1]), int(parts[2]))
            token = "inf" if ans == INF else str(ans)
            if parts[3] != "*" and parts[3] != token:
                mismatches.append(f"line {lineno}: got {token}, recorded {parts[3]}")
        else:
            raise OracleError(f"line {lineno}: unknown log record {parts[0]!r}")
    return mismatches
