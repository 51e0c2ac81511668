"""Weighted graph container, fixed-point weights, family generators, edge-list I/O.

Edge weights are exact fixed-point integers at scale 1e-9.  All arithmetic on
distances is plain integer arithmetic, so comparisons and tie-breaking are
fully deterministic across runs and platforms.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

SCALE = 10**9
FRACTION_DIGITS = 9
INF = math.inf


class GraphError(ValueError):
    """Invalid graph data or generator parameters."""


class ParseError(GraphError):
    """Malformed edge-list input; carries the offending line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_weight(text: str) -> int:
    """Parse a decimal weight (at most 9 fractional digits) into units."""
    text = text.strip()
    if not text:
        raise ValueError("empty weight")
    sign = 1
    if text[0] in "+-":
        if text[0] == "-":
            sign = -1
        text = text[1:]
    if not text or text.count(".") > 1:
        raise ValueError(f"bad weight {text!r}")
    if "." in text:
        whole, frac = text.split(".")
    else:
        whole, frac = text, ""
    if whole == "" and frac == "":
        raise ValueError(f"bad weight {text!r}")
    if len(frac) > FRACTION_DIGITS:
        raise ValueError(f"weight {text!r} has more than {FRACTION_DIGITS} fractional digits")
    if (whole and not whole.isdigit()) or (frac and not frac.isdigit()):
        raise ValueError(f"bad weight {text!r}")
    units = int(whole or "0") * SCALE + int((frac or "0").ljust(FRACTION_DIGITS, "0"))
    return sign * units


def format_weight(units: int) -> str:
    """Format units back to decimal text, trailing zeros trimmed."""
    if units < 0:
        return "-" + format_weight(-units)
    whole, frac = divmod(units, SCALE)
    if frac == 0:
        return str(whole)
    return f"{whole}.{frac:09d}".rstrip("0")


def weight_to_fraction(units: int) -> Fraction:
    return Fraction(units, SCALE)


class WeightedGraph:
    """Immutable undirected graph with positive fixed-point edge weights.

    Vertices are 0..n-1.  Edges are stored as (u, v, w) with u < v and w in
    units of 1e-9.  At most one edge per unordered pair; no self-loops.
    """

    __slots__ = ("n", "edges", "adj", "_pair")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, int]]):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        self.n = n
        normalized: list[tuple[int, int, int]] = []
        pair: dict[tuple[int, int], int] = {}
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"vertex id out of range in edge ({u}, {v})")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if w <= 0:
                raise GraphError(f"non-positive weight on edge ({u}, {v})")
            a, b = (u, v) if u < v else (v, u)
            if (a, b) in pair:
                raise GraphError(f"duplicate edge ({a}, {b})")
            pair[(a, b)] = len(normalized)
            normalized.append((a, b, w))
        self.edges = tuple(normalized)
        self._pair = pair
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for idx, (u, v, w) in enumerate(self.edges):
            adj[u].append((v, idx))
            adj[v].append((u, idx))
        self.adj = adj

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def weight(self, idx: int) -> int:
        return self.edges[idx][2]

    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    def edge_index(self, u: int, v: int) -> Optional[int]:
        a, b = (u, v) if u < v else (v, u)
        return self._pair.get((a, b))

    def edge_multiset(self) -> set[tuple[int, int, int]]:
        return set(self.edges)

    def __repr__(self) -> str:  # pragma: no cover
        return f"WeightedGraph(n={self.n}, m={self.m})"


def build_graph(n: int, edges: Iterable[tuple[int, int, int]]) -> WeightedGraph:
    """Build a graph collapsing parallel edges to the minimum weight."""
    best: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []
    for u, v, w in edges:
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        a, b = (u, v) if u < v else (v, u)
        if (a, b) not in best:
            best[(a, b)] = w
            order.append((a, b))
        elif w < best[(a, b)]:
            best[(a, b)] = w
    return WeightedGraph(n, [(a, b, best[(a, b)]) for a, b in order])


def load_graph(path) -> WeightedGraph:
    """Read the edge-list format: `p sp <n> <m>` header, `e <u> <v> <w>` lines.

    Comment lines start with `c`.  Duplicate unordered pairs collapse to the
    minimum weight; self-loops and non-positive weights are rejected.
    """
    n = None
    declared_m = None
    raw: list[tuple[int, int, int]] = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "p":
                if n is not None:
                    raise ParseError(lineno, "duplicate header")
                if len(parts) != 4 or parts[1] != "sp":
                    raise ParseError(lineno, f"bad header {line!r}")
                try:
                    n = int(parts[2])
                    declared_m = int(parts[3])
                except ValueError:
                    raise ParseError(lineno, f"bad header {line!r}") from None
                if n < 0 or declared_m < 0:
                    raise ParseError(lineno, "negative counts in header")
            elif parts[0] == "e":
                if n is None:
                    raise ParseError(lineno, "edge before header")
                if len(parts) != 4:
                    raise ParseError(lineno, f"bad edge line {line!r}")
                try:
                    u, v = int(parts[1]), int(parts[2])
                    w = parse_weight(parts[3])
                except ValueError as exc:
                    raise ParseError(lineno, str(exc)) from None
                if not (0 <= u < n and 0 <= v < n):
                    raise ParseError(lineno, f"vertex id out of range: {u} {v}")
                if u == v:
                    raise ParseError(lineno, f"self-loop at {u}")
                if w <= 0:
                    raise ParseError(lineno, "non-positive weight")
                raw.append((u, v, w))
            else:
                raise ParseError(lineno, f"unknown line type {parts[0]!r}")
    if n is None:
        raise ParseError(0, "missing header")
    if declared_m != len(raw):
        raise ParseError(0, f"header declares {declared_m} edges, found {len(raw)}")
    return build_graph(n, raw)


def save_graph(g: WeightedGraph, path) -> None:
    """Write the edge-list format bit-exactly (trailing zeros trimmed)."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"p sp {g.n} {g.m}\n")
        for u, v, w in g.edges:
            handle.write(f"e {u} {v} {format_weight(w)}\n")


# ---------------------------------------------------------------------------
# Graph families


FAMILIES = ("bad-cycle", "clique-cycle", "gnm", "grid", "path", "complete")


@dataclass(frozen=True)
class GraphFamilySpec:
    """Parameters for one seeded graph family instance."""

    family: str
    n: Optional[int] = None
    k: Optional[int] = None
    m: Optional[int] = None
    heavy_weight: Optional[int] = None  # units
    seed: int = 0
    weights: str = "unit"  # "unit" or "uniform"


def generate(spec: GraphFamilySpec) -> WeightedGraph:
    """Generate a seeded family instance; deterministic given the spec."""
    if spec.family not in FAMILIES:
        raise GraphError(f"unknown family {spec.family!r}")
    if spec.weights not in ("unit", "uniform"):
        raise GraphError(f"unknown weight mode {spec.weights!r}")
    if spec.family == "bad-cycle":
        return _bad_cycle(spec)
    if spec.family == "clique-cycle":
        return _clique_cycle(spec)
    if spec.family == "gnm":
        return _gnm(spec)
    if spec.family == "grid":
        return _grid(spec)
    if spec.family == "path":
        return _path(spec)
    return _complete(spec)


def bad_cycle(k: int, heavy_weight: int) -> WeightedGraph:
    """Cycle of 2k+1 edges: 2k unit edges and one heavy edge (units)."""
    return generate(GraphFamilySpec("bad-cycle", k=k, heavy_weight=heavy_weight))


def clique_cycle(n: int, heavy_weight: int) -> WeightedGraph:
    return generate(GraphFamilySpec("clique-cycle", n=n, heavy_weight=heavy_weight))


def gnm(n: int, m: int, seed: int = 0, weights: str = "uniform") -> WeightedGraph:
    return generate(GraphFamilySpec("gnm", n=n, m=m, seed=seed, weights=weights))


def _heavy_units(spec: GraphFamilySpec) -> int:
    if spec.heavy_weight is None or spec.heavy_weight <= 0:
        raise GraphError(f"{spec.family} needs a positive heavy weight")
    return spec.heavy_weight


def _bad_cycle(spec: GraphFamilySpec) -> WeightedGraph:
    if spec.k is None or spec.k < 1:
        raise GraphError("bad-cycle needs k >= 1")
    heavy = _heavy_units(spec)
    n = 2 * spec.k + 1
    edges = [(i, i + 1, SCALE) for i in range(n - 1)]
    edges.append((n - 1, 0, heavy))
    return WeightedGraph(n, edges)


def _clique_cycle(spec: GraphFamilySpec) -> WeightedGraph:
    n = spec.n
    if n is None or n < 6 or n % 2 != 0:
        raise GraphError("clique-cycle needs even n >= 6")
    heavy = _heavy_units(spec)
    half = n // 2
    edges = []
    for u in range(half):
        for v in range(u + 1, half):
            edges.append((u, v, SCALE))
    for i in range(half):
        edges.append((half + i, half + (i + 1) % half, SCALE))
    for u in range(half):
        for v in range(half, n):
            edges.append((u, v, heavy))
    return WeightedGraph(n, edges)


def _uniform_units(rng: random.Random) -> int:
    # Weights in (0, 10]; fractional parts exercise the fixed-point path.
    return rng.randint(1, 10 * SCALE)


def _gnm(spec: GraphFamilySpec) -> WeightedGraph:
    n, m = spec.n, spec.m
    if n is None or n < 1 or m is None or m < 0:
        raise GraphError("gnm needs n >= 1 and m >= 0")
    max_m = n * (n - 1) // 2
    if m > max_m:
        raise GraphError(f"gnm with n={n} supports at most {max_m} edges")
    rng = random.Random(spec.seed)
    chosen = rng.sample(range(max_m), m)
    edges = []
    for code in sorted(chosen):
        u, v = _decode_pair(code, n)
        w = SCALE if spec.weights == "unit" else _uniform_units(rng)
        edges.append((u, v, w))
    return WeightedGraph(n, edges)


def _decode_pair(code: int, n: int) -> tuple[int, int]:
    # code indexes unordered pairs (u, v), u < v, in row-major order.
    u = 0
    row = n - 1
    while code >= row:
        code -= row
        u += 1
        row -= 1
    return u, u + 1 + code


def _grid(spec: GraphFamilySpec) -> WeightedGraph:
    n = spec.n
    if n is None or n < 1:
        raise GraphError("grid needs n >= 1")
    side = math.isqrt(n)
    if side * side != n:
        raise GraphError("grid needs n to be a perfect square")
    rng = random.Random(spec.seed)
    edges = []
    for r in range(side):
        for c in range(side):
            v = r * side + c
            if c + 1 < side:
                w = SCALE if spec.weights == "unit" else _uniform_units(rng)
                edges.append((v, v + 1, w))
            if r + 1 < side:
                w = SCALE if spec.weights == "unit" else _uniform_units(rng)
                edges.append((v, v + side, w))
    return WeightedGraph(n, edges)


def _path(spec: GraphFamilySpec) -> WeightedGraph:
    n = spec.n
    if n is None or n < 1:
        raise GraphError("path needs n >= 1")
    rng = random.Random(spec.seed)
    edges = []
    for i in range(n - 1):
        w = SCALE if spec.weights == "unit" else _uniform_units(rng)
        edges.append((i, i + 1, w))
    return WeightedGraph(n, edges)


def _complete(spec: GraphFamilySpec) -> WeightedGraph:
    n = spec.n
    if n is None or n < 1:
        raise GraphError("complete needs n >= 1")
    rng = random.Random(spec.seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            w = SCALE if spec.weights == "unit" else _uniform_units(rng)
            edges.append((u, v, w))
    return WeightedGraph(n, edges)


# ---------------------------------------------------------------------------
# Components and subgraphs


def connected_components(g: WeightedGraph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for u, _ in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def is_connected(g: WeightedGraph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


@dataclass
class SpannerResult:
    """An edge subset of a host graph plus bookkeeping.

    kept holds host edge indices (sorted, unique).  claimed_stretch is the
    stretch bound the producing algorithm stands behind; metrics carries
    measured values (size, weight, lightness, ...).
    """

    host: WeightedGraph
    kept: tuple[int, ...]
    claimed_stretch: Optional[Fraction] = None
    metrics: dict = field(default_factory=dict)

    def __post_init__(self):
        kept = tuple(sorted(set(self.kept)))
        for idx in kept:
            if not (0 <= idx < self.host.m):
                raise GraphError(f"kept edge index {idx} out of range")
        self.kept = kept

    @property
    def size(self) -> int:
        return len(self.kept)

    def weight_units(self) -> int:
        return sum(self.host.edges[i][2] for i in self.kept)

    def subgraph(self) -> tuple[WeightedGraph, tuple[int, ...]]:
        """Materialize the kept edges as a graph; returns (graph, index map)."""
        edges = [self.host.edges[i] for i in self.kept]
        return WeightedGraph(self.host.n, edges), self.kept


def induced_subgraph(g: WeightedGraph, vertices: Sequence[int]) -> tuple[WeightedGraph, list[int], list[int]]:
    """Induced subgraph on `vertices`; returns (graph, vertex map, edge map)."""
    vmap = {v: i for i, v in enumerate(vertices)}
    edges = []
    emap = []
    for idx, (u, v, w) in enumerate(g.edges):
        if u in vmap and v in vmap:
            edges.append((vmap[u], vmap[v], w))
            emap.append(idx)
    return WeightedGraph(len(vertices), edges), list(vertices), emap


def run_per_component(g: WeightedGraph, algorithm) -> SpannerResult:
    """Run a connected-graph spanner algorithm on each component and merge."""
    comps = connected_components(g)
    if len(comps) <= 1:
        return algorithm(g)
    kept: list[int] = []
    claimed = Fraction(1)
    for comp in comps:
        sub, _, emap = induced_subgraph(g, comp)
        res = algorithm(sub)
        kept.extend(emap[i] for i in res.kept)
        if res.claimed_stretch is not None:
            claimed = max(claimed, res.claimed_stretch)
    return SpannerResult(g, tuple(kept), claimed)
