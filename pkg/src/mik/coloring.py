"""Proper-coloring verification, layered coloring, and the exact oracle."""

from __future__ import annotations

import enum
import heapq
import math
import time
from dataclasses import dataclass
from typing import Optional

from .errors import DirectedCycleError, SolverTimeout
from .intervals import (
    IntervalSet,
    MixedGraph,
    _arc_dag_layers,
    compute_stats,
    edge_key,
)

DEFAULT_TIME_BUDGET = 60.0
DEFAULT_COLOR_CAP = 64


@dataclass(frozen=True)
class Coloring:
    """Vertex -> positive integer map with cached summary values."""

    assignment: dict
    max_color: int
    colors_used: int

    @classmethod
    def from_map(cls, assignment: dict) -> "Coloring":
        values = list(assignment.values())
        for v, c in assignment.items():
            if not isinstance(c, int) or c < 1:
                raise ValueError(f"color of {v!r} must be a positive integer")
        return cls(dict(assignment), max(values, default=0), len(set(values)))

    def __eq__(self, other):
        return isinstance(other, Coloring) and self.assignment == other.assignment


class ViolationKind(enum.Enum):
    EDGE_EQUAL_COLOR = "EdgeEqualColor"
    ARC_NOT_INCREASING = "ArcNotIncreasing"
    UNCOLORED_VERTEX = "UncoloredVertex"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    pair: tuple[str, ...]

    def __str__(self):
        return f"{self.kind.value}({','.join(self.pair)})"


@dataclass(frozen=True)
class Layering:
    layer: dict
    depth: int


def verify(g: MixedGraph, f: Coloring) -> list[Violation]:
    """All violations of the proper-coloring conditions; empty iff proper."""
    out = []
    a = f.assignment
    for v in sorted(g.vertices):
        if v not in a:
            out.append(Violation(ViolationKind.UNCOLORED_VERTEX, (v,)))
    for u, v in sorted(g.edges):
        if u in a and v in a and a[u] == a[v]:
            out.append(Violation(ViolationKind.EDGE_EQUAL_COLOR, (u, v)))
    for u, v in sorted(g.arcs):
        if u in a and v in a and not a[u] < a[v]:
            out.append(Violation(ViolationKind.ARC_NOT_INCREASING, (u, v)))
    return out


def compute_layers(g: MixedGraph) -> Layering:
    """Source-peeling layers of the arc DAG; layer(x) = longest arc-path into x."""
    has_cycle, lam, layer = _arc_dag_layers(g)
    if has_cycle:
        raise DirectedCycleError("arc set contains a directed cycle")
    return Layering(layer=layer, depth=lam if g.vertices else 0)


def greedy_interval_color(s: IntervalSet) -> Coloring:
    """Left-to-right sweep with smallest free color; uses exactly omega colors."""
    order = sorted(s, key=lambda iv: (iv.left, iv.id))
    active: list[tuple] = []  # heap of (right, color)
    free: list[int] = []      # heap of released colors
    next_fresh = 1
    assignment = {}
    for iv in order:
        while active and active[0][0] < iv.left:
            _, c = heapq.heappop(active)
            heapq.heappush(free, c)
        if free:
            c = heapq.heappop(free)
        else:
            c = next_fresh
            next_fresh += 1
        assignment[iv.id] = c
        heapq.heappush(active, (iv.right, c))
    return Coloring.from_map(assignment)


def layered_color(g: MixedGraph, s: IntervalSet) -> Coloring:
    """f(x) = layer(x) * omega + base(x): proper with at most (lambda+1)*omega colors."""
    layering = compute_layers(g)
    base = greedy_interval_color(s)
    omega = base.max_color
    assignment = {v: layering.layer[v] * omega + base.assignment[v] for v in g.vertices}
    return Coloring.from_map(assignment)


def chromatic_lower_bound(g: MixedGraph, s: Optional[IntervalSet] = None):
    """max(omega, lambda+1); math.inf when a directed cycle exists."""
    stats = compute_stats(g, s)
    if stats.has_directed_cycle:
        return math.inf
    if not g.vertices:
        return 0
    return max(stats.omega, stats.lam + 1)


def _solver_order(g: MixedGraph) -> list[str]:
    """Topological by arcs; ties broken by higher degree, then id."""
    adj = g.adjacency()
    indeg = {v: 0 for v in g.vertices}
    out: dict[str, list[str]] = {v: [] for v in g.vertices}
    for u, v in g.arcs:
        indeg[v] += 1
        out[u].append(v)
    avail = [v for v, d in indeg.items() if d == 0]
    order = []
    while avail:
        avail.sort(key=lambda v: (-len(adj[v]), v))
        v = avail.pop(0)
        order.append(v)
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                avail.append(w)
    return order


def _compact(assignment: dict) -> dict:
    used = sorted(set(assignment.values()))
    remap = {c: i + 1 for i, c in enumerate(used)}
    return {v: remap[c] for v, c in assignment.items()}


def exact_chromatic(g: MixedGraph, time_budget: float = DEFAULT_TIME_BUDGET,
                    color_cap: int = DEFAULT_COLOR_CAP) -> tuple[int, Coloring]:
    """Minimal k admitting a proper coloring with max_color <= k, plus a witness.

    Backtracking over a fixed vertex order (topological by arcs, ties by
    degree); each vertex's colors start strictly above its arc-predecessors.
    Deterministic; raises SolverTimeout with the bounds established so far.
    """
    if not g.vertices:
        return 0, Coloring.from_map({})
    lb = chromatic_lower_bound(g)
    if lb is math.inf:
        raise DirectedCycleError("arc set contains a directed cycle")
    order = _solver_order(g)
    n = len(order)
    pos = {v: i for i, v in enumerate(order)}
    edge_nbrs: list[list[int]] = [[] for _ in range(n)]
    arc_preds: list[list[int]] = [[] for _ in range(n)]
    for u, v in g.edges:
        edge_nbrs[pos[u]].append(pos[v])
        edge_nbrs[pos[v]].append(pos[u])
    for u, v in g.arcs:
        arc_preds[pos[v]].append(pos[u])
    # Only earlier-placed neighbors constrain a vertex.
    earlier_edges = [sorted(w for w in ws if w < i) for i, ws in enumerate(edge_nbrs)]

    deadline = time.monotonic() + time_budget
    ticks = 0

    def feasible(k: int) -> Optional[dict]:
        nonlocal ticks
        colors = [0] * n
        i = 0
        while 0 <= i < n:
            ticks += 1
            if ticks % 2048 == 0 and time.monotonic() > deadline:
                raise SolverTimeout(lower_bound=k, upper_bound=None)
            lo = max((colors[p] + 1 for p in arc_preds[i]), default=1)
            taken = {colors[w] for w in earlier_edges[i]}
            c = max(colors[i] + 1, lo)
            while c <= k and c in taken:
                c += 1
            if c > k:
                colors[i] = 0
                i -= 1
            else:
                colors[i] = c
                i += 1
        if i < 0:
            return None
        return {order[i]: colors[i] for i in range(n)}

    for k in range(int(lb), color_cap + 1):
        try:
            found = feasible(k)
        except SolverTimeout:
            raise SolverTimeout(lower_bound=k, upper_bound=None)
        if found is not None:
            compacted = _compact(found)
            witness = Coloring.from_map(compacted)
            assert witness.max_color == k, "minimal k must be tight after compaction"
            assert not verify(g, witness)
            return k, witness
    raise SolverTimeout(lower_bound=color_cap + 1, upper_bound=None)
