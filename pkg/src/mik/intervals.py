"""Interval geometry, mixed-graph builders, and structural statistics.

Coordinates are exact rationals throughout; every edge-vs-arc decision is
bit-stable. Intervals are closed, so a shared endpoint counts as an
intersection. "Overlap" always means a nonempty intersection where neither
interval properly contains the other.
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .errors import (
    DirectedCycleError,
    DuplicateEndpointsError,
    MissingOrientationError,
    TooLargeForBruteForceError,
)

Coord = Fraction

BRUTE_FORCE_CAP = 25


class Orientation(enum.Enum):
    LEFT = "L"
    RIGHT = "R"


class Policy(enum.Enum):
    REJECT = "reject"
    PERTURB_BY_ID = "perturb-by-id"


def _coord(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"coordinate must be rational, got {type(x).__name__}")


@dataclass(frozen=True, order=True)
class Interval:
    """Closed segment [left, right] with an identity and optional orientation."""

    id: str = field(compare=False)
    left: Fraction
    right: Fraction
    orientation: Optional[Orientation] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "left", _coord(self.left))
        object.__setattr__(self, "right", _coord(self.right))
        if not self.left < self.right:
            raise ValueError(f"interval {self.id!r}: left must be < right")

    def intersects(self, other: "Interval") -> bool:
        return self.left <= other.right and other.left <= self.right

    def contains(self, other: "Interval") -> bool:
        """Proper containment as point sets."""
        return (self.left <= other.left and other.right <= self.right
                and (self.left < other.left or other.right < self.right))

    def overlaps(self, other: "Interval") -> bool:
        """Nonempty intersection, neither properly contains the other."""
        return (self.intersects(other)
                and not self.contains(other) and not other.contains(self))


class IntervalSet:
    """Ordered collection of intervals with unique ids."""

    def __init__(self, intervals: Iterable[Interval]):
        self.intervals: tuple[Interval, ...] = tuple(intervals)
        self.by_id = {iv.id: iv for iv in self.intervals}
        if len(self.by_id) != len(self.intervals):
            raise ValueError("interval ids must be unique")
        endpoints = [iv.left for iv in self.intervals] + [iv.right for iv in self.intervals]
        self.distinct_endpoints: bool = len(set(endpoints)) == len(endpoints)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalSet) and self.intervals == other.intervals

    def __repr__(self) -> str:
        return f"IntervalSet({list(self.intervals)!r})"


def edge_key(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


class MixedGraph:
    """Vertices plus disjoint sets of undirected edges and directed arcs."""

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str]],
                 arcs: Iterable[tuple[str, str]], meta: Optional[dict] = None):
        self.vertices: frozenset[str] = frozenset(vertices)
        self.edges: frozenset[tuple[str, str]] = frozenset(edge_key(u, v) for u, v in edges)
        self.arcs: frozenset[tuple[str, str]] = frozenset((u, v) for u, v in arcs)
        self.meta: dict = dict(meta or {})
        self._validate()

    def _validate(self):
        for u, v in self.edges | self.arcs:
            if u == v:
                raise ValueError(f"self-loop on {u!r}")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"relation on unknown vertex: {(u, v)!r}")
        arc_pairs = {edge_key(u, v) for u, v in self.arcs}
        if arc_pairs & self.edges:
            raise ValueError("edge and arc on the same pair")
        # Antiparallel arc pairs are representable (they form a directed
        # 2-cycle) so that cycle rejection can report them downstream; the
        # geometric builders never emit them.

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges) + len(self.arcs)

    def relation(self, u: str, v: str) -> str:
        """'edge', 'arc' (u->v), 'rarc' (v->u), or 'none'."""
        if edge_key(u, v) in self.edges:
            return "edge"
        if (u, v) in self.arcs:
            return "arc"
        if (v, u) in self.arcs:
            return "rarc"
        return "none"

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        for u, v in self.arcs:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def same_labeled_sets(self, other: "MixedGraph") -> bool:
        return (self.vertices == other.vertices and self.edges == other.edges
                and self.arcs == other.arcs)

    def __repr__(self) -> str:
        return (f"MixedGraph(n={self.n}, edges={sorted(self.edges)},"
                f" arcs={sorted(self.arcs)})")


@dataclass(frozen=True)
class GraphStats:
    omega: int
    lam: Optional[int]  # longest directed path length; None when a cycle exists
    has_directed_cycle: bool
    n: int
    m: int


def build_containment(s: IntervalSet) -> MixedGraph:
    """Arc container->contained for proper nesting, edge for overlap.

    Equal intervals get an edge: neither properly contains the other.
    """
    edges, arcs = [], []
    ivs = s.intervals
    for i, u in enumerate(ivs):
        for v in ivs[i + 1:]:
            if not u.intersects(v):
                continue
            if u.contains(v):
                arcs.append((u.id, v.id))
            elif v.contains(u):
                arcs.append((v.id, u.id))
            else:
                edges.append((u.id, v.id))
    return MixedGraph((iv.id for iv in ivs), edges, arcs, meta={"variant": "containment"})


def build_directional(s: IntervalSet) -> MixedGraph:
    """Edge for containment, arc toward the right interval for overlap."""
    edges, arcs = [], []
    ivs = s.intervals
    for i, u in enumerate(ivs):
        for v in ivs[i + 1:]:
            if not u.intersects(v):
                continue
            if u.contains(v) or v.contains(u) or (u.left, u.right) == (v.left, v.right):
                edges.append((u.id, v.id))
            elif u.left < v.left:
                arcs.append((u.id, v.id))
            else:
                arcs.append((v.id, u.id))
    return MixedGraph((iv.id for iv in ivs), edges, arcs, meta={"variant": "directional"})


#: Arc-direction convention for build_bidirectional, recorded in output metadata.
#: Overlapping left-going pair: arc toward the larger left endpoint (as in the
#: directional variant); overlapping right-going pair: mirror image, toward the
#: smaller left endpoint.
BIDIRECTIONAL_CONVENTION = "left-going:toward-larger-left;right-going:toward-smaller-left"


def build_bidirectional(s: IntervalSet) -> MixedGraph:
    """Arc only for same-orientation overlap; every other intersection is an edge."""
    for iv in s:
        if iv.orientation is None:
            raise MissingOrientationError(f"interval {iv.id!r} has no orientation")
    edges, arcs = [], []
    ivs = s.intervals
    for i, u in enumerate(ivs):
        for v in ivs[i + 1:]:
            if not u.intersects(v):
                continue
            if (u.orientation == v.orientation and u.overlaps(v)
                    and (u.left, u.right) != (v.left, v.right)):
                if u.orientation == Orientation.LEFT:
                    pair = (u.id, v.id) if u.left < v.left else (v.id, u.id)
                else:
                    pair = (u.id, v.id) if u.left > v.left else (v.id, u.id)
                arcs.append(pair)
            else:
                edges.append((u.id, v.id))
    return MixedGraph((iv.id for iv in ivs), edges, arcs,
                      meta={"variant": "bidirectional",
                            "convention": BIDIRECTIONAL_CONVENTION})


def underlying_undirected(g: MixedGraph) -> MixedGraph:
    """U(G): every edge or arc becomes an undirected edge."""
    edges = set(g.edges) | {edge_key(u, v) for u, v in g.arcs}
    return MixedGraph(g.vertices, edges, (), meta=dict(g.meta))


def _arc_dag_layers(g: MixedGraph) -> tuple[bool, Optional[int], dict[str, int]]:
    """Kahn peeling over arcs: (has_cycle, longest path length, layer map)."""
    indeg = {v: 0 for v in g.vertices}
    out: dict[str, list[str]] = {v: [] for v in g.vertices}
    for u, v in g.arcs:
        indeg[v] += 1
        out[u].append(v)
    layer: dict[str, int] = {}
    frontier = sorted(v for v, d in indeg.items() if d == 0)
    level = 0
    seen = 0
    while frontier:
        nxt = []
        for v in frontier:
            layer[v] = level
            seen += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    nxt.append(w)
        frontier = sorted(nxt)
        level += 1
    if seen != len(g.vertices):
        return True, None, {}
    lam = max(layer.values(), default=0)
    return False, lam, layer


def sweep_omega(s: IntervalSet) -> int:
    """Maximum number of simultaneously active closed intervals."""
    if not len(s):
        return 0
    # Left events before right events at equal coordinates: touching counts.
    events = []
    for iv in s:
        events.append((iv.left, 0, iv.id))
        events.append((iv.right, 1, iv.id))
    events.sort()
    active = best = 0
    for _, kind, _ in events:
        if kind == 0:
            active += 1
            best = max(best, active)
        else:
            active -= 1
    return best


def _mcs_peo(adj: dict[str, set[str]]) -> list[str]:
    """Maximum-cardinality search order (reversed it is a PEO for chordal graphs)."""
    weight = {v: 0 for v in adj}
    order = []
    heap = [(0, v) for v in sorted(adj)]
    heapq.heapify(heap)
    done = set()
    while heap:
        w, v = heapq.heappop(heap)
        if v in done or -w != weight[v]:
            continue
        done.add(v)
        order.append(v)
        for u in adj[v]:
            if u not in done:
                weight[u] += 1
                heapq.heappush(heap, (-weight[u], u))
    return order


def chordal_max_clique(adj: dict[str, set[str]]) -> Optional[int]:
    """Clique number when the graph is chordal, else None."""
    if not adj:
        return 0
    order = _mcs_peo(adj)
    pos = {v: i for i, v in enumerate(order)}
    best = 1
    for v in order:
        earlier = {u for u in adj[v] if pos[u] < pos[v]}
        if earlier:
            last = max(earlier, key=lambda u: pos[u])
            if not (earlier - {last}) <= adj[last]:
                return None  # not a perfect elimination ordering: not chordal
        best = max(best, len(earlier) + 1)
    return best


def brute_force_max_clique(adj: dict[str, set[str]]) -> int:
    """Bron-Kerbosch with pivoting; intended for small graphs."""
    best = 0

    def expand(r: set[str], p: set[str], x: set[str]):
        nonlocal best
        if not p and not x:
            best = max(best, len(r))
            return
        if len(r) + len(p) <= best:
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(adj), set())
    return best


def compute_stats(g: MixedGraph, s: Optional[IntervalSet] = None,
                  brute_cap: int = BRUTE_FORCE_CAP) -> GraphStats:
    """Clique number, longest directed path length, and cycle flag.

    With a representation, omega comes from the endpoint sweep. Without one,
    a chordal max-clique is used when U(g) is chordal, else brute force below
    the size cap.
    """
    if s is not None:
        omega = sweep_omega(s)
    else:
        adj = g.adjacency()
        omega = chordal_max_clique(adj)
        if omega is None:
            if g.n > brute_cap:
                raise TooLargeForBruteForceError(
                    f"no representation and n={g.n} exceeds cap {brute_cap}")
            omega = brute_force_max_clique(adj)
    has_cycle, lam, _ = _arc_dag_layers(g)
    return GraphStats(omega=max(omega, 1) if g.n else omega,
                      lam=lam, has_directed_cycle=has_cycle, n=g.n, m=g.m)


def validate_input(s: IntervalSet, policy: Policy = Policy.REJECT) -> IntervalSet:
    """Enforce pairwise-distinct endpoints.

    PERTURB_BY_ID breaks ties deterministically: colliding endpoints are
    shifted by distinct infinitesimal rationals in id order (rights before
    lefts at a tied value, so closed-interval containment survives where
    unambiguous).
    """
    if s.distinct_endpoints:
        return s
    if policy is Policy.REJECT:
        raise DuplicateEndpointsError("duplicate endpoint coordinates")

    points: dict[Fraction, list[tuple[int, Interval, int]]] = {}
    for idx, iv in enumerate(s):
        points.setdefault(iv.left, []).append((0, iv, idx))
        points.setdefault(iv.right, []).append((1, iv, idx))
    values = sorted(points)
    gaps = [b - a for a, b in zip(values, values[1:])]
    min_gap = min(gaps) if gaps else Fraction(1)
    new_left = {}
    new_right = {}

    def group_key(event):
        side, iv, _ = event
        # Lefts before rights keeps touching pairs intersecting. Within tied
        # lefts the container (larger right) comes first; within tied rights
        # the contained (larger left) comes first. Id is the final tie-break,
        # so truly ambiguous cases (equal intervals) resolve deterministically.
        if side == 0:
            return (0, -iv.right, iv.id)
        return (1, -iv.left, iv.id)

    for value in values:
        group = sorted(points[value], key=group_key)
        step = min_gap / (2 * (len(group) + 1))
        for rank, (side, _, idx) in enumerate(group):
            delta = step * (rank + 1) if len(group) > 1 else Fraction(0)
            if side == 0:
                new_left[idx] = value + delta
            else:
                new_right[idx] = value + delta
    out = []
    for idx, iv in enumerate(s):
        out.append(Interval(iv.id, new_left.get(idx, iv.left),
                            new_right.get(idx, iv.right), iv.orientation))
    result = IntervalSet(out)
    assert result.distinct_endpoints
    return result
