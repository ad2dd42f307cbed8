"""Two-dimensional poset realizers via transitive orientation of incomparability.

A poset has dimension at most two exactly when its incomparability graph is a
comparability graph. Any transitive orientation F of that graph yields the
realizer: R1 topologically sorts P union F, R2 sorts P union reversed F. The
orientation comes from the classical forcing-class decomposition (orient a
seed edge, propagate forcings over the remaining graph, delete the class,
repeat) with an explicit transitivity check; the realizer is verified against
the definition before being returned. Components up to a small cap fall back
to scanning linear extensions if the decomposition ever fails, so small-case
behavior is exact regardless.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import NotAPosetError, NotTwoDimensionalError

BRUTE_FALLBACK_CAP = 8


@dataclass(frozen=True)
class Realizer:
    """Pair of total orders whose intersection is the poset's arc set."""

    order1: tuple
    order2: tuple


def validate_poset(universe: Sequence, arcs: Iterable[tuple]) -> None:
    elems = set(universe)
    arcset = set(arcs)
    succ = {}
    for u, v in arcset:
        if u not in elems or v not in elems:
            raise NotAPosetError(f"arc on unknown element: {(u, v)!r}")
        if u == v:
            raise NotAPosetError(f"reflexive arc on {u!r}")
        if (v, u) in arcset:
            raise NotAPosetError(f"2-cycle between {u!r} and {v!r}")
        succ.setdefault(u, set()).add(v)
    for u, outs in succ.items():
        for v in outs:
            missing = succ.get(v, set()) - outs
            if missing:
                raise NotAPosetError(
                    f"not transitive: {(u, v)!r} then {(v, next(iter(missing)))!r}")


def _toposort(elems: Sequence, rel: set) -> Optional[tuple]:
    indeg = {v: 0 for v in elems}
    out = {v: [] for v in elems}
    for u, v in rel:
        indeg[v] += 1
        out[u].append(v)
    heap = [v for v, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != len(elems):
        return None
    return tuple(order)


def _forcing_orientation(elems: list, inc_edges: set) -> Optional[set]:
    """Transitive orientation of the incomparability graph, or None.

    Forcing-class decomposition: repeatedly orient the smallest unoriented
    edge, close under the forcing rule computed on the *remaining* graph,
    remove the class, continue. A class forcing an edge both ways, or a
    non-transitive final union, means no orientation exists... at least none
    this scheme finds; callers treat None as "not orientable" after the
    small-case fallback.
    """
    remaining = {tuple(sorted(e)) for e in inc_edges}
    adj = {v: set() for v in elems}
    for u, v in remaining:
        adj[u].add(v)
        adj[v].add(u)
    oriented: dict = {}
    while remaining:
        seed = min(remaining)
        cls = {seed: seed}
        queue = [seed]
        while queue:
            a, b = queue.pop()
            for c in adj[a]:
                if c != b and c not in adj[b]:
                    key = tuple(sorted((a, c)))
                    if key in remaining:
                        want = (a, c)
                        if cls.get(key, want) != want:
                            return None
                        if key not in cls:
                            cls[key] = want
                            queue.append(want)
            for c in adj[b]:
                if c != a and c not in adj[a]:
                    key = tuple(sorted((c, b)))
                    if key in remaining:
                        want = (c, b)
                        if cls.get(key, want) != want:
                            return None
                        if key not in cls:
                            cls[key] = want
                            queue.append(want)
        for key, want in cls.items():
            oriented[key] = want
            remaining.discard(key)
            u, v = key
            adj[u].discard(v)
            adj[v].discard(u)
    forient = set(oriented.values())
    heads = {v: set() for v in elems}
    for u, v in forient:
        heads[u].add(v)
    for u, v in forient:
        for w in heads[v]:
            if w != u and (u, w) not in forient:
                return None
    return forient


def _brute_realizer(elems: list, arcset: set) -> Optional[Realizer]:
    """Scan linear extensions; for each, the conjugate order is forced.

    Given extension L1, the only possible R2 reverses L1 on incomparable pairs
    and keeps P on comparable ones; it works iff that tournament is acyclic.
    """
    n = len(elems)
    succ = {v: set() for v in elems}
    for u, v in arcset:
        succ[u].add(v)

    def extensions(prefix, left):
        if not left:
            yield tuple(prefix)
            return
        for v in sorted(left):
            # v is placeable iff no remaining element precedes it
            if not any(v in succ[u] for u in left if u != v):
                prefix.append(v)
                yield from extensions(prefix, left - {v})
                prefix.pop()

    for l1 in extensions([], set(elems)):
        pos1 = {v: i for i, v in enumerate(l1)}
        rel2 = set(arcset)
        for i, u in enumerate(elems):
            for v in elems[i + 1:]:
                if (u, v) in arcset or (v, u) in arcset:
                    continue
                rel2.add((u, v) if pos1[v] < pos1[u] else (v, u))
        l2 = _toposort(elems, rel2)
        if l2 is not None:
            return Realizer(l1, l2)
    return None


def realizer_2d(universe: Sequence, arcs: Iterable[tuple],
                brute_cap: int = BRUTE_FALLBACK_CAP) -> Realizer:
    """Realizer of a two-dimensional poset, or NotTwoDimensionalError.

    The input must be a strict poset (transitive, acyclic, irreflexive);
    NotAPosetError otherwise.
    """
    elems = sorted(set(universe))
    arcset = {(u, v) for u, v in arcs}
    validate_poset(elems, arcset)
    related = arcset | {(v, u) for u, v in arcset}
    inc_edges = {(u, v) for i, u in enumerate(elems) for v in elems[i + 1:]
                 if (u, v) not in related}
    forient = _forcing_orientation(elems, inc_edges)
    if forient is not None:
        r1 = _toposort(elems, arcset | forient)
        r2 = _toposort(elems, arcset | {(v, u) for u, v in forient})
        if r1 is not None and r2 is not None:
            result = Realizer(r1, r2)
            _verify_realizer(elems, arcset, result)
            return result
    if len(elems) <= brute_cap:
        result = _brute_realizer(elems, arcset)
        if result is not None:
            _verify_realizer(elems, arcset, result)
            return result
        raise NotTwoDimensionalError(f"no realizer exists for {len(elems)} elements")
    raise NotTwoDimensionalError(
        f"no transitive orientation found (component size {len(elems)})")


def _verify_realizer(elems, arcset, realizer: Realizer) -> None:
    pos1 = {v: i for i, v in enumerate(realizer.order1)}
    pos2 = {v: i for i, v in enumerate(realizer.order2)}
    for u in elems:
        for v in elems:
            if u == v:
                continue
            below_both = pos1[u] < pos1[v] and pos2[u] < pos2[v]
            if below_both != ((u, v) in arcset):
                raise NotTwoDimensionalError("realizer verification failed")
