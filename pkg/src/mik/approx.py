"""Two colorers for containment interval graphs, both within 2*omega - 1 colors.

two_approx_color is the O(n log n) phase-based sweep over an augmented search
tree; reference_recursive_color peels an inclusion-minimal cover of the
containment-maximal intervals, 2-colors it as a linear forest, and recurses
with colors shifted by two. The two are independent routes to the same bound
and cross-check each other in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .augtree import AugmentedTree
from .coloring import Coloring
from .intervals import Interval, IntervalSet, Policy, validate_input


@dataclass(frozen=True)
class TraceEntry:
    """One line of the audit log: who got colored, when, and why."""

    id: str
    phase: int
    case: str  # "start", "I", "II" for the sweep; "R" for the recursive engine
    color: int


@dataclass(frozen=True)
class CoverSelection:
    maximal: frozenset
    cover: tuple


def two_approx_color(s: IntervalSet, policy: Policy = Policy.REJECT) -> Coloring:
    coloring, _ = two_approx_color_with_trace(s, policy)
    return coloring


def two_approx_color_with_trace(s: IntervalSet,
                                policy: Policy = Policy.REJECT
                                ) -> tuple[Coloring, list[TraceEntry]]:
    """Phase-based sweep: phase i owns colors {2i-1, 2i}.

    Each phase starts at the leftmost remaining interval with color 2i-1.
    Case I (no remaining interval reaches past the current right endpoint):
    jump right with Q1 and keep the current color, or end the phase.
    Case II (Q2 found an overlap): color it with the phase's other color and
    swap. Every interval is inserted, queried, and removed exactly once.
    """
    s = validate_input(s, policy)
    tree = AugmentedTree(s.intervals)
    assignment: dict = {}
    trace: list[TraceEntry] = []
    phase = 0
    while len(tree):
        phase += 1
        current = tree.q1(None)
        color = 2 * phase - 1
        assignment[current.id] = color
        trace.append(TraceEntry(current.id, phase, "start", color))
        tree.remove(current)
        while len(tree):
            nxt = tree.q2(current.right)
            if nxt is None or nxt.right <= current.right:
                nxt = tree.q1(current.right)
                if nxt is None:
                    break  # finish current phase
                assignment[nxt.id] = color
                trace.append(TraceEntry(nxt.id, phase, "I", color))
            else:
                color = (2 * phase - 1) + (2 * phase) - color  # swap within the pair
                assignment[nxt.id] = color
                trace.append(TraceEntry(nxt.id, phase, "II", color))
            tree.remove(nxt)
            current = nxt
    return Coloring.from_map(assignment), trace


def _maximal_intervals(intervals: tuple[Interval, ...]) -> list[Interval]:
    """Intervals not properly contained in any other input interval."""
    return [u for u in intervals
            if not any(v.contains(u) for v in intervals if v.id != u.id)]


def select_cover(s: IntervalSet) -> CoverSelection:
    """Inclusion-minimal subset of the containment-maximal intervals covering the union.

    Greedy left-to-right: at the current uncovered frontier, pick the maximal
    interval covering it that reaches farthest right (ties by id).
    """
    maximal = _maximal_intervals(s.intervals)
    ms = sorted(maximal, key=lambda iv: (iv.left, iv.id))
    cover: list[Interval] = []
    # Union components: maximal intervals chain left to right; touching merges.
    comp: list[Interval] = []
    comps: list[list[Interval]] = []
    reach = None
    for iv in ms:
        if reach is not None and iv.left <= reach:
            comp.append(iv)
            reach = max(reach, iv.right)
        else:
            if comp:
                comps.append(comp)
            comp = [iv]
            reach = iv.right
    if comp:
        comps.append(comp)
    for component in comps:
        end = max(iv.right for iv in component)
        frontier = component[0].left
        first = True
        while first or frontier < end:
            candidates = [iv for iv in component
                          if iv.left <= frontier and (first or iv.right > frontier)]
            best = min(candidates, key=lambda iv: (-iv.right, iv.id))
            cover.append(best)
            frontier = best.right
            first = False
    return CoverSelection(maximal=frozenset(iv.id for iv in maximal),
                          cover=tuple(iv.id for iv in cover))


def reference_recursive_color(s: IntervalSet) -> Coloring:
    coloring, _ = reference_recursive_color_with_trace(s)
    return coloring


def reference_recursive_color_with_trace(s: IntervalSet) -> tuple[Coloring, list[TraceEntry]]:
    """Peel a minimal cover per level, 2-color it, recurse shifted by two.

    The cover spans the whole union, so the residual set's clique number drops
    by one per level; the cover itself is an undirected linear forest and is
    colored 1/2 alternating from the left end of each path component.
    """
    assignment: dict = {}
    trace: list[TraceEntry] = []
    remaining = s.intervals
    level = 0
    while remaining:
        level += 1
        shift = 2 * (level - 1)
        selection = select_cover(IntervalSet(remaining))
        cover_ids = set(selection.cover)
        cover = sorted((iv for iv in remaining if iv.id in cover_ids),
                       key=lambda iv: (iv.left, iv.id))
        prev: Optional[Interval] = None
        color = 0
        for iv in cover:
            if prev is not None and iv.intersects(prev):
                color = 3 - color  # alternate along the path component
            else:
                color = 1  # leftmost interval of a new component
            assignment[iv.id] = color + shift
            trace.append(TraceEntry(iv.id, level, "R", color + shift))
            prev = iv
        remaining = tuple(iv for iv in remaining if iv.id not in cover_ids)
    return Coloring.from_map(assignment), trace
