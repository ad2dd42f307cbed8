"""Recognition of containment interval graphs.

Three phases: build the MPQ-tree of the underlying undirected graph, fix a
rotation top-down (bound-vertex analysis decides forced orientations), then
perturb endpoints: group left/right endpoints by first/last clique, collect
forced orders, propagate decisions across distinguishing triples, and realize
any residual undecided components through a two-dimensional poset realizer.

Rejections carry machine-readable reasons: NotIntervalGraph, ArcsNotTransitive,
ArcCycle, RotationConflict, OrderConflict, NotTwoDimensional.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    NotAPosetError,
    NotTwoDimensionalError,
    RecognitionReject,
    RejectReason,
)
from .intervals import Interval, IntervalSet, MixedGraph, build_containment, edge_key, underlying_undirected
from .mpq import MPQNode, MPQTree, mpq_build
from .realizer import realizer_2d


@dataclass
class BoundLabel:
    """Bound classification of a vertex above a node, with its level."""

    level: int
    left: bool
    right: bool


def _prevalidate_arcs(g: MixedGraph) -> None:
    succ: dict[str, set[str]] = {}
    for u, v in g.arcs:
        succ.setdefault(u, set()).add(v)
    # Cycle check via DFS coloring.
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {v: WHITE for v in g.vertices}
    for start in sorted(g.vertices):
        if color[start] != WHITE:
            continue
        stack = [(start, iter(sorted(succ.get(start, ()))))]
        color[start] = GRAY
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == GRAY:
                    raise RecognitionReject(RejectReason.ARC_CYCLE,
                                            f"directed cycle through {nxt!r}")
                if color[nxt] == WHITE:
                    color[nxt] = GRAY
                    stack.append((nxt, iter(sorted(succ.get(nxt, ())))))
                    advanced = True
                    break
            if not advanced:
                color[node] = BLACK
                stack.pop()
    for u, outs in succ.items():
        for v in outs:
            for w in succ.get(v, ()):
                if w != u and w not in outs:
                    raise RecognitionReject(
                        RejectReason.ARCS_NOT_TRANSITIVE,
                        f"arcs {(u, v)!r} and {(v, w)!r} without {(u, w)!r}")


def classify_bound(tree: MPQTree, node: MPQNode, g: MixedGraph) -> dict[str, BoundLabel]:
    """Left/right/l-level bound labels for every vertex above node.

    Level 1 reads the decided geometry: a vertex is left-1-bound when one of
    its cliques sits strictly left of node's subtree in the current frontier
    (all ancestors are already rotated). Higher levels propagate across edges
    breadth-first, flipping side each step.
    """
    leaves = tree.leaves()
    pos_of_leaf = {id(leaf): i for i, leaf in enumerate(leaves)}
    sub = {id(leaf) for leaf in node.leaves()}
    lo = min(pos_of_leaf[i] for i in sub)
    hi = max(pos_of_leaf[i] for i in sub)
    above = tree.above_set(node)
    occupied: dict[str, list[int]] = {v: [] for v in above}
    for i, leaf in enumerate(leaves):
        for v in tree.cliques[leaf.clique]:
            if v in occupied:
                occupied[v].append(i)

    labels: dict[str, BoundLabel] = {}
    for v in above:
        left = min(occupied[v]) < lo
        right = max(occupied[v]) > hi
        if left or right:
            labels[v] = BoundLabel(1, left, right)

    unbound = set(above) - set(labels)
    edges_in = [(u, v) for u, v in g.edges if u in above and v in above]
    level = 1
    while True:
        level += 1
        prev_left = {v for v, lab in labels.items() if lab.level == level - 1 and lab.left}
        prev_right = {v for v, lab in labels.items() if lab.level == level - 1 and lab.right}
        new: dict[str, BoundLabel] = {}
        for u, v in edges_in:
            for a, b in ((u, v), (v, u)):
                if a not in unbound:
                    continue
                goes_right = b in prev_left
                goes_left = b in prev_right
                if goes_left or goes_right:
                    lab = new.setdefault(a, BoundLabel(level, False, False))
                    lab.left = lab.left or goes_left
                    lab.right = lab.right or goes_right
        if not new:
            return labels
        labels.update(new)
        unbound -= set(new)


def rotate_node(tree: MPQTree, node: MPQNode, labels: dict[str, BoundLabel],
                g: MixedGraph) -> str:
    """Decide one branching node's rotation in place; returns a short audit tag."""
    above = tree.above_set(node)
    below = tree.below_set(node)
    b_sets = tree.child_below_sets(node)

    constraints = []  # (level, 'first' | 'last', v, w)
    for u, v in g.edges:
        for a, w in ((u, v), (v, u)):
            if a in above and w in below and a in labels:
                lab = labels[a]
                # A vertex bound on both sides forces both ends; at the
                # minimal level that is an immediate contradiction.
                if lab.left:
                    constraints.append((lab.level, "last", a, w))
                if lab.right:
                    constraints.append((lab.level, "first", a, w))
    if constraints:
        lmin = min(c[0] for c in constraints)
        constraints = [c for c in constraints if c[0] == lmin]

    if node.kind == "Q":
        want = None  # None = free, True = keep, False = flip
        first_set, last_set = b_sets[0], b_sets[-1]
        for _, end, v, w in constraints:
            if w in last_set and w not in first_set:
                need = (end == "last")
            elif w in first_set and w not in last_set:
                need = (end == "first")
            else:
                raise RecognitionReject(
                    RejectReason.ROTATION_CONFLICT,
                    f"edge {{{v},{w}}} forces {w!r} to a middle Q-child")
            if want is None:
                want = need
            elif want != need:
                raise RecognitionReject(
                    RejectReason.ROTATION_CONFLICT,
                    f"conflicting orientation forced at {w!r}")
        if want is False:
            node.flip()
            return "flip"
        return "keep"

    # P-node: specials are children receiving any edge from above.
    specials = []
    for i, b in enumerate(b_sets):
        if any((edge_key(a, w) in g.edges) for a in above for w in b):
            specials.append(i)
    if len(specials) > 2:
        raise RecognitionReject(RejectReason.ROTATION_CONFLICT,
                                f"{len(specials)} special children of a P-node")
    need_first: Optional[int] = None
    need_last: Optional[int] = None
    for _, end, v, w in constraints:
        owners = [i for i, b in enumerate(b_sets) if w in b]
        assert len(owners) == 1
        i = owners[0]
        if end == "first":
            if need_first is not None and need_first != i:
                raise RecognitionReject(RejectReason.ROTATION_CONFLICT,
                                        "two children forced to the first slot")
            if need_last == i:
                raise RecognitionReject(RejectReason.ROTATION_CONFLICT,
                                        f"child of {w!r} forced to both ends")
            need_first = i
        else:
            if need_last is not None and need_last != i:
                raise RecognitionReject(RejectReason.ROTATION_CONFLICT,
                                        "two children forced to the last slot")
            if need_first == i:
                raise RecognitionReject(RejectReason.ROTATION_CONFLICT,
                                        f"child of {w!r} forced to both ends")
            need_last = i
    free_specials = [i for i in specials if i not in (need_first, need_last)]
    if need_first is None and free_specials:
        need_first = free_specials.pop(0)
    if need_last is None and free_specials:
        need_last = free_specials.pop(0)
    if free_specials:
        raise RecognitionReject(RejectReason.ROTATION_CONFLICT,
                                "more special children than free end slots")
    order = []
    if need_first is not None:
        order.append(need_first)
    order.extend(i for i in range(len(node.children))
                 if i not in (need_first, need_last))
    if need_last is not None and need_last != need_first:
        order.append(need_last)
    node.children = [node.children[i] for i in order]
    return "arranged"


def _check_no_upward_arcs(tree: MPQTree, g: MixedGraph) -> None:
    """No arc may point from below a branching node to above it."""
    for node in tree.walk():
        if len(node.children) < 2:
            continue
        above = tree.above_set(node)
        below = tree.below_set(node)
        for w, v in g.arcs:
            if w in below and v in above:
                raise RecognitionReject(
                    RejectReason.ROTATION_CONFLICT,
                    f"arc {(w, v)!r} points from below a branching node to above it")


def rotate_tree(tree: MPQTree, g: MixedGraph) -> None:
    queue = [tree.root]
    while queue:
        node = queue.pop(0)
        if len(node.children) >= 2:
            labels = classify_bound(tree, node, g)
            rotate_node(tree, node, labels, g)
        queue.extend(node.children)


# ---------------------------------------------------------------------------
# Phase 3: endpoint perturbation


def _order_lookup(g: MixedGraph, L, R, decided, a, b) -> Optional[bool]:
    """True when a's left endpoint precedes b's, False when b's does, None unknown."""
    if L[a] != L[b]:
        return L[a] < L[b]
    rel = g.relation(a, b)
    if rel == "arc":
        return True  # container's left comes first
    if rel == "rarc":
        return False
    if R[a] != R[b]:
        return R[a] < R[b]  # edge: left order equals right order
    return decided.get((a, b))


def _right_order_lookup(g: MixedGraph, L, R, decided, a, b) -> Optional[bool]:
    """True when a's right endpoint precedes b's; arcs flip relative to lefts."""
    if R[a] != R[b]:
        return R[a] < R[b]
    rel = g.relation(a, b)
    if rel == "arc":
        return False  # container's right comes last
    if rel == "rarc":
        return True
    if L[a] != L[b]:
        return L[a] < L[b]
    return decided.get((a, b))


def perturb_endpoints(tree: MPQTree, g: MixedGraph) -> IntervalSet:
    frontier = tree.frontier()
    m = len(frontier)
    L: dict[str, int] = {}
    R: dict[str, int] = {}
    for idx, clique in enumerate(frontier, start=1):
        for v in clique:
            if v not in L:
                L[v] = idx
            R[v] = idx
    for v in g.vertices:
        assert v in L, f"vertex {v!r} missing from frontier"

    # Feasibility of every relation against the clique ranges.
    for u, v in g.arcs:
        if not (L[u] <= L[v] and R[v] <= R[u]):
            raise RecognitionReject(
                RejectReason.ORDER_CONFLICT,
                f"arc {(u, v)!r} incompatible with clique ranges")
    for u, v in g.edges:
        if L[u] != L[v] and R[u] != R[v] and (L[u] < L[v]) != (R[u] < R[v]):
            raise RecognitionReject(
                RejectReason.ORDER_CONFLICT,
                f"edge {{{u},{v}}} would force a containment")

    # Same-both-group edge pairs start undecided; everything else is forced.
    decided: dict[tuple[str, str], bool] = {}
    undecided: set[tuple[str, str]] = set()
    verts = sorted(g.vertices)
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            if L[u] == L[v] and R[u] == R[v] and g.relation(u, v) == "edge":
                undecided.add((u, v))

    def set_decided(u, v, u_first: bool):
        decided[(u, v)] = u_first
        decided[(v, u)] = not u_first

    changed = True
    while changed and undecided:
        changed = False
        for u, v in sorted(undecided):
            resolved: Optional[bool] = None
            for w in verts:
                if w in (u, v):
                    continue
                rel_u = g.relation(w, u)
                rel_v = g.relation(w, v)
                if rel_u == rel_v:
                    continue
                if rel_u == "none" or rel_v == "none":
                    # Same ranges make adjacency symmetric; cannot happen.
                    raise RecognitionReject(
                        RejectReason.ORDER_CONFLICT,
                        f"{w!r} adjacent to only one of the twins {u!r},{v!r}")
                if {rel_u, rel_v} == {"arc", "rarc"}:
                    raise RecognitionReject(
                        RejectReason.ORDER_CONFLICT,
                        f"opposite arcs from {w!r} to {u!r},{v!r} despite an edge")
                if rel_v == "edge":
                    # w is arc-related to u: u tracks w relative to v.
                    ow = _order_lookup(g, L, R, decided, w, v)
                    if ow is not None:
                        resolved = ow
                        break
                else:
                    # w is arc-related to v: v tracks w relative to u.
                    ow = _order_lookup(g, L, R, decided, w, u)
                    if ow is not None:
                        resolved = not ow
                        break
            if resolved is not None:
                set_decided(u, v, resolved)
                undecided.discard((u, v))
                changed = True

    # Residual undecided pairs: contract components, realize each as a
    # two-dimensional poset inside the representative's slot.
    comp_of: dict[str, int] = {}
    members: dict[int, list[str]] = {}
    if undecided:
        adj: dict[str, set[str]] = {}
        for u, v in undecided:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        cid = 0
        for v in sorted(adj):
            if v in comp_of:
                continue
            stack, comp = [v], []
            comp_of[v] = cid
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj.get(x, ()):
                    if y not in comp_of:
                        comp_of[y] = cid
                        stack.append(y)
            members[cid] = sorted(comp)
            cid += 1

    realizers: dict[int, tuple] = {}
    for cid, comp in members.items():
        arcs = [(u, v) for u in comp for v in comp if g.relation(u, v) == "arc"]
        try:
            rz = realizer_2d(comp, arcs)
        except NotAPosetError as exc:
            raise RecognitionReject(RejectReason.ORDER_CONFLICT, str(exc))
        except NotTwoDimensionalError as exc:
            raise RecognitionReject(RejectReason.NOT_TWO_DIMENSIONAL, str(exc))
        realizers[cid] = (rz.order1, rz.order2)

    reps = {comp[0] for comp in members.values()}
    dropped = {v for comp in members.values() for v in comp[1:]}

    def tokens_of_group(group_verts: list[str], lookup) -> list[str]:
        # Every token pair is ordered (same-group vertices share a clique, so
        # they are adjacent); toposort the tournament or reject on a cycle.
        order = []
        remaining = {v for v in group_verts if v not in dropped}
        while remaining:
            found = None
            for cand in sorted(remaining):
                if all(lookup(g, L, R, decided, other, cand) is not True
                       for other in remaining if other != cand):
                    found = cand
                    break
            if found is None:
                raise RecognitionReject(RejectReason.ORDER_CONFLICT,
                                        "cyclic endpoint order inside a group")
            order.append(found)
            remaining.discard(found)
        return order

    left_groups: dict[int, list[str]] = {}
    right_groups: dict[int, list[str]] = {}
    for v in verts:
        left_groups.setdefault(L[v], []).append(v)
        right_groups.setdefault(R[v], []).append(v)

    lefts: dict[str, Fraction] = {}
    rights: dict[str, Fraction] = {}
    for gidx, group in sorted(left_groups.items()):
        order = tokens_of_group(group, _order_lookup)
        width = Fraction(1, 2 * (len(order) + 1))
        for i, v in enumerate(order):
            base = Fraction(gidx) - Fraction(1, 2) + width * (i + 1)
            if v in reps:
                comp = members[comp_of[v]]
                r1 = realizers[comp_of[v]][0]
                sub = width / (2 * (len(comp) + 1))
                for j, u in enumerate(r1):
                    lefts[u] = base + sub * (j + 1)
            else:
                lefts[v] = base
    for gidx, group in sorted(right_groups.items()):
        order = tokens_of_group(group, _right_order_lookup)
        width = Fraction(1, 2 * (len(order) + 1))
        for i, v in enumerate(order):
            base = Fraction(gidx) + width * (i + 1)
            if v in reps:
                comp = members[comp_of[v]]
                r2 = realizers[comp_of[v]][1]
                sub = width / (2 * (len(comp) + 1))
                # Scanning right to left must meet rights in realizer order.
                for j, u in enumerate(reversed(r2)):
                    rights[u] = base + sub * (j + 1)
            else:
                rights[v] = base
    intervals = [Interval(v, lefts[v], rights[v]) for v in verts]
    return IntervalSet(intervals)


def recognize(g: MixedGraph) -> IntervalSet:
    """Containment representation of g, or RecognitionReject with a reason."""
    if not g.vertices:
        return IntervalSet([])
    _prevalidate_arcs(g)
    u = underlying_undirected(g)
    tree = mpq_build(u)
    _check_no_upward_arcs(tree, g)
    rotate_tree(tree, g)
    s = perturb_endpoints(tree, g)
    rebuilt = build_containment(s)
    assert rebuilt.same_labeled_sets(g), "internal: rebuilt graph differs"
    return s


def emit_tree(g: MixedGraph) -> str:
    """Rotated MPQ-tree of g as indented text (debugging aid)."""
    _prevalidate_arcs(g)
    tree = mpq_build(underlying_undirected(g))
    _check_no_upward_arcs(tree, g)
    rotate_tree(tree, g)
    return tree.dump()
