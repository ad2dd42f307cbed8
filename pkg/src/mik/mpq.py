"""MPQ-trees for undirected interval graphs.

Pipeline: extract maximal cliques via maximum-cardinality search (rejecting
non-chordal inputs), build a PQ-tree over the cliques with the classical
reduction templates (one reduction per vertex, enforcing that the cliques
containing it stay consecutive), then convert to the modified form: vertices
are stored at P-nodes or on consecutive link segments of Q-nodes, so every
leaf's set of stored-above vertices is exactly one maximal clique.

The reduction is the unamortized textbook version; one pass costs O(n) tree
work, well within the overall O(n*m) budget this module aims for.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .errors import RecognitionReject, RejectReason
from .intervals import MixedGraph, _mcs_peo


class _C1PFail(Exception):
    pass


def maximal_cliques(g: MixedGraph) -> list[frozenset]:
    """Maximal cliques of a chordal graph, deterministically ordered.

    Raises RecognitionReject(NOT_INTERVAL_GRAPH) when the graph is not
    chordal (so certainly not interval).
    """
    adj = g.adjacency()
    if not adj:
        return []
    order = _mcs_peo(adj)
    pos = {v: i for i, v in enumerate(order)}
    candidates = []
    for v in order:
        earlier = {u for u in adj[v] if pos[u] < pos[v]}
        if earlier:
            last = max(earlier, key=lambda u: pos[u])
            if not (earlier - {last}) <= adj[last]:
                raise RecognitionReject(RejectReason.NOT_INTERVAL_GRAPH,
                                        f"not chordal near {v!r}")
        candidates.append(frozenset(earlier | {v}))
    cliques = [c for c in candidates
               if not any(c < other for other in candidates)]
    # Dedup while preserving first occurrence.
    seen = set()
    out = []
    for c in cliques:
        if c not in seen:
            seen.add(c)
            out.append(c)
    return sorted(out, key=lambda c: sorted(c))


# ---------------------------------------------------------------------------
# PQ-tree over clique indices


class _PQNode:
    __slots__ = ("kind", "children", "leaf", "cnt")

    def __init__(self, kind: str, children=None, leaf: Optional[int] = None):
        self.kind = kind  # "leaf", "P", "Q"
        self.children: list[_PQNode] = children or []
        self.leaf = leaf
        self.cnt = 0

    def leaves(self) -> list[int]:
        if self.kind == "leaf":
            return [self.leaf]
        out = []
        for c in self.children:
            out.extend(c.leaves())
        return out


def _group(kind_children: list[_PQNode]) -> Optional[_PQNode]:
    if not kind_children:
        return None
    if len(kind_children) == 1:
        return kind_children[0]
    return _PQNode("P", list(kind_children))


def _reduce(tree: _PQNode, s: set[int]) -> _PQNode:
    """One PQ reduction; returns the (possibly new) tree root or raises _C1PFail."""

    def count(node: _PQNode) -> int:
        if node.kind == "leaf":
            node.cnt = 1 if node.leaf in s else 0
        else:
            node.cnt = sum(count(c) for c in node.children)
        return node.cnt

    total = count(tree)
    assert total == len(s)
    root, parent, pidx = tree, None, None
    while root.kind != "leaf":
        inside = [(i, c) for i, c in enumerate(root.children) if c.cnt == total]
        if not inside:
            break
        parent, (pidx, root) = root, inside[0]

    EMPTY, FULL, PARTIAL = 0, 1, 2

    def reduce_inner(node: _PQNode):
        """Returns (state, replacement node). PARTIAL replacements are Q-nodes
        arranged with empty children first, full children last."""
        if node.kind == "leaf":
            return (FULL if node.cnt == 1 else EMPTY), node
        states = []
        for i, c in enumerate(node.children):
            if c.cnt == 0:
                states.append((EMPTY, c))
            elif c.cnt == len(c.leaves()):
                states.append((FULL, c))
            else:
                states.append((PARTIAL, None))
        # Recurse only into partial children.
        resolved = []
        for (st, keep), child in zip(states, node.children):
            if st == PARTIAL:
                resolved.append(reduce_inner(child))
            else:
                resolved.append((st, keep))
        if node.kind == "P":
            empties = [c for st, c in resolved if st == EMPTY]
            fulls = [c for st, c in resolved if st == FULL]
            partials = [c for st, c in resolved if st == PARTIAL]
            if len(partials) > 1:
                raise _C1PFail()
            if not partials:
                if not empties:
                    return FULL, node
                if not fulls:
                    return EMPTY, node
                mid = []
                e = _group(empties)
                f = _group(fulls)
                if e is not None:
                    mid.append(e)
                if f is not None:
                    mid.append(f)
                return PARTIAL, _PQNode("Q", mid)
            q = partials[0]
            newkids = []
            e = _group(empties)
            f = _group(fulls)
            if e is not None:
                newkids.append(e)
            newkids.extend(q.children)
            if f is not None:
                newkids.append(f)
            return PARTIAL, _PQNode("Q", newkids)
        # Q-node: states must form E* [partial] F* after an optional flip.
        sts = [st for st, _ in resolved]
        reps = [c for _, c in resolved]
        if all(st == EMPTY for st in sts):
            return EMPTY, node
        if all(st == FULL for st in sts):
            return FULL, node
        if sts.count(PARTIAL) > 1:
            raise _C1PFail()

        def pattern_ok(seq):
            # empties, then at most one partial, then fulls
            i = 0
            while i < len(seq) and seq[i] == EMPTY:
                i += 1
            if i < len(seq) and seq[i] == PARTIAL:
                i += 1
            while i < len(seq) and seq[i] == FULL:
                i += 1
            return i == len(seq)

        if pattern_ok(sts):
            order = list(range(len(sts)))
        elif pattern_ok(sts[::-1]):
            order = list(range(len(sts)))[::-1]
        else:
            raise _C1PFail()
        newkids = []
        for idx in order:
            st = sts[idx]
            rep = reps[idx]
            if st == PARTIAL:
                kids = rep.children
                # Orient the partial's empty side toward our empty run.
                newkids.extend(kids)
            else:
                newkids.append(rep)
        node.children = newkids
        return PARTIAL, node

    def reduce_root(node: _PQNode) -> _PQNode:
        if node.kind == "leaf":
            return node
        resolved = []
        for c in node.children:
            if c.cnt == 0:
                resolved.append((EMPTY, c))
            elif c.cnt == len(c.leaves()):
                resolved.append((FULL, c))
            else:
                resolved.append(reduce_inner(c))
        if node.kind == "P":
            empties = [c for st, c in resolved if st == EMPTY]
            fulls = [c for st, c in resolved if st == FULL]
            partials = [c for st, c in resolved if st == PARTIAL]
            if len(partials) > 2:
                raise _C1PFail()
            if not partials:
                if not empties or not fulls:
                    node.children = [c for _, c in resolved]
                    return node
                f = _group(fulls)
                node.children = empties + [f]
                return node
            if len(partials) == 1:
                q = partials[0]
                f = _group(fulls)
                if f is not None:
                    q.children = q.children + [f]
                if empties:
                    node.children = empties + [q]
                    return node
                return q
            q1, q2 = partials
            mid = []
            f = _group(fulls)
            if f is not None:
                mid.append(f)
            q = _PQNode("Q", q1.children + mid + list(reversed(q2.children)))
            if empties:
                node.children = empties + [q]
                return node
            return q
        # Q-node root: E* [p] F* [p] E* up to flip.
        sts = [st for st, _ in resolved]
        reps = [c for _, c in resolved]
        if sts.count(PARTIAL) > 2:
            raise _C1PFail()

        def match(seq):
            # returns True when seq is E* [P] F* [P] E*
            i = 0
            n = len(seq)
            while i < n and seq[i] == EMPTY:
                i += 1
            if i < n and seq[i] == PARTIAL:
                i += 1
            j = i
            while j < n and seq[j] == FULL:
                j += 1
            if j < n and seq[j] == PARTIAL:
                j += 1
            while j < n and seq[j] == EMPTY:
                j += 1
            return j == n and any(st != EMPTY for st in seq)

        idxs = list(range(len(sts)))
        if not match(sts):
            if match(sts[::-1]):
                idxs = idxs[::-1]
            else:
                raise _C1PFail()
        newkids = []
        seen_full_or_partial = False
        for t, idx in enumerate(idxs):
            st = sts[idx]
            rep = reps[idx]
            if st == PARTIAL:
                kids = rep.children
                # First partial: empty side out (left); second: flipped.
                if not seen_full_or_partial:
                    newkids.extend(kids)
                else:
                    newkids.extend(reversed(kids))
                seen_full_or_partial = True
            else:
                if st == FULL:
                    seen_full_or_partial = True
                newkids.append(rep)
        node.children = newkids
        return node

    new_sub = reduce_root(root)
    if new_sub is not root:
        if parent is None:
            return new_sub
        parent.children[pidx] = new_sub
    return tree


def _normalize(node: _PQNode) -> _PQNode:
    """Splice single-child P-nodes; turn 1- or 2-child Q-nodes into P-nodes."""
    node.children = [_normalize(c) for c in node.children]
    if node.kind == "Q" and len(node.children) <= 2:
        node.kind = "P"
    if node.kind == "P" and len(node.children) == 1:
        return node.children[0]
    return node


# ---------------------------------------------------------------------------
# MPQ-tree


class MPQNode:
    """P- or Q-node; leaves are P-nodes with no children and a clique index."""

    __slots__ = ("kind", "children", "clique", "assigned", "seg_sets", "parent")

    def __init__(self, kind: str, children=None, clique: Optional[int] = None):
        self.kind = kind  # "P" or "Q"
        self.children: list[MPQNode] = children or []
        self.clique = clique
        self.assigned: set[str] = set()      # stored on the link just above
        self.seg_sets: list[set[str]] = []   # Q only: per-child link sets
        self.parent: Optional[MPQNode] = None

    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> list["MPQNode"]:
        if self.is_leaf():
            return [self]
        out = []
        for c in self.children:
            out.extend(c.leaves())
        return out

    def flip(self):
        """Reverse a Q-node's child order (keeping link sets aligned)."""
        assert self.kind == "Q"
        self.children.reverse()
        self.seg_sets.reverse()


class MPQTree:
    def __init__(self, root: MPQNode, cliques: list[frozenset]):
        self.root = root
        self.cliques = cliques
        self.refresh_parents()

    def refresh_parents(self):
        self.root.parent = None
        for node in self.walk():
            for c in node.children:
                c.parent = node

    def walk(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def leaves(self) -> list[MPQNode]:
        return self.root.leaves()

    def stored_on_link_above(self, node: MPQNode) -> set:
        """Vertices on the link between node and its parent (dummy link at root)."""
        out = set(node.assigned)
        p = node.parent
        if p is not None and p.kind == "Q":
            idx = p.children.index(node)
            out |= p.seg_sets[idx]
        return out

    def above_set(self, node: MPQNode) -> set:
        """A^T_x: vertices stored on the upward path from x (its own link included)."""
        out = set()
        cur = node
        while cur is not None:
            out |= self.stored_on_link_above(cur)
            cur = cur.parent
        return out

    def below_set(self, node: MPQNode) -> set:
        """B^T_x: vertices stored on links strictly below x."""
        out = set()
        for d in _walk_mpq(node):
            if d is not node:
                out |= d.assigned
            for s in d.seg_sets:
                out |= s  # a node's own link sets sit below it
        return out

    def child_below_sets(self, node: MPQNode) -> list[set]:
        """B_i = S_{x,y_i} union B^T_{y_i} for each child y_i."""
        out = []
        for i, c in enumerate(node.children):
            b = self.below_set(c) | set(c.assigned)
            if node.kind == "Q":
                b |= node.seg_sets[i]
            out.append(b)
        return out

    def frontier(self) -> list[frozenset]:
        """Left-to-right sequence of leaf cliques (as vertex sets)."""
        out = []

        def rec(node: MPQNode, above: set):
            here = above | self.stored_on_link_above(node)
            if node.is_leaf():
                out.append(frozenset(here))
                return
            for c in node.children:
                rec(c, here)

        rec(self.root, set())
        return out

    def dump(self) -> str:
        lines = []

        def rec(node: MPQNode, depth: int):
            pad = "  " * depth
            if node.is_leaf():
                lines.append(f"{pad}leaf[{node.clique}] "
                             f"assigned={sorted(node.assigned)}")
                return
            if node.kind == "P":
                lines.append(f"{pad}P assigned={sorted(node.assigned)}")
            else:
                segs = [sorted(s) for s in node.seg_sets]
                lines.append(f"{pad}Q assigned={sorted(node.assigned)} links={segs}")
            for c in node.children:
                rec(c, depth + 1)

        rec(self.root, 0)
        return "\n".join(lines)

    def validate(self, g: MixedGraph):
        """Check the structural invariants of the modified PQ-tree form."""
        fr = self.frontier()
        if set(fr) != set(self.cliques):
            raise AssertionError("frontier cliques differ from maximal cliques")
        for node in self.walk():
            if node.kind == "Q":
                k = len(node.children)
                if k < 3:
                    raise AssertionError("Q-node with fewer than 3 children")
                if node.assigned:
                    raise AssertionError("vertices assigned directly to a Q-node")
                s = node.seg_sets
                if s[0] & s[-1]:
                    raise AssertionError("segment spans a whole Q-node")
                if not (set(s[0]) < set(s[1]) and set(s[-1]) < set(s[-2])):
                    raise AssertionError("Q-node boundary link sets not nested")
                if not self.below_set(node.children[0]) | node.children[0].assigned:
                    raise AssertionError("empty leading Q subtree")
                if not self.below_set(node.children[-1]) | node.children[-1].assigned:
                    raise AssertionError("empty trailing Q subtree")
                for i in range(1, k - 1):
                    if not (s[i] & s[i + 1]) - s[0]:
                        raise AssertionError("inner Q link set not distinguished")
                    if not (s[i - 1] & s[i]) - s[-1]:
                        raise AssertionError("inner Q link set not distinguished")
            else:
                if node.seg_sets:
                    raise AssertionError("P-node with segment sets")
                for i, c in enumerate(node.children):
                    if not (set(c.assigned) | self.below_set(c)):
                        raise AssertionError("P-node child with nothing stored")


def _walk_mpq(node: MPQNode):
    stack = [node]
    while stack:
        cur = stack.pop()
        yield cur
        stack.extend(cur.children)


def mpq_build(g: MixedGraph) -> MPQTree:
    """MPQ-tree of an undirected interval graph; rejects non-interval input."""
    if g.arcs:
        raise ValueError("mpq_build expects an undirected graph")
    cliques = maximal_cliques(g)
    if not cliques:
        return MPQTree(MPQNode("P"), [])
    if len(cliques) == 1:
        leaf = MPQNode("P", clique=0)
        leaf.assigned = set(cliques[0])
        return MPQTree(leaf, cliques)
    root = _PQNode("P", [_PQNode("leaf", leaf=i) for i in range(len(cliques))])
    clique_ids: dict[str, set[int]] = {}
    for i, c in enumerate(cliques):
        for v in c:
            clique_ids.setdefault(v, set()).add(i)
    for v in sorted(clique_ids):
        s = clique_ids[v]
        if len(s) == len(cliques) or len(s) == 1:
            continue  # unconstrained either way
        try:
            root = _reduce(root, s)
        except _C1PFail:
            raise RecognitionReject(RejectReason.NOT_INTERVAL_GRAPH,
                                    f"cliques of {v!r} cannot stay consecutive")
    root = _normalize(root)
    tree = _convert(root, cliques)
    _assign_vertices(tree, clique_ids)
    tree.refresh_parents()
    tree.validate(g)
    return tree


def _convert(node: _PQNode, cliques) -> MPQTree:
    def rec(pq: _PQNode) -> MPQNode:
        if pq.kind == "leaf":
            return MPQNode("P", clique=pq.leaf)
        m = MPQNode("P" if pq.kind == "P" else "Q",
                    [rec(c) for c in pq.children])
        if m.kind == "Q":
            m.seg_sets = [set() for _ in m.children]
        return m

    return MPQTree(rec(node), list(cliques))


def _assign_vertices(tree: MPQTree, clique_ids: dict):
    leafsets: dict[int, frozenset] = {}

    def fill(node: MPQNode) -> frozenset:
        if node.is_leaf():
            s = frozenset([node.clique])
        else:
            s = frozenset().union(*(fill(c) for c in node.children))
        leafsets[id(node)] = s
        return s

    fill(tree.root)

    for v in sorted(clique_ids):
        s = frozenset(clique_ids[v])
        node = tree.root
        while True:
            descend = None
            for c in node.children:
                if s <= leafsets[id(c)]:
                    descend = c
                    break
            if descend is None:
                break
            node = descend
        if node.is_leaf() or node.kind == "P":
            if leafsets[id(node)] != s and not node.is_leaf():
                raise AssertionError(f"vertex {v!r} spans a strict subset of a P-node")
            node.assigned.add(v)
            continue
        # Q-node: find the consecutive run of children covered by s.
        run = [i for i, c in enumerate(node.children) if leafsets[id(c)] & s]
        if run != list(range(run[0], run[-1] + 1)):
            raise AssertionError(f"vertex {v!r} cliques not consecutive under Q-node")
        if any(not leafsets[id(node.children[i])] <= s for i in run):
            raise AssertionError(f"vertex {v!r} partially covers a Q-child")
        if len(run) == len(node.children):
            # Whole-span vertices live on a P-node wrapped around the Q-node.
            parent = node.parent
            if parent is not None and parent.kind == "P" and len(parent.children) == 1:
                parent.assigned.add(v)
                continue
            wrap = MPQNode("P", [node])
            wrap.assigned.add(v)
            if parent is None:
                tree.root = wrap
            else:
                idx = parent.children.index(node)
                parent.children[idx] = wrap
                if parent.kind == "Q":
                    pass  # link set stays with the wrapped child position
            tree.refresh_parents()
            leafsets[id(wrap)] = leafsets[id(node)]
            continue
        for i in run:
            node.seg_sets[i].add(v)
