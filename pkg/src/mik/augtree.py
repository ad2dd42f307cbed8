"""Treap keyed by (left endpoint, id) with a max-right-endpoint aggregate.

Expected O(log n) insert/remove/query; priorities come from a per-tree seeded
PRNG so behavior is deterministic for a fixed operation sequence. Each node
carries max(nu) = the largest right endpoint in its subtree together with a
witness pointer to the interval attaining it (ties prefer the smaller id).
"""

from __future__ import annotations

import random
from typing import Optional

from .intervals import Interval


class _Node:
    __slots__ = ("iv", "key", "prio", "left", "right", "agg")

    def __init__(self, iv: Interval, prio: float):
        self.iv = iv
        self.key = (iv.left, iv.id)
        self.prio = prio
        self.left: Optional[_Node] = None
        self.right: Optional[_Node] = None
        self.agg = iv  # interval with max right endpoint in this subtree

    def pull(self):
        best = self.iv
        for child in (self.left, self.right):
            if child is not None and _right_beats(child.agg, best):
                best = child.agg
        self.agg = best


def _right_beats(a: Interval, b: Interval) -> bool:
    return a.right > b.right or (a.right == b.right and a.id < b.id)


class AugmentedTree:
    def __init__(self, intervals=(), seed: int = 0xC0FFEE):
        self._rng = random.Random(seed)
        self._root: Optional[_Node] = None
        self._size = 0
        for iv in intervals:
            self.insert(iv)

    def __len__(self) -> int:
        return self._size

    def insert(self, iv: Interval):
        node = _Node(iv, self._rng.random())
        self._root = self._insert(self._root, node)
        self._size += 1

    def _insert(self, root: Optional[_Node], node: _Node) -> _Node:
        if root is None:
            return node
        if node.prio > root.prio:
            node.left, node.right = self._split(root, node.key)
            node.pull()
            return node
        if node.key < root.key:
            root.left = self._insert(root.left, node)
        else:
            root.right = self._insert(root.right, node)
        root.pull()
        return root

    def _split(self, root: Optional[_Node], key) -> tuple:
        """(subtree with keys < key, subtree with keys >= key)."""
        if root is None:
            return None, None
        if root.key < key:
            l, r = self._split(root.right, key)
            root.right = l
            root.pull()
            return root, r
        l, r = self._split(root.left, key)
        root.left = r
        root.pull()
        return l, root

    def remove(self, iv: Interval):
        self._root, removed = self._remove(self._root, (iv.left, iv.id))
        if not removed:
            raise KeyError(iv.id)
        self._size -= 1

    def _remove(self, root: Optional[_Node], key) -> tuple:
        if root is None:
            return None, False
        if key == root.key:
            return self._merge(root.left, root.right), True
        if key < root.key:
            root.left, removed = self._remove(root.left, key)
        else:
            root.right, removed = self._remove(root.right, key)
        root.pull()
        return root, removed

    def _merge(self, a: Optional[_Node], b: Optional[_Node]) -> Optional[_Node]:
        if a is None or b is None:
            return a or b
        if a.prio > b.prio:
            a.right = self._merge(a.right, b)
            a.pull()
            return a
        b.left = self._merge(a, b.left)
        b.pull()
        return b

    def q1(self, x=None) -> Optional[Interval]:
        """Among intervals with left endpoint >= x, one with leftmost left.

        x=None stands for -infinity. Key ties resolve to the smaller id.
        """
        node = self._root
        best = None
        while node is not None:
            if x is None or node.iv.left >= x:
                best = node
                node = node.left
            else:
                node = node.right
        return best.iv if best is not None else None

    def q2(self, y) -> Optional[Interval]:
        """Among intervals with left endpoint <= y, one with rightmost right."""
        node = self._root
        best: Optional[Interval] = None
        while node is not None:
            if node.iv.left <= y:
                cand = node.iv
                if best is None or _right_beats(cand, best):
                    best = cand
                if node.left is not None:
                    agg = node.left.agg
                    if best is None or _right_beats(agg, best):
                        best = agg
                node = node.right
            else:
                node = node.left
        return best

    def items(self) -> list[Interval]:
        out = []

        def walk(node):
            if node is None:
                return
            walk(node.left)
            out.append(node.iv)
            walk(node.right)

        walk(self._root)
        return out

    def check_aggregates(self) -> bool:
        """Recompute every aggregate from scratch; full structural check."""

        def walk(node) -> Optional[Interval]:
            if node is None:
                return None
            lbest = walk(node.left)
            rbest = walk(node.right)
            best = node.iv
            for cand in (lbest, rbest):
                if cand is not None and _right_beats(cand, best):
                    best = cand
            if node.agg is not best and (node.agg.right, node.agg.id) != (best.right, best.id):
                raise AssertionError(f"stale aggregate at {node.iv.id!r}")
            return best

        walk(self._root)
        return True
