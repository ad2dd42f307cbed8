import itertools
import random
from fractions import Fraction

import pytest

from mik.errors import RecognitionReject, RejectReason
from mik.intervals import (
    Interval,
    IntervalSet,
    MixedGraph,
    build_containment,
    underlying_undirected,
)
from mik.recognition import emit_tree, perturb_endpoints, recognize, rotate_tree
from mik.mpq import mpq_build
from oracles import containment_representable, mixed_graph_rel


def iv(id, a, b):
    return Interval(id, Fraction(a), Fraction(b))


def rand_set(rng, n):
    coords = rng.sample(range(1, 24 * n + 2), 2 * n)
    out = []
    for i in range(n):
        a, b = sorted((coords[2 * i], coords[2 * i + 1]))
        out.append(iv(f"v{i:02d}", a, b))
    return IntervalSet(out)


class TestNegativeCases:
    def test_arc_two_cycle(self):
        g = MixedGraph("ab", [], [("a", "b"), ("b", "a")])
        with pytest.raises(RecognitionReject) as exc:
            recognize(g)
        assert exc.value.reason is RejectReason.ARC_CYCLE

    def test_arcs_not_transitive(self):
        # all three pairwise related, arcs a->b->c but a-c only an edge
        g = MixedGraph("abc", [("a", "c")], [("a", "b"), ("b", "c")])
        with pytest.raises(RecognitionReject) as exc:
            recognize(g)
        assert exc.value.reason is RejectReason.ARCS_NOT_TRANSITIVE

    def test_c4_shadow(self):
        g = MixedGraph("abcd",
                       [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], [])
        with pytest.raises(RecognitionReject) as exc:
            recognize(g)
        assert exc.value.reason is RejectReason.NOT_INTERVAL_GRAPH

    def test_longer_arc_cycle(self):
        g = MixedGraph("abc", [], [("a", "b"), ("b", "c"), ("c", "a")])
        with pytest.raises(RecognitionReject) as exc:
            recognize(g)
        assert exc.value.reason is RejectReason.ARC_CYCLE

    def test_edge_where_only_containment_realizable(self):
        # claw: v covers three disjoint leaves, so v must properly contain
        # the middle one in every arrangement; an edge there cannot be drawn
        g = MixedGraph("vpwq", [("v", "p"), ("v", "w"), ("v", "q")], [])
        with pytest.raises(RecognitionReject) as exc:
            recognize(g)
        assert exc.value.reason in (RejectReason.ORDER_CONFLICT,
                                    RejectReason.ROTATION_CONFLICT)
        # the same graph with arcs toward the leaves is fine
        ok = MixedGraph("vpwq", [], [("v", "p"), ("v", "w"), ("v", "q")])
        out = recognize(ok)
        assert build_containment(out).same_labeled_sets(ok)


class TestRoundTrip:
    def test_examples(self):
        s = IntervalSet([iv("a", 0, 10), iv("b", 1, 3), iv("c", 2, 6),
                         iv("d", 11, 12)])
        g = build_containment(s)
        out = recognize(g)
        assert build_containment(out).same_labeled_sets(g)

    def test_single_arc_nesting(self):
        g = MixedGraph("ab", [], [("a", "b")])
        out = recognize(g)
        assert out.by_id["a"].contains(out.by_id["b"])

    def test_antichain_triangle(self):
        g = MixedGraph("abc", [("a", "b"), ("b", "c"), ("a", "c")], [])
        out = recognize(g)
        assert build_containment(out).same_labeled_sets(g)

    def test_empty_and_singleton(self):
        assert len(recognize(MixedGraph([], [], []))) == 0
        out = recognize(MixedGraph(["a"], [], []))
        assert len(out) == 1

    def test_random_round_trips(self):
        rng = random.Random(61)
        for _ in range(120):
            s = rand_set(rng, rng.randint(1, 13))
            g = build_containment(s)
            out = recognize(g)
            assert build_containment(out).same_labeled_sets(g)

    def test_placement_windows(self):
        rng = random.Random(62)
        for _ in range(40):
            s = rand_set(rng, rng.randint(1, 10))
            g = build_containment(s)
            tree = mpq_build(underlying_undirected(g))
            rotate_tree(tree, g)
            out = perturb_endpoints(tree, g)
            frontier = tree.frontier()
            L = {}
            R = {}
            for idx, clique in enumerate(frontier, start=1):
                for v in clique:
                    L.setdefault(v, idx)
                    R[v] = idx
            for item in out:
                lv, rv = L[item.id], R[item.id]
                assert Fraction(lv) - Fraction(1, 2) < item.left < Fraction(lv)
                assert Fraction(rv) < item.right < Fraction(rv) + Fraction(1, 2)

    def test_emit_tree_runs(self):
        s = rand_set(random.Random(1), 8)
        g = build_containment(s)
        assert "P" in emit_tree(g) or "leaf" in emit_tree(g)


def enumerate_mixed_graphs(n, rng=None, sample=None):
    """All labeled mixed graphs on n vertices (or a seeded sample)."""
    vs = [chr(ord("a") + i) for i in range(n)]
    pairs = list(itertools.combinations(vs, 2))
    states = [0, 1, 2, 3]  # none, edge, arc ->, arc <-
    space = itertools.product(states, repeat=len(pairs))
    if sample is not None:
        space = (tuple(rng.choice(states) for _ in pairs) for _ in range(sample))
    for combo in space:
        edges, arcs = [], []
        for (u, v), st in zip(pairs, combo):
            if st == 1:
                edges.append((u, v))
            elif st == 2:
                arcs.append((u, v))
            elif st == 3:
                arcs.append((v, u))
        yield MixedGraph(vs, edges, arcs)


class TestAgreementWithOracle:
    def test_exhaustive_tiny(self):
        for n in range(1, 4):
            for g in enumerate_mixed_graphs(n):
                want = containment_representable(g.vertices, mixed_graph_rel(g))
                try:
                    out = recognize(g)
                except RecognitionReject:
                    assert not want, (sorted(g.edges), sorted(g.arcs))
                else:
                    assert want
                    assert build_containment(out).same_labeled_sets(g)

    def test_sampled_four_five(self):
        rng = random.Random(63)
        for n in (4, 5):
            for g in enumerate_mixed_graphs(n, rng=rng, sample=700):
                want = containment_representable(g.vertices, mixed_graph_rel(g))
                try:
                    out = recognize(g)
                except RecognitionReject:
                    assert not want, (sorted(g.edges), sorted(g.arcs))
                else:
                    assert want
                    assert build_containment(out).same_labeled_sets(g)
