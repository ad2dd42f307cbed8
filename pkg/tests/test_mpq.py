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
from mik.mpq import maximal_cliques, mpq_build
from oracles import brute_max_clique, clique_orders_with_consecutive_vertices


def iv(id, a, b):
    return Interval(id, Fraction(a), Fraction(b))


def rand_interval_graph(rng, n):
    coords = rng.sample(range(1, 20 * n + 2), 2 * n)
    out = []
    for i in range(n):
        a, b = sorted((coords[2 * i], coords[2 * i + 1]))
        out.append(iv(f"v{i:02d}", a, b))
    s = IntervalSet(out)
    return s, underlying_undirected(build_containment(s))


def brute_maximal_cliques(g):
    vs = sorted(g.vertices)
    adj = g.adjacency()
    cliques = []
    for r in range(1, len(vs) + 1):
        for combo in itertools.combinations(vs, r):
            if all(b in adj[a] for a, b in itertools.combinations(combo, 2)):
                cliques.append(frozenset(combo))
    return {c for c in cliques if not any(c < d for d in cliques)}


def all_rotations(tree):
    """Frontiers of every rotation of the tree (desk-scale enumeration)."""
    from mik.mpq import MPQNode

    def expand(node):
        if node.is_leaf():
            yield (node.clique,)
            return
        child_opts = [list(expand(c)) for c in node.children]
        if node.kind == "P":
            for perm in itertools.permutations(range(len(node.children))):
                for combo in itertools.product(*(child_opts[i] for i in perm)):
                    yield tuple(x for part in combo for x in part)
        else:
            for flip in (False, True):
                order = range(len(node.children)) if not flip \
                    else range(len(node.children) - 1, -1, -1)
                for combo in itertools.product(*(child_opts[i] for i in order)):
                    yield tuple(x for part in combo for x in part)

    return set(expand(tree.root))


class TestCliques:
    def test_triangle(self):
        g = MixedGraph("abc", [("a", "b"), ("b", "c"), ("a", "c")], [])
        assert maximal_cliques(g) == [frozenset("abc")]

    def test_c4_rejected(self):
        g = MixedGraph("abcd",
                       [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], [])
        with pytest.raises(RecognitionReject) as exc:
            maximal_cliques(g)
        assert exc.value.reason is RejectReason.NOT_INTERVAL_GRAPH

    def test_random_interval_graphs(self):
        rng = random.Random(51)
        for _ in range(60):
            _, g = rand_interval_graph(rng, rng.randint(1, 11))
            assert set(maximal_cliques(g)) == brute_maximal_cliques(g)


class TestMPQBuild:
    def test_single_clique(self):
        g = MixedGraph("abc", [("a", "b"), ("b", "c"), ("a", "c")], [])
        tree = mpq_build(g)
        assert tree.frontier() == [frozenset("abc")]

    def test_c4_rejected(self):
        g = MixedGraph("abcd",
                       [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], [])
        with pytest.raises(RecognitionReject) as exc:
            mpq_build(g)
        assert exc.value.reason is RejectReason.NOT_INTERVAL_GRAPH

    def test_chordal_non_interval_rejected(self):
        # Long claw: chordal but an asteroidal triple breaks interval-ness.
        edges = [("c", "a1"), ("c", "b1"), ("c", "d1"),
                 ("a1", "a2"), ("b1", "b2"), ("d1", "d2")]
        g = MixedGraph(["c", "a1", "a2", "b1", "b2", "d1", "d2"], edges, [])
        with pytest.raises(RecognitionReject) as exc:
            mpq_build(g)
        assert exc.value.reason is RejectReason.NOT_INTERVAL_GRAPH

    def test_frontier_and_invariants_random(self):
        rng = random.Random(52)
        for _ in range(80):
            _, g = rand_interval_graph(rng, rng.randint(1, 13))
            tree = mpq_build(g)
            tree.validate(g)
            assert set(tree.frontier()) == brute_maximal_cliques(g)

    def test_rotations_match_consecutive_orders_exactly(self):
        rng = random.Random(53)
        done = 0
        while done < 25:
            _, g = rand_interval_graph(rng, rng.randint(2, 7))
            cliques = maximal_cliques(g)
            if len(cliques) > 5:
                continue
            tree = mpq_build(g)
            got_sets = {tuple(tree.cliques[i] for i in rot)
                        for rot in all_rotations(tree)}
            want = {tuple(c) for c in clique_orders_with_consecutive_vertices(
                cliques, sorted(g.vertices))}
            assert got_sets == want
            done += 1

    def test_disconnected(self):
        g = MixedGraph("abcd", [("a", "b"), ("c", "d")], [])
        tree = mpq_build(g)
        tree.validate(g)
        assert set(tree.frontier()) == {frozenset("ab"), frozenset("cd")}

    def test_arcs_rejected(self):
        g = MixedGraph("ab", [], [("a", "b")])
        with pytest.raises(ValueError):
            mpq_build(g)
