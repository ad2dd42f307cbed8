import math
import random
from fractions import Fraction

import pytest

from mik.coloring import (
    Coloring,
    ViolationKind,
    chromatic_lower_bound,
    compute_layers,
    exact_chromatic,
    greedy_interval_color,
    layered_color,
    verify,
)
from mik.errors import DirectedCycleError, SolverTimeout
from mik.generators import gen_family_gk, gen_family_in, gen_random
from mik.intervals import (
    Interval,
    IntervalSet,
    MixedGraph,
    build_containment,
    build_directional,
    compute_stats,
)
from oracles import brute_longest_path_to, naive_chromatic


def iv(id, a, b):
    return Interval(id, Fraction(a), Fraction(b))


class TestVerify:
    def test_edge_equal_color(self):
        g = MixedGraph("ab", [("a", "b")], [])
        out = verify(g, Coloring.from_map({"a": 1, "b": 1}))
        assert [v.kind for v in out] == [ViolationKind.EDGE_EQUAL_COLOR]

    def test_arc_not_increasing(self):
        g = MixedGraph("ab", [], [("a", "b")])
        out = verify(g, Coloring.from_map({"a": 2, "b": 1}))
        assert [v.kind for v in out] == [ViolationKind.ARC_NOT_INCREASING]
        assert out[0].pair == ("a", "b")

    def test_uncolored(self):
        g = MixedGraph("ab", [("a", "b")], [])
        out = verify(g, Coloring.from_map({"a": 1}))
        assert ViolationKind.UNCOLORED_VERTEX in {v.kind for v in out}

    def test_proper_family_witness(self):
        inst = gen_family_in(4)
        assert verify(build_containment(inst.intervals), inst.witness) == []


class TestLayers:
    def test_no_arcs(self):
        g = MixedGraph("abc", [("a", "b")], [])
        lay = compute_layers(g)
        assert lay.depth == 0 and set(lay.layer.values()) == {0}

    def test_chain(self):
        g = MixedGraph("abc", [], [("a", "b"), ("b", "c")])
        lay = compute_layers(g)
        assert lay.depth == 2
        assert [lay.layer[v] for v in "abc"] == [0, 1, 2]

    def test_gk_depth(self):
        assert compute_layers(gen_family_gk(2).graph).depth == 1

    def test_cycle_raises(self):
        g = MixedGraph("ab", [], [("a", "b"), ("b", "a")])
        with pytest.raises(DirectedCycleError):
            compute_layers(g)

    def test_layers_are_longest_paths(self):
        rng = random.Random(13)
        for _ in range(40):
            n = rng.randint(1, 10)
            vs = [f"v{i}" for i in range(n)]
            arcs = [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)
                    if rng.random() < 0.35]
            g = MixedGraph(vs, [], arcs)
            lay = compute_layers(g)
            brute = brute_longest_path_to(vs, arcs)
            for v in vs:
                assert lay.layer[v] == brute[v]
                assert (lay.layer[v] == 0) == (not any(y == v for _, y in arcs))


class TestGreedy:
    def test_disjoint_share_color(self):
        s = IntervalSet([iv("a", 0, 1), iv("b", 2, 3)])
        c = greedy_interval_color(s)
        assert c.assignment == {"a": 1, "b": 1}

    def test_clique_needs_k(self):
        s = IntervalSet([iv(f"v{i}", i, 10 + i) for i in range(5)])
        c = greedy_interval_color(s)
        assert c.max_color == 5 and c.colors_used == 5

    def test_family_omega(self):
        inst = gen_family_in(3)
        assert greedy_interval_color(inst.intervals).max_color == 3

    def test_exactly_omega_random(self):
        rng = random.Random(2)
        for _ in range(60):
            n = rng.randint(1, 25)
            coords = rng.sample(range(1, 200), 2 * n)
            items = []
            for i in range(n):
                a, b = sorted((coords[2 * i], coords[2 * i + 1]))
                items.append(iv(f"v{i:02d}", a, b))
            s = IntervalSet(items)
            g = build_containment(s)
            st = compute_stats(g, s)
            c = greedy_interval_color(s)
            assert c.max_color == st.omega
            assert not [v for v in verify(MixedGraph(g.vertices,
                        set(g.edges) | {tuple(sorted(a)) for a in g.arcs}, []), c)]


class TestLayered:
    def test_no_arcs_equals_greedy(self):
        s = IntervalSet([iv("a", 0, 3), iv("b", 1, 4), iv("c", 5, 6)])
        g = MixedGraph([x.id for x in s], build_containment(s).edges, [])
        assert layered_color(g, s) == greedy_interval_color(s)

    def test_gk_bound(self):
        inst = gen_family_gk(2)
        s = inst.intervals
        g = inst.graph
        f = layered_color(g, s)
        assert verify(g, f) == []
        assert f.max_color <= 8

    def test_random_proper_and_bounded(self):
        for seed in range(25):
            s = gen_random(seed % 40 + 5, seed, "uniform")
            for build in (build_containment, build_directional):
                g = build(s)
                f = layered_color(g, s)
                st = compute_stats(g, s)
                assert verify(g, f) == []
                assert f.max_color <= (st.lam + 1) * st.omega


class TestExact:
    def test_single_vertex(self):
        g = MixedGraph("a", [], [])
        chi, w = exact_chromatic(g)
        assert chi == 1 and w.assignment == {"a": 1}

    def test_family_values(self):
        chi, w = exact_chromatic(build_containment(gen_family_in(2).intervals))
        assert chi == 3
        chi2, w2 = exact_chromatic(gen_family_gk(2).graph)
        assert chi2 == 6

    def test_agrees_with_naive(self):
        rng = random.Random(21)
        for _ in range(40):
            n = rng.randint(1, 7)
            vs = [f"v{i}" for i in range(n)]
            edges, arcs = [], []
            for i in range(n):
                for j in range(i + 1, n):
                    r = rng.random()
                    if r < 0.25:
                        edges.append((vs[i], vs[j]))
                    elif r < 0.4:
                        arcs.append((vs[i], vs[j]))  # i<j keeps the DAG acyclic
            g = MixedGraph(vs, edges, arcs)
            chi, w = exact_chromatic(g)
            assert verify(g, w) == []
            assert w.max_color == chi
            assert chi == naive_chromatic(vs, g.edges, g.arcs)

    def test_cycle_raises(self):
        g = MixedGraph("ab", [], [("a", "b"), ("b", "a")])
        with pytest.raises(DirectedCycleError):
            exact_chromatic(g)

    def test_timeout_carries_bounds(self):
        inst = gen_family_gk(3)
        with pytest.raises(SolverTimeout) as exc:
            exact_chromatic(inst.graph, time_budget=0.01)
        assert exc.value.lower_bound >= 6

    def test_exceeds_lower_bound_strictly_on_family(self):
        for n in (2, 3):
            g = build_containment(gen_family_in(n).intervals)
            chi, _ = exact_chromatic(g)
            assert chi == 2 * n - 1 > chromatic_lower_bound(g)


class TestLowerBound:
    def test_chain(self):
        g = MixedGraph("abcd", [], [("a", "b"), ("b", "c"), ("c", "d")])
        assert chromatic_lower_bound(g) == 4

    def test_family(self):
        inst = gen_family_in(3)
        assert chromatic_lower_bound(build_containment(inst.intervals),
                                     inst.intervals) == 3

    def test_cycle_gives_infinity(self):
        g = MixedGraph("ab", [], [("a", "b"), ("b", "a")])
        assert chromatic_lower_bound(g) == math.inf
