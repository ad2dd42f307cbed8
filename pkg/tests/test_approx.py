import itertools
import random
from fractions import Fraction

import pytest

from mik.approx import (
    reference_recursive_color,
    select_cover,
    two_approx_color,
    two_approx_color_with_trace,
)
from mik.coloring import verify
from mik.errors import DuplicateEndpointsError
from mik.generators import gen_family_in, gen_random
from mik.intervals import (
    Interval,
    IntervalSet,
    Policy,
    build_containment,
    compute_stats,
)


def iv(id, a, b):
    return Interval(id, Fraction(a), Fraction(b))


def rand_set(rng, n):
    coords = rng.sample(range(1, 30 * n + 2), 2 * n)
    out = []
    for i in range(n):
        a, b = sorted((coords[2 * i], coords[2 * i + 1]))
        out.append(iv(f"v{i:03d}", a, b))
    return IntervalSet(out)


class TestTwoApprox:
    def test_disjoint_single_phase(self):
        s = IntervalSet([iv("a", 0, 1), iv("b", 2, 3), iv("c", 4, 5)])
        col, trace = two_approx_color_with_trace(s)
        assert set(col.assignment.values()) == {1}
        assert all(t.phase == 1 for t in trace)
        assert [t.case for t in trace] == ["start", "I", "I"]

    def test_family_exact_values(self):
        for n in range(1, 11):
            inst = gen_family_in(n)
            col = two_approx_color(inst.intervals)
            assert col.max_color == 2 * n - 1
            assert verify(build_containment(inst.intervals), col) == []

    def test_rejects_duplicate_endpoints(self):
        s = IntervalSet([iv("a", 0, 2), iv("b", 0, 3)])
        with pytest.raises(DuplicateEndpointsError):
            two_approx_color(s)
        col = two_approx_color(s, Policy.PERTURB_BY_ID)
        assert verify(build_containment(validate_set(s)), col) == []

    def test_proper_and_bounded_random(self):
        rng = random.Random(31)
        for _ in range(120):
            s = rand_set(rng, rng.randint(1, 40))
            g = build_containment(s)
            st = compute_stats(g, s)
            col = two_approx_color(s)
            assert verify(g, col) == []
            assert col.max_color <= 2 * st.omega - 1


def validate_set(s):
    from mik.intervals import validate_input
    return validate_input(s, Policy.PERTURB_BY_ID)


class TestSelectCover:
    def test_nested_pair(self):
        sel = select_cover(IntervalSet([iv("a", 0, 10), iv("b", 2, 3)]))
        assert sel.maximal == {"a"} and sel.cover == ("a",)

    def test_middle_omitted(self):
        # y sits inside x union z, so the minimal cover drops it
        s = IntervalSet([iv("x", 0, 5), iv("y", 3, 7), iv("z", 4, 9)])
        sel = select_cover(s)
        assert set(sel.cover) == {"x", "z"}

    def test_union_and_minimality_random(self):
        rng = random.Random(17)
        for _ in range(80):
            s = rand_set(rng, rng.randint(1, 18))
            sel = select_cover(s)
            cover = [s.by_id[i] for i in sel.cover]

            def union(items):
                segs = sorted((i.left, i.right) for i in items)
                merged = []
                for a, b in segs:
                    if merged and a <= merged[-1][1]:
                        merged[-1] = (merged[-1][0], max(merged[-1][1], b))
                    else:
                        merged.append((a, b))
                return merged

            assert union(cover) == union(list(s))
            for skip in sel.cover:
                rest = [s.by_id[i] for i in sel.cover if i != skip]
                assert union(rest) != union(list(s))

    def test_cover_is_linear_forest_without_arcs(self):
        rng = random.Random(23)
        for _ in range(80):
            s = rand_set(rng, rng.randint(1, 18))
            sel = select_cover(s)
            sub = IntervalSet([s.by_id[i] for i in sel.cover])
            g = build_containment(sub)
            assert not g.arcs
            deg = {v: 0 for v in g.vertices}
            for u, v in g.edges:
                deg[u] += 1
                deg[v] += 1
            assert all(d <= 2 for d in deg.values())
            # no cycles: a forest has fewer edges than vertices per component
            assert len(g.edges) < max(len(g.vertices), 1) or not g.vertices

    def test_residual_clique_number_drops(self):
        rng = random.Random(29)
        for _ in range(30):
            s = rand_set(rng, rng.randint(2, 16))
            remaining = list(s)
            prev_omega = compute_stats(build_containment(s), s).omega
            while remaining:
                cur = IntervalSet(remaining)
                omega = compute_stats(build_containment(cur), cur).omega
                assert omega <= prev_omega
                sel = select_cover(cur)
                remaining = [x for x in remaining if x.id not in set(sel.cover)]
                if remaining:
                    nxt = IntervalSet(remaining)
                    assert compute_stats(build_containment(nxt), nxt).omega \
                        <= omega - 1
                prev_omega = omega


class TestRecursive:
    def test_single_interval(self):
        col = reference_recursive_color(IntervalSet([iv("a", 0, 1)]))
        assert col.assignment == {"a": 1}

    def test_family_exact(self):
        for n in range(1, 8):
            inst = gen_family_in(n)
            col = reference_recursive_color(inst.intervals)
            assert col.max_color == 2 * n - 1
            assert verify(build_containment(inst.intervals), col) == []

    def test_proper_and_bounded_random(self):
        rng = random.Random(37)
        for _ in range(120):
            s = rand_set(rng, rng.randint(1, 40))
            g = build_containment(s)
            st = compute_stats(g, s)
            col = reference_recursive_color(s)
            assert verify(g, col) == []
            assert col.max_color <= 2 * st.omega - 1

    def test_engines_agree_within_bound(self):
        for seed in range(20):
            s = gen_random(30, seed, "nested-heavy")
            st = compute_stats(build_containment(s), s)
            a = two_approx_color(s).max_color
            b = reference_recursive_color(s).max_color
            bound = 2 * st.omega - 1
            assert a <= bound and b <= bound
