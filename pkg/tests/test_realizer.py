import itertools
import random

import pytest

from mik.errors import NotAPosetError, NotTwoDimensionalError
from mik.realizer import Realizer, realizer_2d
from oracles import brute_realizer_exists


def check_realizer(elems, arcs, rz: Realizer):
    pos1 = {v: i for i, v in enumerate(rz.order1)}
    pos2 = {v: i for i, v in enumerate(rz.order2)}
    arcset = set(arcs)
    for u in elems:
        for v in elems:
            if u == v:
                continue
            below = pos1[u] < pos1[v] and pos2[u] < pos2[v]
            assert below == ((u, v) in arcset)


def all_posets(elems):
    """Every strict partial order on elems (labeled), by checking all arc sets."""
    pairs = [(u, v) for u in elems for v in elems if u != v]
    for bits in itertools.product([0, 1], repeat=len(pairs)):
        arcs = {p for p, b in zip(pairs, bits) if b}
        if any((v, u) in arcs for u, v in arcs):
            continue
        ok = True
        for u, v in arcs:
            for w, x in arcs:
                if v == w and (u, x) not in arcs:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield arcs


def standard_example(k):
    """S_k: minimal/maximal bipartite poset of dimension k (k >= 3)."""
    arcs = set()
    for i in range(k):
        for j in range(k):
            if i != j:
                arcs.add((f"a{i}", f"b{j}"))
    return [f"a{i}" for i in range(k)] + [f"b{i}" for i in range(k)], arcs


def test_total_order():
    rz = realizer_2d("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    assert rz.order1 == ("a", "b", "c") and rz.order2 == ("a", "b", "c")


def test_antichain():
    rz = realizer_2d("ab", [])
    assert sorted(rz.order1) == ["a", "b"]
    assert rz.order1 != rz.order2


def test_standard_example_s3_rejected():
    elems, arcs = standard_example(3)
    assert not brute_realizer_exists(elems, arcs)
    with pytest.raises(NotTwoDimensionalError):
        realizer_2d(elems, arcs)


def test_not_a_poset():
    with pytest.raises(NotAPosetError):
        realizer_2d("abc", [("a", "b"), ("b", "c")])  # missing (a, c)
    with pytest.raises(NotAPosetError):
        realizer_2d("ab", [("a", "b"), ("b", "a")])


def test_agrees_with_brute_force_small():
    for n in range(1, 5):
        elems = [chr(ord("a") + i) for i in range(n)]
        for arcs in all_posets(elems):
            want = brute_realizer_exists(elems, arcs)
            try:
                rz = realizer_2d(elems, arcs)
            except NotTwoDimensionalError:
                assert not want, (elems, arcs)
            else:
                assert want, (elems, arcs)
                check_realizer(elems, arcs, rz)


def test_agrees_with_brute_force_random_larger():
    rng = random.Random(41)
    for _ in range(150):
        n = rng.randint(5, 7)
        elems = [f"e{i}" for i in range(n)]
        arcs = set()
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.3:
                    arcs.add((elems[i], elems[j]))
        # transitive closure keeps it a poset
        changed = True
        while changed:
            changed = False
            for u, v in list(arcs):
                for w, x in list(arcs):
                    if v == w and (u, x) not in arcs:
                        arcs.add((u, x))
                        changed = True
        want = brute_realizer_exists(elems, arcs)
        try:
            rz = realizer_2d(elems, arcs)
        except NotTwoDimensionalError:
            assert not want, arcs
        else:
            assert want
            check_realizer(elems, arcs, rz)
