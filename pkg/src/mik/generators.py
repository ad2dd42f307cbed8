"""Instance families, random generators, and CNF ingestion.

The recursive family I_n realizes clique number n with chromatic number 2n-1
under the containment builder; the mirrored family G_k realizes the
(lambda+1)*omega upper bound's asymptotic tightness. SAT-reduction gadget
construction lives in mik.gadgets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .coloring import Coloring
from .errors import CnfParseError, NotExact3SatError, NotMonotone3SatError
from .intervals import Interval, IntervalSet, MixedGraph, Orientation


@dataclass(frozen=True)
class GapStab:
    """One arm gap: the pieces around it and the designated stab coordinate."""

    arm: str
    left_piece: str
    right_piece: str
    x: Fraction


@dataclass(frozen=True)
class FamilyInstance:
    kind: str
    intervals: IntervalSet
    predicted: dict
    witness: Optional[Coloring] = None
    graph: Optional[MixedGraph] = None
    gap_stabs: tuple = ()
    chains: dict = field(default_factory=dict)  # name -> ids outermost-to-innermost


def rank_remap(intervals: list[Interval]) -> list[Interval]:
    """Map endpoints onto the even integer grid, preserving their order.

    Requires pairwise-distinct endpoints; relations between closed intervals
    with distinct endpoints depend only on endpoint order, so they survive.
    """
    values = sorted({iv.left for iv in intervals} | {iv.right for iv in intervals})
    if len(values) != 2 * len(intervals):
        raise ValueError("rank_remap requires distinct endpoints")
    rank = {v: Fraction(2 * (i + 1)) for i, v in enumerate(values)}
    return [Interval(iv.id, rank[iv.left], rank[iv.right], iv.orientation)
            for iv in intervals]


# ---------------------------------------------------------------------------
# Family I_n


def _build_family_in(n: int, prefix: str) -> tuple[list[Interval], dict]:
    """Returns intervals (fractional coords in [0, span]) and the witness map."""
    if n == 1:
        return [Interval(prefix + "u", 0, 1)], {prefix + "u": 1}
    span = Fraction(3) ** (n - 1)
    ell = Interval(prefix + f"l{n}", 0, span)
    rgt = Interval(prefix + f"r{n}", span - 1, 2 * span - 1)
    sub, wit = _build_family_in(n - 1, prefix + "a")
    sub2, wit2 = _build_family_in(n - 1, prefix + "b")

    def embed(items, lo: Fraction, hi: Fraction):
        src_hi = max(iv.right for iv in items)
        scale = (hi - lo) / (src_hi + 2)
        return [Interval(iv.id, lo + scale * (iv.left + 1), lo + scale * (iv.right + 1))
                for iv in items]

    out = [ell, rgt]
    out += embed(sub, Fraction(0), span - 1)       # inside ell, clear of rgt
    out += embed(sub2, span, 2 * span - 1)         # inside rgt, clear of ell
    witness = {ell.id: 1, rgt.id: 2}
    witness.update({k: v + 2 for k, v in wit.items()})
    witness.update({k: v + 2 for k, v in wit2.items()})
    return out, witness


def gen_family_in(n: int) -> FamilyInstance:
    """Recursive family with |I_n| = 3*2^(n-1) - 2, omega = n, chi = 2n - 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    items, witness = _build_family_in(n, "")
    items = rank_remap(items)
    return FamilyInstance(
        kind="in",
        intervals=IntervalSet(items),
        predicted={"size": 3 * 2 ** (n - 1) - 2, "omega": n, "chi": 2 * n - 1},
        witness=Coloring.from_map(witness),
    )


# ---------------------------------------------------------------------------
# Family G_k


def gen_family_gk(k: int) -> FamilyInstance:
    """Mirrored multiset of k groups of k copies with an explicit mixed graph.

    Copies of one interval get an edge; arcs run toward the center within each
    half; the two center groups meet in edges. Predicted: 2k^2 vertices,
    lambda k-1, omega 2k, chi (k+1)k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    mirror = 2 * (6 * k + 7)
    intervals = []
    left_groups: list[list[str]] = []
    right_groups: list[list[str]] = []
    for i in range(1, k + 1):
        lg, rg = [], []
        for c in range(1, k + 1):
            lid, rid = f"L{i}c{c}", f"R{i}c{c}"
            intervals.append(Interval(lid, 6 * i, 6 * i + 8))
            intervals.append(Interval(rid, mirror - (6 * i + 8), mirror - 6 * i))
            lg.append(lid)
            rg.append(rid)
        left_groups.append(lg)
        right_groups.append(rg)
    edges = []
    arcs = []
    for groups in (left_groups, right_groups):
        for grp in groups:
            for a in range(len(grp)):
                for b in range(a + 1, len(grp)):
                    edges.append((grp[a], grp[b]))
    for i in range(k - 1):
        for u in left_groups[i]:
            for v in left_groups[i + 1]:
                arcs.append((u, v))
        for u in right_groups[i]:
            for v in right_groups[i + 1]:
                arcs.append((u, v))
    for u in left_groups[k - 1]:
        for v in right_groups[k - 1]:
            edges.append((u, v))
    graph = MixedGraph((iv.id for iv in intervals), edges, arcs,
                       meta={"family": "gk", "k": k})
    witness = {}
    for i, grp in enumerate(left_groups):
        for j, vid in enumerate(grp):
            witness[vid] = i * k + j + 1
    for i, grp in enumerate(right_groups):
        base = i * k if i < k - 1 else k * k
        for j, vid in enumerate(grp):
            witness[vid] = base + j + 1
    return FamilyInstance(
        kind="gk",
        intervals=IntervalSet(intervals),
        predicted={"size": 2 * k * k, "omega": 2 * k, "lambda": k - 1,
                   "chi": (k + 1) * k},
        witness=Coloring.from_map(witness),
        graph=graph,
    )


# ---------------------------------------------------------------------------
# Random instances


PROFILES = ("uniform", "nested-heavy", "laminar", "staircase")


def gen_random(n: int, seed: int, profile: str = "uniform") -> IntervalSet:
    """Deterministic seeded instances on the even integer grid."""
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    if n < 0:
        raise ValueError("n must be >= 0")
    rng = random.Random((seed, profile, n).__repr__())
    if n == 0:
        return IntervalSet([])
    ids = [f"v{i:03d}" for i in range(n)]
    if profile == "uniform":
        coords = rng.sample(range(1, 20 * n + 1), 2 * n)
        out = []
        for i, vid in enumerate(ids):
            a, b = coords[2 * i], coords[2 * i + 1]
            if a > b:
                a, b = b, a
            out.append(Interval(vid, Fraction(a), Fraction(b),
                                rng.choice(list(Orientation))))
        return IntervalSet(rank_remap(out))
    if profile == "staircase":
        # Overlapping chain, all one orientation: a totally ordered arc clique
        # under the bidirectional builder.
        lefts = sorted(rng.sample(range(1, 10 * n + 1), n))
        out = []
        prev_right = None
        for i, vid in enumerate(ids):
            lo = lefts[i]
            hi = lo + rng.randint(n, 3 * n) * 10 + i + 1
            if prev_right is not None and hi <= prev_right:
                hi = prev_right + rng.randint(1, 5)
            out.append(Interval(vid, Fraction(lo, 1), Fraction(hi, 1),
                                Orientation.LEFT))
            prev_right = hi
        # Force a shared point: stretch all rights past the last left.
        common = max(iv.left for iv in out)
        fixed = [Interval(iv.id, iv.left, max(iv.right, common + 1 + idx),
                          iv.orientation) for idx, iv in enumerate(out)]
        dedup = _nudge_distinct(fixed)
        return IntervalSet(rank_remap(dedup))
    # nested-heavy and laminar build by recursive placement.
    out = []

    def place(vid: str, lo: Fraction, hi: Fraction) -> Interval:
        width = hi - lo
        a = lo + width * Fraction(rng.randint(1, 999), 3000)
        b = hi - width * Fraction(rng.randint(1, 999), 3000)
        if a >= b:
            a, b = lo + width / 4, hi - width / 4
        return Interval(vid, a, b, rng.choice(list(Orientation)))

    if profile == "laminar":
        # Disjoint free slots; placing splits a slot into beside/inside/beside,
        # so any two intervals end up nested or disjoint (arcs only, no edges).
        slots = [(Fraction(0), Fraction(1))]
        for vid in ids:
            idx = rng.randrange(len(slots))
            lo, hi = slots.pop(idx)
            iv = place(vid, lo, hi)
            out.append(iv)
            slots.extend([(lo, iv.left), (iv.left, iv.right), (iv.right, hi)])
        dedup = _nudge_distinct(out)
        return IntervalSet(rank_remap(dedup))
    # nested-heavy: mostly nest inside an existing interval, sometimes fresh.
    for vid in ids:
        if out and rng.random() < 0.7:
            host = out[rng.randrange(len(out))]
            iv = place(vid, host.left, host.right)
        else:
            base = Fraction(rng.randint(0, 50 * n))
            iv = place(vid, base, base + rng.randint(5, 50))
        out.append(iv)
    dedup = _nudge_distinct(out)
    return IntervalSet(rank_remap(dedup))


def _nudge_distinct(items: list[Interval]) -> list[Interval]:
    """Shift duplicate endpoint values by distinct tiny fractions."""
    seen: dict[Fraction, int] = {}
    out = []
    eps = Fraction(1, 10 ** 9)
    for iv in items:
        a, b = iv.left, iv.right
        while a in seen:
            seen[a] += 1
            a = a + eps * seen[a]
        seen.setdefault(a, 0)
        while b in seen or b <= a:
            seen[b] = seen.get(b, 0) + 1
            b = b + eps * seen[b]
        seen.setdefault(b, 0)
        out.append(Interval(iv.id, a, b, iv.orientation))
    return out


# ---------------------------------------------------------------------------
# CNF


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple

    def __post_init__(self):
        for cl in self.clauses:
            if len(cl) != 3:
                raise NotExact3SatError(f"clause {cl!r} does not have 3 literals")
            for lit in cl:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise CnfParseError(f"literal {lit} out of range")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def is_monotone(self) -> bool:
        return all(all(l > 0 for l in cl) or all(l < 0 for l in cl)
                   for cl in self.clauses)

    def require_monotone(self):
        for cl in self.clauses:
            if not (all(l > 0 for l in cl) or all(l < 0 for l in cl)):
                raise NotMonotone3SatError(f"clause {cl!r} mixes signs")

    def satisfied_by(self, assignment: dict) -> bool:
        return all(any((lit > 0) == assignment[abs(lit)] for lit in cl)
                   for cl in self.clauses)


def parse_cnf(text: str, require_monotone: bool = False) -> CnfFormula:
    """Standard DIMACS CNF, restricted to exactly-3-literal clauses."""
    num_vars = None
    declared = None
    lits: list[int] = []
    clauses: list[tuple] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise CnfParseError(f"bad problem line: {line!r}")
            try:
                num_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise CnfParseError(f"bad problem line: {line!r}")
            continue
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise CnfParseError(f"bad literal {tok!r}")
            if lit == 0:
                if len(lits) != 3:
                    raise NotExact3SatError(
                        f"clause {tuple(lits)!r} does not have 3 literals")
                clauses.append(tuple(lits))
                lits = []
            else:
                lits.append(lit)
    if lits:
        raise CnfParseError("trailing literals without terminating 0")
    if num_vars is None:
        raise CnfParseError("missing problem line")
    if declared is not None and declared != len(clauses):
        raise CnfParseError(f"declared {declared} clauses, found {len(clauses)}")
    cnf = CnfFormula(num_vars, tuple(clauses))
    if require_monotone:
        cnf.require_monotone()
    return cnf


def parse_assignment(text: str, num_vars: int) -> dict:
    """Model as whitespace-separated signed ints (positive = true)."""
    values: dict[int, bool] = {}
    for tok in text.split():
        if tok in ("v", "0"):
            continue
        lit = int(tok)
        values[abs(lit)] = lit > 0
    missing = [v for v in range(1, num_vars + 1) if v not in values]
    if missing:
        raise CnfParseError(f"assignment misses variables {missing}")
    return values
