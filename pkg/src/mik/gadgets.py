"""SAT hardness-gadget generators with constructive witness colorings.

Both generators lay gadgets out as an ordered list of symbolic endpoint
events; coordinates are the even integers in event order, so all endpoints
are pairwise distinct and the geometry is exactly the event order.

Containment variant: per-variable red/gray interval trees (each interval
properly contains its successor) whose heights shrink by one per arm passing
over the gadget, four green flank intervals, per-clause trees of height
5(m-i)+3, and per-literal arms threading every later variable gadget through
one small gap per tree (in the tree's innermost right-side annulus, covered
by the right flank). Clause boxes are laid out farthest-clause-first so a
passed clause tree carries only colors above any passing arm's color, letting
arms cross clause gadgets unbroken. Every arm gap carries a designated stab
point that sees exactly H-2 other colors in the witness.

Bidirectional variant: staircases instead of trees; arms are chopped in the
corridors between gadget boxes, each gap bridged by a same-colored interval
of the opposite orientation; corridor-local blocker staircases fill every
color not carried by a crossing arm; the all-positive clauses get the whole
construction mirrored to the left of the variable gadgets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .coloring import Coloring
from .generators import CnfFormula, FamilyInstance, GapStab
from .intervals import Interval, IntervalSet, Orientation


@dataclass
class _Arm:
    clause: int      # 1-based
    pos: int         # literal slot within the clause, 0..2
    var: int         # 1-based variable index
    negated: bool

    @property
    def id(self) -> str:
        return f"arm{self.clause}.{self.pos}"


class _Layout:
    """Ordered endpoint events; coordinates are assigned by rank at the end."""

    def __init__(self):
        self.events: list[tuple[str, str]] = []  # kind "L" / "R" / "P"
        self.orient: dict[str, Orientation] = {}

    def left(self, name: str, orientation: Optional[Orientation] = None):
        self.events.append(("L", name))
        if orientation is not None:
            self.orient[name] = orientation

    def right(self, name: str):
        self.events.append(("R", name))

    def point(self, name: str):
        self.events.append(("P", name))

    def build(self) -> tuple[list[Interval], dict]:
        lefts: dict[str, Fraction] = {}
        rights: dict[str, Fraction] = {}
        points: dict[str, Fraction] = {}
        for i, (kind, name) in enumerate(self.events):
            coord = Fraction(2 * (i + 1))
            if kind == "L":
                assert name not in lefts, f"duplicate left event {name!r}"
                lefts[name] = coord
            elif kind == "R":
                assert name not in rights, f"duplicate right event {name!r}"
                rights[name] = coord
            else:
                points[name] = coord
        unbalanced = set(lefts) ^ set(rights)
        assert not unbalanced, f"unbalanced events: {sorted(unbalanced)[:5]}"
        out = [Interval(name, lefts[name], rights[name], self.orient.get(name))
               for name in lefts]
        return out, points


def _arms_of(cnf: CnfFormula) -> list[_Arm]:
    arms = []
    for ci, clause in enumerate(cnf.clauses, start=1):
        for t, lit in enumerate(clause):
            arms.append(_Arm(ci, t, abs(lit), lit < 0))
    return arms


def _witness_arm_colors(cnf: CnfFormula, assignment: dict) -> dict:
    """True literal's arm takes 5i; the others take 5i+1, 5i+2 in slot order."""
    colors = {}
    for ci, clause in enumerate(cnf.clauses, start=1):
        sat = [t for t, lit in enumerate(clause)
               if ((lit > 0) == assignment[abs(lit)])]
        if not sat:
            raise ValueError(f"assignment does not satisfy clause {ci}")
        order = [sat[0]] + [t for t in range(3) if t != sat[0]]
        for rank, t in enumerate(order):
            colors[f"arm{ci}.{t}"] = 5 * ci + rank
    return colors


def _tree_colors(height: int, skips: set, low: bool, h_cap: int) -> list[int]:
    """Colors for one gadget tree/staircase, outermost interval first.

    The low tree starts at 1 and leaves H-1 unused; the high tree starts at 2
    and fills its range exactly. Both skip the witness colors of every arm
    threading the gadget; the construction heights make the counts match.
    """
    lo = 1 if low else 2
    pool = [c for c in range(lo, h_cap + 1)
            if c not in skips and not (low and c == h_cap - 1)]
    assert len(pool) == height, f"tree color pool {len(pool)} != height {height}"
    return pool


def _anchor_index(i: int, threading: list[_Arm]) -> int:
    """Deepest tree annulus whose intervals can never carry the arm's color.

    One level shallower than the block of levels that may hold the clause-i
    color band in either tree state; q counts threading arms below the band.
    """
    q = sum(1 for a in threading if a.clause < i)
    return 5 * i - q - 1


# ---------------------------------------------------------------------------
# Containment gadget


def gen_sat_containment(cnf: CnfFormula,
                        assignment: Optional[dict] = None) -> FamilyInstance:
    """Containment-variant reduction instance for an exact-3-SAT formula."""
    m = cnf.num_clauses
    n = cnf.num_vars
    H = 5 * (m + 1)
    arms = _arms_of(cnf)
    by_var: dict[int, list[_Arm]] = {j: [] for j in range(1, n + 1)}
    for a in arms:
        by_var[a.var].append(a)
    passing = {j: [a for a in arms if a.var < j] for j in range(1, n + 1)}
    h_red = {j: H - 1 - len(passing[j]) for j in range(1, n + 1)}
    h_gray = {j: h_red[j] - sum(1 for a in by_var[j] if a.negated)
              for j in range(1, n + 1)}

    def sigma(a: _Arm) -> tuple:
        # Global slot order: origin gadget, negated block first, deeper
        # anchors (larger clause) first, then literal slot.
        return (a.var, 0 if a.negated else 1, -a.clause, a.pos)

    lay = _Layout()
    gaps: list[tuple[str, str, str, str]] = []
    chains: dict[str, list[str]] = {}
    piece_count: dict[str, int] = {a.id: 0 for a in arms}
    current_piece: dict[str, str] = {}

    def begin_piece(a: _Arm) -> str:
        piece_count[a.id] += 1
        name = f"{a.id}.p{piece_count[a.id]}"
        lay.left(name)
        return name

    def window(tree_tag: str, threading: list[_Arm]):
        for a in sorted(threading, key=sigma):
            old = current_piece[a.id]
            lay.right(old)
            stab = f"stab.{tree_tag}.{a.id}"
            lay.point(stab)
            new = begin_piece(a)
            gaps.append((a.id, old, new, stab))
            current_piece[a.id] = new

    for j in range(1, n + 1):
        pj = passing[j]
        negj = [a for a in by_var[j] if a.negated]
        posj = [a for a in by_var[j] if not a.negated]
        a_r, b_g = h_red[j], h_gray[j]
        red = [f"x{j}.red{t}" for t in range(1, a_r + 1)]
        gray = [f"x{j}.gray{t}" for t in range(1, b_g + 1)]
        chains[f"x{j}.red"] = red
        chains[f"x{j}.gray"] = gray
        rl, rr, gl, gr = (f"x{j}.rl", f"x{j}.rr", f"x{j}.gl", f"x{j}.gr")
        for name in red[:-1]:
            lay.left(name)
        lay.left(rl)
        lay.right(rl)
        lay.left(red[-1])
        lay.right(red[-1])
        lay.left(rr)                      # right flank covers the red window zone
        window(f"x{j}.red", pj)
        anchors_red: dict[int, list[_Arm]] = {}
        for a in negj:
            anchors_red.setdefault(_anchor_index(a.clause, pj), []).append(a)
        for t in range(a_r - 1, 1, -1):
            lay.right(red[t - 1])
            for a in sorted(anchors_red.get(t, []), key=sigma):
                current_piece[a.id] = begin_piece(a)
        assert all(t <= a_r - 1 and t >= 3 for t in anchors_red), anchors_red
        lay.left(gl)                      # corridor: gl starts, rr ends
        lay.right(rr)
        lay.left(gray[0])
        lay.right(red[0])
        for name in gray[1:-1]:
            lay.left(name)
        lay.right(gl)
        lay.left(gray[-1])
        lay.right(gray[-1])
        lay.left(gr)                      # right flank covers the gray window zone
        window(f"x{j}.gray", pj + negj)
        lay.right(gr)
        anchors_gray: dict[int, list[_Arm]] = {}
        for a in posj:
            anchors_gray.setdefault(_anchor_index(a.clause, pj + negj), []).append(a)
        for t in range(b_g - 1, 0, -1):
            lay.right(gray[t - 1])
            for a in sorted(anchors_gray.get(t, []), key=sigma):
                current_piece[a.id] = begin_piece(a)
        assert all(t <= b_g - 1 and t >= 3 for t in anchors_gray), anchors_gray

    assert set(current_piece) == {a.id for a in arms}
    for i in range(m, 0, -1):             # farthest clause first
        h = 5 * (m - i) + 3
        tree = [f"c{i}.t{t}" for t in range(1, h + 1)]
        chains[f"c{i}"] = tree
        for name in tree:
            lay.left(name)
        for name in reversed(tree):
            lay.right(name)
        for a in sorted((a for a in arms if a.clause == i), key=sigma):
            lay.right(current_piece[a.id])

    intervals, stab_pos = lay.build()
    gap_records = tuple(GapStab(arm, lp, rp, stab_pos[sn])
                        for arm, lp, rp, sn in gaps)
    witness = None
    if assignment is not None:
        arm_colors = _witness_arm_colors(cnf, assignment)
        colors: dict[str, int] = {}
        for a in arms:
            for p in range(1, piece_count[a.id] + 1):
                colors[f"{a.id}.p{p}"] = arm_colors[a.id]
        for j in range(1, n + 1):
            red_high = assignment[j]
            pass_colors = {arm_colors[a.id] for a in passing[j]}
            neg_colors = {arm_colors[a.id] for a in by_var[j] if a.negated}
            for name, c in zip(chains[f"x{j}.red"],
                               _tree_colors(h_red[j], pass_colors,
                                            low=not red_high, h_cap=H)):
                colors[name] = c
            for name, c in zip(chains[f"x{j}.gray"],
                               _tree_colors(h_gray[j], pass_colors | neg_colors,
                                            low=red_high, h_cap=H)):
                colors[name] = c
            colors[f"x{j}.rl"] = H if red_high else H - 1
            colors[f"x{j}.rr"] = H if red_high else H - 1
            colors[f"x{j}.gl"] = H - 1 if red_high else H
            colors[f"x{j}.gr"] = H - 1 if red_high else H
        for i in range(1, m + 1):
            for t, name in enumerate(chains[f"c{i}"], start=1):
                colors[name] = 5 * i + 2 + t
        witness = Coloring.from_map(colors)
    return FamilyInstance(
        kind="sat-containment",
        intervals=IntervalSet(intervals),
        predicted={"size": len(intervals), "threshold_h": H,
                   "clauses": m, "vars": n},
        witness=witness,
        gap_stabs=gap_records,
        chains=chains,
    )


# ---------------------------------------------------------------------------
# Bidirectional gadget


def gen_sat_bidirectional(cnf: CnfFormula,
                          assignment: Optional[dict] = None) -> FamilyInstance:
    """Bidirectional-variant reduction instance for a monotone 3-SAT formula."""
    cnf.require_monotone()
    m = cnf.num_clauses
    n = cnf.num_vars
    H = 5 * (m + 1)
    arms = _arms_of(cnf)
    by_var: dict[int, list[_Arm]] = {j: [] for j in range(1, n + 1)}
    for a in arms:
        by_var[a.var].append(a)
    neg_clauses = sorted(i for i in range(1, m + 1)
                         if all(l < 0 for l in cnf.clauses[i - 1]))
    pos_clauses = sorted(i for i in range(1, m + 1)
                         if all(l > 0 for l in cnf.clauses[i - 1]))

    # Box sequence: positive clause boxes (farthest clause leftmost), the
    # variable gadgets, then negative clause boxes (farthest clause rightmost).
    boxes: list[tuple[str, int]] = ([("cgp", i) for i in pos_clauses]
                                    + [("vg", j) for j in range(1, n + 1)]
                                    + [("cgn", i) for i in reversed(neg_clauses)])
    pos_of: dict[tuple[str, int], int] = {b: k for k, b in enumerate(boxes)}

    def crossing_vg(j: int) -> list[_Arm]:
        return [a for a in arms
                if (a.negated and a.var < j) or (not a.negated and a.var > j)]

    h_red = {j: H - 1 - len(crossing_vg(j))
             - sum(1 for a in by_var[j] if not a.negated) for j in range(1, n + 1)}
    h_gray = {j: H - 1 - len(crossing_vg(j))
              - sum(1 for a in by_var[j] if a.negated) for j in range(1, n + 1)}

    def arm_span(a: _Arm) -> tuple[int, int]:
        """Box positions (first, last) the arm touches, inclusive."""
        vg = pos_of[("vg", a.var)]
        if a.negated:
            return (vg, pos_of[("cgn", a.clause)])
        return (pos_of[("cgp", a.clause)], vg)

    lay = _Layout()
    gaps: list[tuple[str, str, str, str]] = []
    chains: dict[str, list[str]] = {}
    blockers_by_corridor: list[tuple[list[str], list[_Arm]]] = []
    mini_color_source: dict[str, str] = {}   # mini id -> arm id (same color)
    piece_count: dict[str, int] = {a.id: 0 for a in arms}
    current: dict[str, str] = {}
    open_rank: dict[str, int] = {}
    rank_counter = 0

    def open_piece(a: _Arm) -> str:
        nonlocal rank_counter
        piece_count[a.id] += 1
        name = f"{a.id}.p{piece_count[a.id]}"
        lay.left(name, Orientation.LEFT if a.negated else Orientation.RIGHT)
        rank_counter += 1
        open_rank[a.id] = rank_counter
        current[a.id] = name
        return name

    def corridor_zone(cid: int, k: int, tag: str, zone_arms: list[_Arm],
                      clause_desc: bool, fill_count: int,
                      piece_orient: Orientation):
        """One direction's chop zone.

        Every cut precedes every resume, so incoming and outgoing pieces are
        pairwise disjoint across the zone. Cuts group by clause (ascending for
        the left-going direction, mirrored otherwise) with the freshest piece
        cut first, which nests same-band pieces; each stab gets one mini
        interval per already-cut arm, restoring its color at that point.
        Resumes go farthest-next-close first so stretch pieces nest.
        """
        other = (Orientation.RIGHT if piece_orient is Orientation.LEFT
                 else Orientation.LEFT)
        blk = [f"blk{cid}{tag}.{r}" for r in range(fill_count)]
        # Blocker stack: a staircase of the opposite orientation spanning the
        # zone; stack rank r carries the r-th smallest fill color.
        if other is Orientation.RIGHT:
            for name in reversed(blk):   # lefts descend as colors ascend
                lay.left(name, other)
        else:
            for name in blk:
                lay.left(name, other)
        by_clause: dict[int, list[_Arm]] = {}
        for a in zone_arms:
            by_clause.setdefault(a.clause, []).append(a)
        cut_seq: list[_Arm] = []
        old_piece: dict[str, str] = {}
        stab_of: dict[str, str] = {}
        for ci in sorted(by_clause, reverse=clause_desc):
            for a in sorted(by_clause[ci], key=lambda a: -open_rank[a.id]):
                old_piece[a.id] = current[a.id]
                lay.right(current[a.id])
                stab = f"stab{cid}.{a.id}"
                stab_of[a.id] = stab
                for e in cut_seq:        # one mini per arm absent at this stab
                    mini = f"mini{cid}.{a.id}.{e.id}"
                    lay.left(mini, other)
                    mini_color_source[mini] = e.id
                lay.point(stab)
                for e in reversed(cut_seq):
                    lay.right(f"mini{cid}.{a.id}.{e.id}")
                cut_seq.append(a)
        for a in cut_seq:                # bridges nested inside every gap
            lay.left(f"bridge{cid}.{a.id}", other)
        for a in reversed(cut_seq):
            lay.right(f"bridge{cid}.{a.id}")

        def close_key(a: _Arm) -> tuple:
            # Next close position: corridor k+1 sorts after any box-interior
            # close; anchor closes inside a variable box sort by slot depth.
            span = arm_span(a)
            if span[1] > k + 1:
                return (k + 1, 1, 0)
            kind, idx = boxes[k + 1]
            if kind == "vg":
                thr = crossing_vg(idx) + [b for b in by_var[idx] if b.negated]
                return (k + 1, 0, _anchor_index(a.clause, thr))
            return (k + 1, 0, 0)

        for a in sorted(zone_arms,
                        key=lambda a: (close_key(a), open_rank[a.id]),
                        reverse=True):
            # reverse=True on (key, rank): farthest close first; within a key
            # freshest-opened resumes first, reversed again at the next cut.
            new = open_piece(a)
            gaps.append((a.id, old_piece[a.id], new, stab_of[a.id]))
        if other is Orientation.RIGHT:
            for name in reversed(blk):   # rights descend as colors ascend
                lay.right(name)
        else:
            for name in blk:
                lay.right(name)
        return blk

    def emit_corridor(k: int):
        """Corridor after box k: chop every crossing arm, add blockers."""
        neg_cross = [a for a in arms if a.negated
                     and arm_span(a)[0] <= k < arm_span(a)[1]]
        pos_cross = [a for a in arms if not a.negated
                     and arm_span(a)[0] <= k < arm_span(a)[1]]
        crossing = neg_cross + pos_cross
        if not crossing:
            return
        fill_count = H - 1 - len(crossing)
        assert fill_count >= 0
        cid = k + 1
        blk_n = corridor_zone(cid, k, "n", neg_cross, clause_desc=False,
                              fill_count=fill_count,
                              piece_orient=Orientation.LEFT)
        blk_p = corridor_zone(cid, k, "p", pos_cross, clause_desc=True,
                              fill_count=fill_count,
                              piece_orient=Orientation.RIGHT)
        blockers_by_corridor.append((blk_n + blk_p, crossing))

    for k, (kind, idx) in enumerate(boxes):
        if kind == "cgp":
            i = idx
            h = 5 * (m - i) + 3
            stair = [f"c{i}.s{t}" for t in range(1, h + 1)]
            chains[f"c{i}"] = stair
            for a in sorted((a for a in arms if a.clause == i),
                            key=lambda a: a.pos):
                open_piece(a)            # final piece, contains the stair
            for name in reversed(stair):  # right-going, deepening leftward
                lay.left(name, Orientation.RIGHT)
            for name in reversed(stair):
                lay.right(name)
        elif kind == "cgn":
            i = idx
            h = 5 * (m - i) + 3
            stair = [f"c{i}.s{t}" for t in range(1, h + 1)]
            chains[f"c{i}"] = stair
            for name in stair:            # left-going, deepening rightward
                lay.left(name, Orientation.LEFT)
            for name in stair:
                lay.right(name)
            enders = sorted((a for a in arms if a.clause == i),
                            key=lambda a: -open_rank[a.id])
            for a in enders:              # freshest-opened closes first: nested
                lay.right(current[a.id])
        else:
            j = idx
            cross = crossing_vg(j)
            negj = [a for a in by_var[j] if a.negated]
            posj = [a for a in by_var[j] if not a.negated]
            a_r, b_g = h_red[j], h_gray[j]
            red = [f"x{j}.red{t}" for t in range(1, a_r + 1)]
            gray = [f"x{j}.gray{t}" for t in range(1, b_g + 1)]
            chains[f"x{j}.red"] = red
            chains[f"x{j}.gray"] = gray
            # Red staircase: right-going, deepening leftward.
            for name in reversed(red):
                lay.left(name, Orientation.RIGHT)
            thr_red = cross + posj
            anchors_red: dict[int, list[_Arm]] = {}
            for a in negj:
                anchors_red.setdefault(_anchor_index(a.clause, thr_red), []).append(a)
            assert all(3 <= t <= a_r - 1 for t in anchors_red), anchors_red
            for t in range(a_r, 1, -1):
                lay.right(red[t - 1])
                for a in sorted(anchors_red.get(t, []),
                                key=lambda a: (-a.clause, a.pos)):
                    open_piece(a)
            # Boundary: only the two shallowest reds meet the gray staircase.
            lay.left(gray[0], Orientation.LEFT)
            lay.right(red[0])
            thr_gray = cross + negj
            anchors_gray: dict[int, list[_Arm]] = {}
            for a in posj:
                anchors_gray.setdefault(_anchor_index(a.clause, thr_gray), []).append(a)
            assert all(3 <= t <= b_g - 1 for t in anchors_gray), anchors_gray
            for t in range(2, b_g + 1):
                for a in sorted(anchors_gray.get(t, []),
                                key=lambda a: -open_rank[a.id]):
                    lay.right(current[a.id])   # positive arm reaches its anchor
                lay.left(gray[t - 1], Orientation.LEFT)
            for name in gray:
                lay.right(name)
        if k + 1 < len(boxes):
            emit_corridor(k)

    intervals, stab_pos = lay.build()
    gap_records = tuple(GapStab(arm, lp, rp, stab_pos[sn])
                        for arm, lp, rp, sn in gaps)
    witness = None
    if assignment is not None:
        arm_colors = _witness_arm_colors(cnf, assignment)
        colors: dict[str, int] = {}
        for a in arms:
            for p in range(1, piece_count[a.id] + 1):
                colors[f"{a.id}.p{p}"] = arm_colors[a.id]
        for name in (nm for nm in (iv.id for iv in intervals)
                     if nm.startswith("bridge")):
            arm_id = name.split(".", 1)[1]
            colors[name] = arm_colors[arm_id]
        for mini, arm_id in mini_color_source.items():
            colors[mini] = arm_colors[arm_id]
        for blk, crossing in blockers_by_corridor:
            fill = sorted(set(range(1, H)) - {arm_colors[a.id] for a in crossing})
            per_zone = len(blk) // 2
            assert per_zone == len(fill)
            for name in blk:
                rank = int(name.rsplit(".", 1)[1])
                colors[name] = fill[rank]
        for j in range(1, n + 1):
            red_high = assignment[j]
            cross_colors = {arm_colors[a.id] for a in crossing_vg(j)}
            negc = {arm_colors[a.id] for a in by_var[j] if a.negated}
            posc = {arm_colors[a.id] for a in by_var[j] if not a.negated}
            for name, c in zip(chains[f"x{j}.red"],
                               _tree_colors(h_red[j], cross_colors | posc,
                                            low=not red_high, h_cap=H)):
                colors[name] = c
            for name, c in zip(chains[f"x{j}.gray"],
                               _tree_colors(h_gray[j], cross_colors | negc,
                                            low=red_high, h_cap=H)):
                colors[name] = c
        for i in range(1, m + 1):
            for t, name in enumerate(chains[f"c{i}"], start=1):
                colors[name] = 5 * i + 2 + t
        witness = Coloring.from_map(colors)
    return FamilyInstance(
        kind="sat-bidirectional",
        intervals=IntervalSet(intervals),
        predicted={"size": len(intervals), "threshold_h": H,
                   "clauses": m, "vars": n},
        witness=witness,
        gap_stabs=gap_records,
        chains=chains,
    )
