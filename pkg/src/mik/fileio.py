"""Line-oriented codecs for intervals, mixed graphs, colorings, and reports.

All writers emit stable-ordered output (sorted by id) so identical data
produces identical bytes; read(write(x)) == x and writing what was read
reproduces the canonical form byte for byte.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from .coloring import Coloring
from .intervals import GraphStats, Interval, IntervalSet, MixedGraph, Orientation


class FormatError(ValueError):
    pass


def format_coord(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_coord(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad coordinate {tok!r}")


def write_intervals(s: IntervalSet) -> str:
    lines = []
    for iv in sorted(s, key=lambda iv: iv.id):
        parts = [iv.id, format_coord(iv.left), format_coord(iv.right)]
        if iv.orientation is not None:
            parts.append(iv.orientation.value)
        lines.append("\t".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")


def read_intervals(text: str) -> IntervalSet:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) not in (3, 4):
            raise FormatError(f"line {lineno}: expected 3 or 4 fields")
        orientation = None
        if len(parts) == 4:
            try:
                orientation = Orientation(parts[3])
            except ValueError:
                raise FormatError(f"line {lineno}: bad orientation {parts[3]!r}")
        out.append(Interval(parts[0], parse_coord(parts[1]),
                            parse_coord(parts[2]), orientation))
    return IntervalSet(out)


def write_graph(g: MixedGraph) -> str:
    lines = [f"v {v}" for v in sorted(g.vertices)]
    lines += [f"e {u} {v}" for u, v in sorted(g.edges)]
    lines += [f"a {u} {v}" for u, v in sorted(g.arcs)]
    return "\n".join(lines) + ("\n" if lines else "")


def read_graph(text: str) -> MixedGraph:
    vertices, edges, arcs = [], [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) == 2:
            vertices.append(parts[1])
        elif parts[0] == "e" and len(parts) == 3:
            edges.append((parts[1], parts[2]))
        elif parts[0] == "a" and len(parts) == 3:
            arcs.append((parts[1], parts[2]))
        else:
            raise FormatError(f"line {lineno}: bad record {line!r}")
    try:
        return MixedGraph(vertices, edges, arcs)
    except ValueError as exc:
        raise FormatError(str(exc))


def write_coloring(f: Coloring) -> str:
    lines = [f"{v}\t{c}" for v, c in sorted(f.assignment.items())]
    return "\n".join(lines) + ("\n" if lines else "")


def read_coloring(text: str) -> Coloring:
    assignment = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected id<TAB>color")
        try:
            assignment[parts[0]] = int(parts[1])
        except ValueError:
            raise FormatError(f"line {lineno}: bad color {parts[1]!r}")
    return Coloring.from_map(assignment)


def write_stats_report(stats: GraphStats, lower_bound, f: Optional[Coloring] = None) -> str:
    lam = "inf" if stats.has_directed_cycle else str(stats.lam)
    lb = "inf" if lower_bound == math.inf else str(lower_bound)
    lines = [f"omega\t{stats.omega}", f"lambda\t{lam}", f"lower_bound\t{lb}"]
    if f is not None:
        lines.append(f"max_color\t{f.max_color}")
        lines.append(f"colors_used\t{f.colors_used}")
    return "\n".join(lines) + "\n"


def write_predicted(predicted: dict) -> str:
    return "".join(f"{k}\t{v}\n" for k, v in sorted(predicted.items()))
