"""Static track diagrams: one horizontal track per color.

ASCII uses one text row per color with x scaled onto a character grid; SVG
draws one band per color with x scaled to the coordinates. Output is
byte-stable for identical inputs. Improper colorings render with a warning
comment; overlapping same-track segments are the caller's problem then.
"""

from __future__ import annotations

from fractions import Fraction

from .coloring import Coloring, verify
from .intervals import IntervalSet, Orientation, build_containment

ASCII_WIDTH = 100


def _scale(x: Fraction, lo: Fraction, span: Fraction, width: int) -> int:
    if span == 0:
        return 0
    return int((x - lo) * (width - 1) / span)


def render_ascii(s: IntervalSet, f: Coloring) -> str:
    if not len(s):
        return "(empty)\n"
    lo = min(iv.left for iv in s)
    hi = max(iv.right for iv in s)
    span = hi - lo
    tracks = max(f.assignment[iv.id] for iv in s)
    rows = [[" "] * ASCII_WIDTH for _ in range(tracks)]
    for iv in sorted(s, key=lambda iv: iv.id):
        row = rows[f.assignment[iv.id] - 1]
        a = _scale(iv.left, lo, span, ASCII_WIDTH)
        b = max(_scale(iv.right, lo, span, ASCII_WIDTH), a + 1)
        for i in range(a, b + 1):
            row[i if i < ASCII_WIDTH else ASCII_WIDTH - 1] = "="
        if iv.orientation is Orientation.LEFT:
            row[a] = "<"
        elif iv.orientation is Orientation.RIGHT:
            row[min(b, ASCII_WIDTH - 1)] = ">"
    lines = []
    warn = _warning(s, f)
    if warn:
        lines.append(warn)
    for t in range(tracks, 0, -1):
        lines.append(f"{t:4d} |" + "".join(rows[t - 1]).rstrip())
    return "\n".join(lines) + "\n"


def render_svg(s: IntervalSet, f: Coloring) -> str:
    if not len(s):
        return '<svg xmlns="http://www.w3.org/2000/svg" width="10" height="10"/>\n'
    lo = min(iv.left for iv in s)
    hi = max(iv.right for iv in s)
    span = hi - lo if hi != lo else Fraction(1)
    tracks = max(f.assignment[iv.id] for iv in s)
    width, row_h, pad = 800, 16, 40
    height = tracks * row_h + 2 * pad
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + 2 * pad}"'
             f' height="{height}">']
    warn = _warning(s, f)
    if warn:
        parts.append(f"<!-- {warn} -->")
    for t in range(1, tracks + 1):
        y = height - pad - t * row_h
        parts.append(f'<text x="4" y="{y + 12}" font-size="10">{t}</text>')
    for iv in sorted(s, key=lambda iv: iv.id):
        t = f.assignment[iv.id]
        y = height - pad - t * row_h
        x1 = pad + float((iv.left - lo) * width / span)
        x2 = pad + float((iv.right - lo) * width / span)
        parts.append(
            f'<rect x="{x1:.2f}" y="{y + 2}" width="{max(x2 - x1, 1.0):.2f}"'
            f' height="{row_h - 4}" fill="#4a90d9" stroke="#1b3a5c">'
            f"<title>{iv.id}</title></rect>")
        if iv.orientation is Orientation.LEFT:
            parts.append(f'<path d="M {x1:.2f} {y + row_h / 2:.2f} l 6 -4 v 8 z"/>')
        elif iv.orientation is Orientation.RIGHT:
            parts.append(f'<path d="M {x2:.2f} {y + row_h / 2:.2f} l -6 -4 v 8 z"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _warning(s: IntervalSet, f: Coloring) -> str:
    missing = [iv.id for iv in s if iv.id not in f.assignment]
    if missing:
        raise ValueError(f"uncolored intervals: {missing[:5]}")
    try:
        g = build_containment(s)
    except Exception:
        return ""
    if verify(g, f):
        return "warning: coloring is not proper for the containment graph"
    return ""


def render_tracks(s: IntervalSet, f: Coloring, fmt: str = "ascii") -> str:
    if fmt == "ascii":
        return render_ascii(s, f)
    if fmt == "svg":
        return render_svg(s, f)
    raise ValueError(f"unknown format {fmt!r}")


def same_track_overlaps(s: IntervalSet, f: Coloring) -> list[tuple[str, str]]:
    """Pairs drawn on one track whose segments intersect (render model check)."""
    by_track: dict[int, list] = {}
    for iv in s:
        by_track.setdefault(f.assignment[iv.id], []).append(iv)
    out = []
    for ivs in by_track.values():
        ivs.sort(key=lambda iv: (iv.left, iv.id))
        for a, b in zip(ivs, ivs[1:]):
            if b.left <= a.right:
                out.append((a.id, b.id))
    return out
