"""Command-line surface.

Exit codes: 0 success, 1 domain rejection (structured reason on stderr),
2 usage error. All randomness flows from --seed; outputs are byte-stable
for identical inputs. MIK_TIME_BUDGET_MS overrides the exact solver budget.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from . import __version__
from .approx import reference_recursive_color_with_trace, two_approx_color_with_trace
from .coloring import (
    chromatic_lower_bound,
    exact_chromatic,
    greedy_interval_color,
    layered_color,
    verify,
)
from .errors import MikError, RecognitionReject, SolverTimeout
from .fileio import (
    FormatError,
    read_coloring,
    read_graph,
    read_intervals,
    write_coloring,
    write_graph,
    write_intervals,
    write_predicted,
    write_stats_report,
)
from .gadgets import gen_sat_bidirectional, gen_sat_containment
from .generators import (
    PROFILES,
    gen_family_gk,
    gen_family_in,
    gen_random,
    parse_assignment,
    parse_cnf,
)
from .intervals import (
    Policy,
    build_bidirectional,
    build_containment,
    build_directional,
    compute_stats,
    validate_input,
)
from .recognition import emit_tree, recognize
from .render import render_tracks

BUILDERS = {
    "containment": build_containment,
    "directional": build_directional,
    "bidirectional": build_bidirectional,
}


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _time_budget(args) -> float:
    env = os.environ.get("MIK_TIME_BUDGET_MS")
    if env is not None:
        return int(env) / 1000.0
    return args.time_budget


def cmd_build(args) -> int:
    s = read_intervals(_read(args.input))
    g = BUILDERS[args.variant](s)
    _write(args.output, write_graph(g))
    return 0


def cmd_color(args) -> int:
    s = read_intervals(_read(args.input))
    trace = None
    if args.engine == "sweep":
        policy = Policy.PERTURB_BY_ID if args.perturb else Policy.REJECT
        coloring, trace_entries = two_approx_color_with_trace(s, policy)
        trace = trace_entries
    elif args.engine == "recursive":
        coloring, trace = reference_recursive_color_with_trace(s)
    elif args.engine == "greedy":
        coloring = greedy_interval_color(s)
    elif args.engine == "layered":
        g = BUILDERS[args.variant](s)
        coloring = layered_color(g, s)
    else:  # exact
        g = BUILDERS[args.variant](s)
        chi, coloring = exact_chromatic(g, time_budget=_time_budget(args),
                                        color_cap=args.color_cap)
    _write(args.output, write_coloring(coloring))
    print(f"max_color\t{coloring.max_color}", file=sys.stderr)
    print(f"colors_used\t{coloring.colors_used}", file=sys.stderr)
    if trace is not None and args.trace:
        lines = [f"{t.id}\t{t.phase}\t{t.case}\t{t.color}" for t in trace]
        _write(args.trace, "\n".join(lines) + ("\n" if lines else ""))
    return 0


def cmd_verify(args) -> int:
    g = read_graph(_read(args.graph))
    f = read_coloring(_read(args.coloring))
    violations = verify(g, f)
    for v in violations:
        print(v, file=sys.stderr)
    return 1 if violations else 0


def cmd_recognize(args) -> int:
    g = read_graph(_read(args.input))
    if args.emit_tree:
        print(emit_tree(g), file=sys.stderr)
    s = recognize(g)
    _write(args.output, write_intervals(s))
    return 0


def cmd_stats(args) -> int:
    g = read_graph(_read(args.input))
    s = read_intervals(_read(args.intervals)) if args.intervals else None
    stats = compute_stats(g, s)
    lb = chromatic_lower_bound(g, s)
    f = read_coloring(_read(args.coloring)) if args.coloring else None
    _write(args.output, write_stats_report(stats, lb, f))
    return 0


def cmd_gen(args) -> int:
    if args.family == "in":
        inst = gen_family_in(args.n)
    elif args.family == "gk":
        inst = gen_family_gk(args.k)
    elif args.family == "random":
        s = gen_random(args.n, args.seed, args.profile)
        _write(args.output, write_intervals(s))
        return 0
    else:  # sat
        cnf = parse_cnf(_read(args.cnf),
                        require_monotone=args.variant == "bidirectional")
        assignment = None
        if args.assignment:
            assignment = parse_assignment(_read(args.assignment), cnf.num_vars)
        gen = (gen_sat_containment if args.variant == "containment"
               else gen_sat_bidirectional)
        inst = gen(cnf, assignment)
    _write(args.output, write_intervals(inst.intervals))
    if args.predicted:
        _write(args.predicted, write_predicted(inst.predicted))
    if args.graph_out and inst.graph is not None:
        _write(args.graph_out, write_graph(inst.graph))
    if args.witness_out and inst.witness is not None:
        _write(args.witness_out, write_coloring(inst.witness))
    return 0


def cmd_render(args) -> int:
    s = read_intervals(_read(args.input))
    f = read_coloring(_read(args.coloring))
    _write(args.output, render_tracks(s, f, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mik",
        description="Mixed interval graphs: build, color, verify, recognize, "
                    "generate, render.",
        epilog="Recognition runs the MPQ-tree pipeline in O(n*m) except for "
               "the two-dimensional-poset step, which uses an O(n^2) "
               "orientation method instead of the linear-time one.")
    p.add_argument("--version", action="version", version=f"mik {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="mixed graph from an interval file")
    b.add_argument("--variant", choices=sorted(BUILDERS), default="containment")
    b.add_argument("--input", "-i", required=True)
    b.add_argument("--output", "-o")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("color", help="color an interval file")
    c.add_argument("--engine", choices=["sweep", "recursive", "greedy",
                                        "layered", "exact"], default="sweep")
    c.add_argument("--variant", choices=sorted(BUILDERS), default="containment",
                   help="graph variant for layered/exact engines")
    c.add_argument("--input", "-i", required=True)
    c.add_argument("--output", "-o")
    c.add_argument("--trace", help="write a phase-trace log to this path")
    c.add_argument("--perturb", action="store_true",
                   help="break duplicate endpoints instead of rejecting")
    c.add_argument("--time-budget", type=float, default=60.0)
    c.add_argument("--color-cap", type=int, default=64)
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", help="check a coloring against a graph")
    v.add_argument("--graph", "-g", required=True)
    v.add_argument("--coloring", "-c", required=True)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("recognize", help="containment representation or reject")
    r.add_argument("--input", "-i", required=True)
    r.add_argument("--output", "-o")
    r.add_argument("--emit-tree", action="store_true",
                   help="dump the rotated MPQ-tree to stderr")
    r.set_defaults(func=cmd_recognize)

    st = sub.add_parser("stats", help="omega, lambda, and bound report")
    st.add_argument("--input", "-i", required=True, help="graph file")
    st.add_argument("--intervals", help="optional representation")
    st.add_argument("--coloring", help="optional coloring for color counts")
    st.add_argument("--output", "-o")
    st.set_defaults(func=cmd_stats)

    g = sub.add_parser("gen", help="instance generators")
    gsub = g.add_subparsers(dest="family", required=True)
    gi = gsub.add_parser("in", help="recursive containment family")
    gi.add_argument("--n", type=int, required=True)
    gk = gsub.add_parser("gk", help="mirrored two-sided family")
    gk.add_argument("--k", type=int, required=True)
    gr = gsub.add_parser("random", help="seeded random intervals")
    gr.add_argument("--n", type=int, required=True)
    gr.add_argument("--seed", type=int, default=0)
    gr.add_argument("--profile", choices=PROFILES, default="uniform")
    gs = gsub.add_parser("sat", help="hardness gadget from a DIMACS file")
    gs.add_argument("--cnf", required=True)
    gs.add_argument("--assignment", help="satisfying assignment (model ints)")
    gs.add_argument("--variant", choices=["containment", "bidirectional"],
                    default="containment")
    for sp in (gi, gk, gr, gs):
        sp.add_argument("--output", "-o")
        sp.add_argument("--predicted", help="write the predicted sidecar here")
        sp.add_argument("--graph-out", help="write the family graph here")
        sp.add_argument("--witness-out", help="write the witness coloring here")
    g.set_defaults(func=cmd_gen)

    rd = sub.add_parser("render", help="track diagram from intervals + coloring")
    rd.add_argument("--input", "-i", required=True)
    rd.add_argument("--coloring", "-c", required=True)
    rd.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    rd.add_argument("--output", "-o")
    rd.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except RecognitionReject as exc:
        print(f"reject\t{exc.reason.value}\t{exc.detail}", file=sys.stderr)
        return 1
    except SolverTimeout as exc:
        print(f"timeout\tlower_bound={exc.lower_bound}", file=sys.stderr)
        return 1
    except (MikError, FormatError, ValueError) as exc:
        print(f"error\t{exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
