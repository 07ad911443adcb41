"""Command-line interface.

Exit codes: 0 on success, 1 on validation failure (or a failed
compare-duals check), 2 on usage errors.  All commands are deterministic:
identical inputs and flags produce byte-identical text output.
"""

from __future__ import annotations

import argparse
import os
import sys

from .core import (
    coordinate_matrix,
    paths_from,
    structural_report,
    validate,
)
from .degree import parse_degree
from .dual import dual, iterated_dual_equal, name_of
from .errors import InvalidGraphError, KGraphError, ParseError
from .io import load_kgraph, serialize_kgraph
from .ktheory import format_group, k_groups, qualifies_rs


def _load(path: str):
    try:
        return load_kgraph(path)
    except FileNotFoundError:
        raise
    except ParseError as exc:
        for lineno, msg in exc.diagnostics:
            where = f"{path}:{lineno}" if lineno else path
            print(f"{where}: error: {msg}", file=sys.stderr)
        raise SystemExit(1)
    except InvalidGraphError as exc:
        for problem in exc.report.problems:
            print(f"{path}: invalid: {problem}", file=sys.stderr)
        raise SystemExit(1)


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _bool(flag: bool) -> str:
    return "true" if flag else "false"


def cmd_validate(args) -> int:
    try:
        g = load_kgraph(args.file, require_valid=False)
    except ParseError as exc:
        for lineno, msg in exc.diagnostics:
            where = f"{args.file}:{lineno}" if lineno else args.file
            print(f"{where}: error: {msg}")
        return 1
    report = validate(g)
    if report.ok:
        print(f"{args.file}: OK ({len(g.vertices)} vertices, {len(g.edges)} edges, "
              f"{len(g.squares)} squares, k={g.rank})")
        return 0
    for problem in report.problems:
        print(f"{args.file}: {problem}")
    return 1


def cmd_info(args) -> int:
    g = _load(args.file)
    rep = structural_report(g)
    lines = [
        f"file = {args.file}",
        f"k = {g.rank}",
        f"vertices = {len(g.vertices)}",
        f"edges = {len(g.edges)}",
        f"squares = {len(g.squares)}",
        f"row_finite = {_bool(rep.row_finite)}",
        f"no_sources = {_bool(rep.no_sources)}",
        f"no_sinks = {_bool(rep.no_sinks)}",
        f"strongly_connected = {_bool(rep.strongly_connected)}",
        f"finite = {_bool(rep.finite)}",
    ]
    for color in range(1, g.rank + 1):
        lines.append(f"# M_{color} (rows = source, cols = range; order: "
                     + ", ".join(g.vertices) + ")")
        lines.append(str(coordinate_matrix(g, color)))
    print("\n".join(lines))
    return 0


def cmd_dual(args) -> int:
    g = _load(args.file)
    p = parse_degree(args.p, g.rank)
    dg = dual(g, p)
    _write(serialize_kgraph(dg), args.output)
    return 0


def cmd_matrices(args) -> int:
    g = _load(args.file)
    target = g
    label = "M"
    if args.dual is not None:
        p = parse_degree(args.dual, g.rank)
        target = dual(g, p)
        label = f"M^{{{args.dual}}}"
    lines = []
    for color in range(1, target.rank + 1):
        lines.append(f"# {label}_{color} (rows = source, cols = range; order: "
                     + ", ".join(target.vertices) + ")")
        lines.append(str(coordinate_matrix(target, color)))
    print("\n".join(lines))
    return 0


def cmd_rs_check(args) -> int:
    g = _load(args.file)
    if g.rank != 2:
        print("rs-check requires a 2-graph", file=sys.stderr)
        return 2
    margin = parse_degree(args.h3_margin, 2)
    report = qualifies_rs(g, h3_bound=args.h3_bound, h3_margin=tuple(margin))
    print(f"file = {args.file}")
    print("# conditions are evaluated on the (1,1)-dual")
    print(report.render())
    return 0


def cmd_ktheory(args) -> int:
    g = _load(args.file)
    p = parse_degree(args.p, g.rank) if args.p else None
    try:
        result = k_groups(
            g,
            mode=args.mode,
            p=p,
            h3_bound=args.h3_bound,
            check_aperiodicity=not args.no_h3,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    hyp = result.hypotheses
    lines = [
        f"K0 = {format_group(result.k0_rank, result.k0_torsion)}",
        f"K1 = {format_group(result.k1_rank, result.k1_torsion)}",
        "",
        f"mode = {result.mode}",
        f"k0_rank = {result.k0_rank}",
        f"k0_torsion = {','.join(map(str, result.k0_torsion))}",
        f"k1_rank = {result.k1_rank}",
        f"k1_torsion = {','.join(map(str, result.k1_torsion))}",
        f"finite = {_bool(hyp.finite)}",
        f"no_sources = {_bool(hyp.no_sources)}",
        f"no_sinks = {_bool(hyp.no_sinks)}",
        f"strongly_connected = {_bool(hyp.strongly_connected)}",
    ]
    if hyp.aperiodic_on_window is None:
        lines.append("aperiodic_on_window = unchecked")
    else:
        lines.append(f"aperiodic_on_window = {_bool(hyp.aperiodic_on_window)}")
        lines.append(f"h3_window_bound = {hyp.h3_window_bound}")
    print("\n".join(lines))
    return 0


def cmd_paths(args) -> int:
    g = _load(args.file)
    n = parse_degree(args.degree, g.rank)
    if args.source not in g.vertices:
        print(f"error: unknown vertex {args.source!r}", file=sys.stderr)
        return 2
    found = paths_from(g, args.source, n)
    print(f"# paths with range {args.source} and degree {args.degree}: {len(found)}")
    for path in found:
        print(f"{name_of(path)} range={path.range} source={path.source}")
    return 0


def cmd_compare_duals(args) -> int:
    g = _load(args.file)
    p = parse_degree(args.p, g.rank)
    q = parse_degree(args.q, g.rank)
    equal = iterated_dual_equal(g, p, q)
    print(f"q(p-dual) == (p+q)-dual: {_bool(equal)} (p={args.p}, q={args.q})")
    return 0 if equal else 1


def cmd_report(args) -> int:
    from .viz import draw_skeleton

    g = _load(args.file)
    os.makedirs(args.output, exist_ok=True)
    rep = structural_report(g)
    lines = [
        f"file = {args.file}",
        f"k = {g.rank}",
        f"vertices = {len(g.vertices)}",
        f"edges = {len(g.edges)}",
        f"no_sources = {_bool(rep.no_sources)}",
        f"no_sinks = {_bool(rep.no_sinks)}",
        f"strongly_connected = {_bool(rep.strongly_connected)}",
    ]
    figures = []
    skeleton_png = os.path.join(args.output, "skeleton.png")
    draw_skeleton(g, skeleton_png, title=os.path.basename(args.file))
    figures.append(skeleton_png)

    if g.rank == 2 and rep.no_sources and rep.no_sinks:
        result = k_groups(g, mode="dual", h3_bound=args.h3_bound)
        hyp = result.hypotheses
        lines += [
            f"K0 = {format_group(result.k0_rank, result.k0_torsion)}",
            f"K1 = {format_group(result.k1_rank, result.k1_torsion)}",
            f"aperiodic_on_window = {_bool(bool(hyp.aperiodic_on_window))}",
            f"h3_window_bound = {hyp.h3_window_bound}",
        ]
        dg = dual(g, g.ones())
        dual_png = os.path.join(args.output, "dual_skeleton.png")
        draw_skeleton(dg, dual_png, title=f"(1,1)-dual of {os.path.basename(args.file)}")
        figures.append(dual_png)
    else:
        lines.append("K0 = n/a")
        lines.append("K1 = n/a")

    summary = os.path.join(args.output, "summary.txt")
    with open(summary, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {summary}")
    for fig in figures:
        print(f"wrote {fig}")
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="kgraphs",
        description="Finite k-graphs: validation, duals, aperiodicity checks, "
                    "and exact K-theory",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a k-graph file against every invariant")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("info", help="structural report and coordinate matrices")
    p.add_argument("file")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("dual", help="write the p-dual graph")
    p.add_argument("file")
    p.add_argument("--p", required=True, help="dual degree, e.g. 1,1")
    p.add_argument("-o", "--output", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("matrices", help="print coordinate matrices")
    p.add_argument("file")
    p.add_argument("--dual", default=None, metavar="P",
                   help="use the P-dual's matrices, e.g. --dual 1,1")
    p.set_defaults(func=cmd_matrices)

    p = sub.add_parser("rs-check", help="aperiodicity conditions (H0)-(H3) on the "
                                        "(1,1)-dual")
    p.add_argument("file")
    p.add_argument("--h3-bound", type=int, default=3, dest="h3_bound",
                   help="check offsets with max-norm up to this bound (default 3)")
    p.add_argument("--h3-margin", default="2,2", dest="h3_margin",
                   help="extra search shape beyond each offset (default 2,2)")
    p.set_defaults(func=cmd_rs_check)

    p = sub.add_parser("ktheory", help="K-groups of the associated C*-algebra")
    p.add_argument("file")
    p.add_argument("--mode", choices=["dual", "direct"], default="dual")
    p.add_argument("--p", default=None, help="dual degree for dual mode (default 1,1)")
    p.add_argument("--h3-bound", type=int, default=2, dest="h3_bound")
    p.add_argument("--no-h3", action="store_true",
                   help="skip the aperiodicity window check")
    p.set_defaults(func=cmd_ktheory)

    p = sub.add_parser("paths", help="enumerate paths with a given range and degree")
    p.add_argument("file")
    p.add_argument("--from", required=True, dest="source", metavar="VERTEX",
                   help="range vertex of the paths")
    p.add_argument("--degree", required=True, help="degree, e.g. 2,1")
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("compare-duals",
                       help="check q(p-dual) == (p+q)-dual by canonical serialization")
    p.add_argument("file")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.set_defaults(func=cmd_compare_duals)

    p = sub.add_parser("report", help="write summary.txt plus skeleton figures "
                                      "to a directory")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.add_argument("--h3-bound", type=int, default=2, dest="h3_bound")
    p.set_defaults(func=cmd_report)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_arg_parser()
    args = ap.parse_args(argv)
    try:
        return int(args.func(args))
    except SystemExit as exc:
        return int(exc.code or 0)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
