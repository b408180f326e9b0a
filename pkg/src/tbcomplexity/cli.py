"""Command-line interface.

Exit codes: 0 success, 2 usage or domain error, 3 solver non-convergence.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .certify import (
    VARIANTS,
    Report,
    clean,
    report_certify,
    report_lens,
    report_mn,
    table_rows,
)
from .errors import ComplexityError, SolverError
from .exactnum import fibonacci, torsion_order
from .geometry import DEFAULT_TOL, extract_gluing_system, max_tetrahedron_volume, solve_gluing, volume
from .triangulation import (
    cyclic_cover,
    read_triangulation,
    serialize_triangulation,
    spine_stats,
    transfer_cocycle,
)

EXIT_DOMAIN = 2
EXIT_SOLVER = 3


class SolverFailure(Exception):
    def __init__(self, report: Report):
        self.report = report


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ComplexityError(f"cannot read {path}: {exc.strerror}") from None
    return read_triangulation(text)


def cmd_fib(args):
    return Report("fib", {"k": args.k}, {"value": fibonacci(args.k)})


def cmd_torsion(args):
    return Report("torsion", {"n": args.n}, {"value": torsion_order(args.n)})


def cmd_bound(args):
    if args.family == "mn":
        if len(args.values) != 1:
            raise ComplexityError("usage: bound mn <n>")
        return report_mn(args.values[0])
    if len(args.values) != 2:
        raise ComplexityError("usage: bound lens <p> <q>")
    return report_lens(*args.values)


def cmd_build(args):
    base = VARIANTS[args.variant]()
    cocycle = transfer_cocycle(base)
    tri, weights = base, cocycle
    if args.cover is not None:
        tri, weights = cyclic_cover(base, cocycle, args.cover), None
    text = serialize_triangulation(tri, weights)
    results = {"tetrahedra": tri.tet_count, "edge_classes": len(tri.edge_classes)}
    if args.output:
        Path(args.output).write_text(text)
        results["written"] = args.output
    else:
        results["text"] = text
    return Report("build", {"variant": args.variant, "cover": args.cover}, results)


def cmd_stats(args):
    tri, cocycle = _load(args.file)
    stats = spine_stats(tri)
    classes = [{"valence": e.valence,
                "incidences": [[t, f"{a}{b}"] for t, (a, b) in e.representatives]}
               for e in tri.edge_classes]
    results = {"tetrahedra": tri.tet_count, "orientable": tri.is_orientable,
               "edge_classes": classes,
               "spine": {"vertices": stats.vertices, "edges": stats.edges, "cells": stats.cells,
                         "cell_boundary_lengths": list(stats.cell_boundary_lengths),
                         "euler": stats.euler}}
    if cocycle is not None:
        results["cocycle_valid"] = cocycle.is_cocycle(tri)
    return Report("stats", {"file": args.file}, results)


def cmd_volume(args):
    tri, _ = _load(args.file)
    system = extract_gluing_system(tri)
    try:
        shapes = solve_gluing(system, tol=args.tol)
    except SolverError as exc:
        raise SolverFailure(Report("volume", {"file": args.file, "tol": args.tol},
                                   {"error": str(exc)})) from exc
    vol = volume(shapes)
    results = {"shapes": list(shapes.shapes), "residual": shapes.residual,
               "iterations": shapes.iterations, "volume": vol.volume, "error": vol.error,
               "volume_over_V": vol.volume / max_tetrahedron_volume(),
               "edge_angle_sums": shapes.edge_angle_sums(system)}
    return Report("volume", {"file": args.file, "tol": args.tol}, results)


def cmd_certify(args):
    report = report_certify(args.n, args.variant, args.tol)
    if "solver-failure" in report.results["certificate"]["flags"]:
        raise SolverFailure(report)
    return report


def cmd_table(args):
    rows = table_rows(args.kind, args.n_max, args.tol)
    return Report("table", {"kind": args.kind, "n_max": args.n_max}, {"rows": rows})


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, int) and not isinstance(value, bool) and abs(value) >= 10**15:
        s = str(abs(value))
        return f"{'-' if value < 0 else ''}{s[0]}.{s[1:7]}e+{len(s) - 1}"
    return str(value)


def render_text(report: Report, quiet: bool) -> str:
    r = clean(report.results)
    cmd = report.command
    if cmd in ("fib", "torsion"):
        return str(r["value"])
    if cmd == "certify":
        c = r["certificate"]
        if quiet:
            return f"{c['status']} {c['lower']} {c['upper']['value']}"
        lines = [f"{c['family']}  n={c['n']}",
                 f"  status      {c['status']}",
                 f"  upper       {c['upper']['value']}  ({c['upper']['provenance']}: {c['upper']['citation']})"]
        for b in c["lower_bounds"]:
            lines.append(f"  lower       {b['value']}  ({b['source']}, raw {_fmt(b['raw'])})")
        ev = c["volume_evidence"]
        if ev:
            lines.append(f"  volume      {_fmt(ev['volume'])} +- {ev['volume_error']:.3g}  "
                         f"(= {_fmt(ev['volume_over_V'])} V)")
            lines.append(f"  residual    {ev['residual']:.3g} after {ev['iterations']} iterations")
        for flag in c["flags"]:
            lines.append(f"  flag        {flag}")
        return "\n".join(lines)
    if cmd in ("bound mn", "bound lens"):
        c = r["certificate"]
        if quiet:
            up = c["upper"]["value"] if c["upper"] else "-"
            return f"{c['status']} {c['lower']} {up}"
        lines = [f"{c['family']}" + (f"  n={c['n']}" if c["n"] else "")]
        for key, value in r.items():
            if key == "certificate":
                continue
            if isinstance(value, dict) and "value" in value:
                extra = value.get("source") or value.get("provenance")
                value = f"{value['value']}  ({extra})"
            lines.append(f"  {key:<16}{_fmt(value)}")
        lines.append(f"  {'status':<16}{c['status']}")
        lines.extend(f"  flag            {f}" for f in c["flags"])
        return "\n".join(lines)
    if cmd == "table":
        rows = r["rows"]
        if not rows:
            return ""
        keys = list(rows[0])
        cells = [[_fmt(row[k]) for k in keys] for row in rows]
        widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
        out = ["  ".join(k.rjust(w) for k, w in zip(keys, widths))]
        if not quiet:
            out.append("  ".join("-" * w for w in widths))
        out += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
        return "\n".join(out)
    if cmd == "build":
        return r.get("text", f"wrote {r.get('written')}").rstrip("\n") if not quiet or "text" in r else ""
    if cmd == "stats":
        s = r["spine"]
        lines = [f"tetrahedra    {r['tetrahedra']}",
                 f"edge classes  {len(r['edge_classes'])}  valences {[e['valence'] for e in r['edge_classes']]}",
                 f"spine         {s['vertices']} vertices, {s['edges']} edges, {s['cells']} cells, "
                 f"euler {s['euler']}",
                 f"orientable    {r['orientable']}"]
        if "cocycle_valid" in r:
            lines.append(f"cocycle valid {r['cocycle_valid']}")
        return lines[1] if quiet else "\n".join(lines)
    if cmd == "volume":
        if quiet:
            return _fmt(r["volume"])
        lines = [f"volume     {_fmt(r['volume'])} +- {r['error']:.3g}  (= {_fmt(r['volume_over_V'])} V)",
                 f"residual   {r['residual']:.3g} after {r['iterations']} iterations"]
        lines += [f"z[{i}]       {_fmt(z[0])} + {_fmt(z[1])}i" for i, z in enumerate(r["shapes"])]
        return "\n".join(lines)
    return report.to_json()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit a machine-readable JSON report")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help=f"solver residual target (default {DEFAULT_TOL:g})")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="print only the essential result")
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="record wall-clock time in the report (breaks byte-identity)")

    parser = argparse.ArgumentParser(
        prog="tbcx", parents=[common],
        description="Complexity bounds for torus bundles with monodromy [[2,1],[1,1]]^n.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fib", parents=[common], help="Fibonacci number phi_k")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_fib)

    p = sub.add_parser("torsion", parents=[common], help="|Tor H_1(M_n)|")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("bound", parents=[common], help="closed-form lower bounds")
    p.add_argument("family", choices=["mn", "lens"])
    p.add_argument("values", type=int, nargs="+", metavar="N")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("build", parents=[common], help="write a triangulation file")
    p.add_argument("variant", choices=["n8", "sibling"])
    p.add_argument("--cover", type=int, help="build the n-fold cyclic cover")
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("stats", parents=[common], help="edge classes and dual spine counts")
    p.add_argument("file")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("volume", parents=[common], help="solve gluing equations, report volume")
    p.add_argument("file")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("certify", parents=[common], help="certify c = 2n for a cyclic cover")
    p.add_argument("variant", choices=["n8", "sibling"])
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("table", parents=[common], help="tabulate a family")
    p.add_argument("kind", choices=["mn", "nn", "lens"])
    p.add_argument("n_max", type=int)
    p.set_defaults(func=cmd_table)
    return parser


def _emit(report: Report, args, started: float) -> None:
    if getattr(args, "timing", False):
        report.timing_ms = (time.perf_counter() - started) * 1000
    if getattr(args, "json", False):
        print(report.to_json())
    else:
        text = render_text(report, getattr(args, "quiet", False))
        if text:
            print(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if not hasattr(args, "tol"):
        args.tol = DEFAULT_TOL
    started = time.perf_counter()
    try:
        report = args.func(args)
    except SolverFailure as exc:
        _emit(exc.report, args, started)
        return EXIT_SOLVER
    except ComplexityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _emit(report, args, started)
    return 0


if __name__ == "__main__":
    sys.exit(main())
