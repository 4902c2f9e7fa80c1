"""Command line driver.

Exit status: 0 when a verdict was reached, 2 when the result is unknown or
non-recursive, 1 on bad input.  Machine output goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from .algebra import AlgebraError
from .engine import AnalyzeConfig, analyze
from .formats import FormatError, from_algebra, load_algebra
from .generators import UnknownExample, gallery, gallery_names
from .graph import build_graph, connected_components, quotient_graph, to_dot
from .linalg import QQ, field_from_name
from .modules import (
    ModuleError,
    direct_sum,
    gldim_oracle,
    projective_module,
    regular_module,
    simple_module,
    tor_via_reduced_complex,
    tor_via_resolution,
)


class InputError(Exception):
    pass


def _module_from_spec(a, spec: str):
    """'S:e' simple, 'P:e' projective, 'A' regular; '+'-joined for direct sums."""
    parts = []
    for token in spec.split("+"):
        token = token.strip()
        if token == "A":
            parts.append(regular_module(a))
            continue
        kind, _, vertex = token.partition(":")
        if kind not in ("S", "P") or not vertex:
            raise InputError(f"bad module spec {token!r}; use S:<vertex>, P:<vertex> or A")
        try:
            parts.append(simple_module(a, vertex) if kind == "S" else projective_module(a, vertex))
        except AlgebraError as exc:
            raise InputError(str(exc)) from None
    return parts[0] if len(parts) == 1 else direct_sum(parts)


def cmd_analyze(args) -> int:
    a = load_algebra(args.file)
    config = AnalyzeConfig(max_subset_size=args.max_subset, oracle_cutoff=args.oracle_cutoff,
                           sharpen_flat=args.sharpen_flat)
    report = analyze(a, config)
    if args.text:
        sys.stdout.write(report.to_text())
    else:
        sys.stdout.write(report.to_json() + "\n")
    if report.consistent is False:
        print("warning: bounds disagree with the resolution oracle", file=sys.stderr)
    return 0 if report.verdict != "unknown" else 2


def cmd_oracle(args) -> int:
    a = load_algebra(args.file)
    res = gldim_oracle(a, args.cutoff)
    out = {"cutoff": args.cutoff, "trace": [list(t) for t in res.trace]}
    if res.finite:
        out.update(verdict="finite", gldim=res.value)
    else:
        period = res.period()
        out.update(verdict="exceeds-cutoff", gldim=None, period=list(period) if period else None)
    sys.stdout.write(json.dumps(out) + "\n")
    return 0 if res.finite else 2


def cmd_graph(args) -> int:
    a = load_algebra(args.file)
    g = build_graph(a)
    if args.color:
        key, _, value = args.color.partition("=")
        if key != "U" or not value:
            raise InputError("--color expects U=v1,v2,...")
        members = [v.strip() for v in value.split(",") if v.strip()]
        unknown = [v for v in members if v not in g.vertices]
        if unknown:
            raise InputError(f"unknown vertices in --color: {unknown}")
        if args.collapse:
            sys.stdout.write(to_dot(quotient_graph(g, members)))
        else:
            sys.stdout.write(to_dot(g, members))
    elif args.dot:
        sys.stdout.write(to_dot(g))
    else:
        out = {
            "vertices": list(g.vertices),
            "edges": [list(e) for e in g.sorted_edges()],
            "components": connected_components(g),
        }
        sys.stdout.write(json.dumps(out) + "\n")
    return 0


def cmd_tor(args) -> int:
    a = load_algebra(args.file)
    x = _module_from_spec(a.opposite(), args.x)
    y = _module_from_spec(a, args.y)
    if args.reduced:
        value = tor_via_reduced_complex(x, y, args.deg)
    else:
        value = tor_via_resolution(x, y, args.deg)
    sys.stdout.write(json.dumps({"degree": args.deg, "dim": value,
                                 "method": "reduced" if args.reduced else "resolution"}) + "\n")
    return 0


def cmd_gallery(args) -> int:
    if args.list or not args.emit:
        for name in gallery_names():
            sys.stdout.write(name + "\n")
        return 0
    fld = field_from_name(args.field) if args.field else QQ
    a = gallery(args.emit, fld)
    sys.stdout.write(from_algebra(a, name=args.emit).dumps())
    return 0


def cmd_validate(args) -> int:
    """Structural invariants only: idempotents, associativity, Pierce grading, graph soundness."""
    a = load_algebra(args.file)
    a.check()
    g = build_graph(a)
    for s, t in g.edges:
        if not a.component(s, t):
            raise AlgebraError(f"edge {s}->{t} without a basis element")
    connected_components(g, a)
    sys.stdout.write(json.dumps({"ok": True, "dim": a.dim, "vertices": list(a.vertices),
                                 "edges": len(g.edges)}) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pierce-gldim",
                                description="Bound the global dimension of a finite-dimensional algebra.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", help="recursive bound with decision trace")
    s.add_argument("file")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--text", action="store_true", help="human-readable report")
    s.add_argument("--oracle-cutoff", type=int, default=None, help="cross-check with a resolution of this length")
    s.add_argument("--max-subset", type=int, default=None, help="largest subset size tried")
    s.add_argument("--sharpen-flat", action="store_true", help="use the max(1, ...) bound for flat corners")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("oracle", help="global dimension by minimal resolutions of the simples")
    s.add_argument("file")
    s.add_argument("--cutoff", type=int, default=8)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("graph", help="the idempotent graph")
    s.add_argument("file")
    s.add_argument("--dot", action="store_true")
    s.add_argument("--color", default=None, help="U=v1,v2 colors U red and the rest blue")
    s.add_argument("--collapse", action="store_true", help="with --color, contract U to one vertex")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("tor", help="dimension of Tor_n(X, Y)")
    s.add_argument("file")
    s.add_argument("--x", required=True, help="right module: S:v, P:v, A, joined by +")
    s.add_argument("--y", required=True, help="left module: S:v, P:v, A, joined by +")
    s.add_argument("--deg", type=int, required=True)
    s.add_argument("--reduced", action="store_true", help="use the reduced bar complex")
    s.set_defaults(func=cmd_tor)

    s = sub.add_parser("gallery", help="built-in examples")
    s.add_argument("--list", action="store_true")
    s.add_argument("--emit", default=None, metavar="NAME")
    s.add_argument("--field", default=None)
    s.set_defaults(func=cmd_gallery)

    s = sub.add_parser("validate", help="check structural invariants of a presentation")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, InputError, UnknownExample, ModuleError, AlgebraError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownExample) and exc.args else exc
        if isinstance(exc, UnknownExample):
            msg = f"unknown example {msg!r}"
        print(f"error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
