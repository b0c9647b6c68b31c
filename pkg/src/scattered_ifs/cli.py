"""Command-line front end.

Exit codes: 0 when a check passes (or a refutation is found), 1 when it
fails or is inconclusive, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .hutchinson import verify_attractor, verify_property_A, verify_property_B
from .maps import MapContext, ifs_for, parse_map, parse_maps
from .ordinals import Ordinal, add, ladder, print_ordinal
from .pointset import PointSet, as_fraction, format_rational, write_pointset
from .refuter import refute_candidate_ifs
from .scattered import SpaceSpec, Truncation, load_spec, member, ranked_points

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ordinal(text: str) -> Ordinal:
    try:
        return Ordinal.of(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--r", type=_rational, default=Fraction(4), help="block ratio, a rational > 3")
    p.add_argument("--delta", type=_ordinal, default=None, help="ambient ordinal, e.g. 'w+1'")
    p.add_argument("--blocks", type=int, default=4, help="block budget N of the truncation")
    p.add_argument("--depth", type=int, default=None, help="nesting depth D (defaults to --blocks)")
    p.add_argument("--out", default=None, help="output path (stdout when omitted)")
    p.add_argument("--format", choices=("txt", "csv", "svg"), default=None)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="scattered-ifs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def space_args(p):
        p.add_argument("--kind", choices=("K", "L", "CounterexampleK", "BadEmbedding"), default="K")
        p.add_argument("--alpha", type=_ordinal, default=None)
        p.add_argument("--spec", default=None, help="SpaceSpec JSON file (overrides --kind/--alpha)")

    p = sub.add_parser("build-set", parents=[common], help="materialise a scattered set")
    space_args(p)
    p = sub.add_parser("plot", parents=[common], help="SVG tick plot keyed to rank")
    space_args(p)

    p = sub.add_parser("member", parents=[common], help="exact membership test")
    space_args(p)
    p.add_argument("--x", type=_rational, required=True)

    p = sub.add_parser("eval-map", parents=[common], help="evaluate a map exactly")
    p.add_argument("--map", required=True, help="e.g. 'phitop', 'g(w+1)', 'compose(phi,phi)'")
    p.add_argument("--x", type=_rational, action="append", required=True)

    p = sub.add_parser("ladder", parents=[common], help="rung c_n(beta) of the ladder system in top")
    p.add_argument("--top", type=_ordinal, required=True)
    p.add_argument("--beta", type=_ordinal, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="check an attractor identity on truncations")
    p.add_argument("identity", choices=("attractor", "property-a", "property-b"))
    p.add_argument("--alpha", type=_ordinal, default=None)
    p.add_argument("--beta", type=_ordinal, default=None)

    p = sub.add_parser("refute", parents=[common], help="refute a candidate IFS for the sequence K")
    p.add_argument("--ifs", required=True, help="comma-separated maps, e.g. 'affine(1/2,0),affine(0,1)'")
    return parser


def _truncation(args) -> Truncation:
    depth = args.blocks if args.depth is None else args.depth
    try:
        return Truncation(args.blocks, depth)
    except ValueError as exc:
        raise UsageError(str(exc))


def _space(args) -> Tuple[SpaceSpec, Truncation]:
    if args.spec:
        spec, t = load_spec(Path(args.spec).read_text())
        return spec, t or _truncation(args)
    t = _truncation(args)
    if args.kind == "CounterexampleK":
        return SpaceSpec.counterexample(), t
    if args.alpha is None:
        raise UsageError(f"--alpha is required for kind {args.kind}")
    if args.kind == "BadEmbedding":
        return SpaceSpec("BadEmbedding", alpha=args.alpha, r=args.r, blocks=args.blocks), t
    return SpaceSpec(args.kind, alpha=args.alpha, r=args.r, delta=args.delta), t


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def render_csv(ranked) -> str:
    lines = ["point,rank"] + [f"{format_rational(p)},{print_ordinal(r)}" for p, r in ranked]
    return "\n".join(lines) + "\n"


_PALETTE = ("#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860", "#da8bc3", "#8c8c8c")


def render_svg(ranked, title: str = "") -> str:
    """One vertical tick per point; height and colour follow the rank."""
    width, base_y, unit = 1000, 180, 20
    lo = min([Fraction(0)] + [p for p, _ in ranked])
    hi = max([Fraction(1)] + [p for p, _ in ranked])
    levels = sorted({r for _, r in ranked})
    index = {r: i for i, r in enumerate(levels)}
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + 40}" height="{base_y + 40}" '
        f'viewBox="-20 0 {width + 40} {base_y + 40}">',
        f"<title>{title}</title>",
        f'<line x1="0" y1="{base_y}" x2="{width}" y2="{base_y}" stroke="black" stroke-width="1"/>',
    ]
    for p, r in ranked:
        x = float((p - lo) / (hi - lo) * width)
        h = unit * (1 + index[r])
        colour = _PALETTE[index[r] % len(_PALETTE)]
        out.append(f'<line x1="{x:.4f}" y1="{base_y}" x2="{x:.4f}" y2="{base_y - h}" '
                   f'stroke="{colour}" stroke-width="1"><title>{format_rational(p)} rank {r}</title></line>')
    for i, r in enumerate(levels):
        out.append(f'<text x="{width - 120}" y="{16 + 14 * i}" font-size="12" '
                   f'fill="{_PALETTE[i % len(_PALETTE)]}">rank {r}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _cmd_build(args, default_format: str) -> int:
    spec, t = _space(args)
    ranked = ranked_points(spec, t)
    fmt = args.format or default_format
    if fmt == "txt":
        text = write_pointset(PointSet(p for p, _ in ranked))
    elif fmt == "csv":
        text = render_csv(ranked)
    else:
        text = render_svg(ranked, title=f"{spec.kind} {spec.alpha if spec.alpha is not None else ''} {t}")
    _emit(text, args.out)
    return EXIT_OK


def _context(args, delta: Optional[Ordinal] = None) -> MapContext:
    d = args.delta if args.delta is not None else delta
    if d is None:
        raise UsageError("--delta is required")
    try:
        return MapContext(args.r, d)
    except ValueError as exc:
        raise UsageError(str(exc))


def _cmd_member(args) -> int:
    spec, _ = _space(args)
    ok = member(spec, args.x)
    _emit(("true" if ok else "false") + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_eval(args) -> int:
    ctx = _context(args, Ordinal.of(0))
    m = parse_map(args.map, ctx)
    _emit("".join(format_rational(m(x)) + "\n" for x in args.x), args.out)
    return EXIT_OK


def _cmd_ladder(args) -> int:
    _emit(print_ordinal(ladder(args.top, args.beta, args.n)) + "\n", args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    t_in = _truncation(args)
    if t_in.max_block < 2 or t_in.max_depth < 1:
        raise UsageError("verification needs --blocks >= 2 and --depth >= 1")
    t_cover = t_in.coarser()
    if args.identity == "attractor":
        ctx = _context(args)
        spec = SpaceSpec.K(add(ctx.delta, 1), r=ctx.r, delta=ctx.delta)
        report = verify_attractor(ifs_for(ctx.delta, ctx.r), spec, t_in, t_cover)
    elif args.identity == "property-a":
        if args.alpha is None or args.beta is None:
            raise UsageError("property-a needs --alpha and --beta")
        ctx = _context(args, args.beta)
        report = verify_property_A(args.alpha, args.beta, ctx, t_in, t_cover)
    else:
        if args.alpha is None:
            raise UsageError("property-b needs --alpha")
        ctx = _context(args, args.alpha)
        report = verify_property_B(args.alpha, ctx, t_in, t_cover)
    _emit(report.to_text(), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_refute(args) -> int:
    ctx = None
    if args.delta is not None:
        ctx = _context(args)
    maps = parse_maps(args.ifs, ctx)
    if not maps:
        raise UsageError("--ifs is empty")
    report = refute_candidate_ifs(maps, args.blocks)
    _emit(report.to_text(), args.out)
    return EXIT_OK if report.refuted else EXIT_FAIL


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    handlers = {
        "build-set": lambda a: _cmd_build(a, "txt"),
        "plot": lambda a: _cmd_build(a, "svg"),
        "member": _cmd_member,
        "eval-map": _cmd_eval,
        "ladder": _cmd_ladder,
        "verify": _cmd_verify,
        "refute": _cmd_refute,
    }
    try:
        return handlers[args.command](args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"scattered-ifs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
