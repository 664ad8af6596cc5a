"""Figure rendering command line.

Usage:
    sqws-figures render --spec spec.json --in RUN_DIR --out FIG_DIR
    sqws-figures render --kind efficiency_curves --in RUN_DIR --out FIG_DIR

Without --spec, a default spec for --kind is used (standard input file
names as produced by the sweep harness).
"""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, RenderError, default_spec, load_spec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sqws-figures",
                                     description="Render sqws CSV outputs into figures")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("render", help="render one figure")
    p.add_argument("--spec", default=None, help="FigureSpec JSON file")
    p.add_argument("--kind", default=None, choices=KINDS,
                   help="figure kind when no spec file is given")
    p.add_argument("--in", dest="in_dir", required=True, help="input run directory")
    p.add_argument("--out", dest="out_dir", required=True, help="output directory")
    p.add_argument("--raster", action="store_true", help="write PNG instead of SVG")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.spec:
            spec = load_spec(args.spec)
        elif args.kind:
            spec = default_spec(args.kind)
        else:
            raise RenderError("one of --spec or --kind is required")
        path = render(spec, args.in_dir, args.out_dir, raster=args.raster)
    except RenderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
