"""plots CLI: regenerate every figure from aggregate JSON results."""

from __future__ import annotations

import argparse
import sys

from .render import MissingProtocol, load_aggregates, render_all


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plots",
        description="Render mean +/- std bar charts from uansim aggregate.json files")
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        metavar="JSON", help="aggregate JSON (repeatable; merged)")
    parser.add_argument("--out", required=True, metavar="DIR")
    parser.add_argument("--format", choices=("svg", "png"), default="svg")
    parser.add_argument("--protocols", default=None,
                        help="comma-separated protocol order (default: all present)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenarios = load_aggregates(args.inputs)
        protocols = ([p.strip() for p in args.protocols.split(",") if p.strip()]
                     if args.protocols else None)
        written = render_all(scenarios, args.out, fmt=args.format,
                             protocols=protocols)
    except (MissingProtocol, ValueError, OSError) as exc:
        print(f"plots: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(written)} figures to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
