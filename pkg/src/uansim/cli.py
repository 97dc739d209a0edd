"""Command-line entry point."""

from __future__ import annotations

import argparse
import sys

from .config import PRESETS, PROTOCOLS, load_config
from .runner import run_experiment


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uansim",
        description="Underwater acoustic network simulator: RL-RPL-UA vs baselines")
    parser.add_argument("--scenario", default="paper-static",
                        help=f"preset ({', '.join(PRESETS)}) or a TOML file path")
    parser.add_argument("--protocol", default="rl-rpl-ua",
                        help="comma-separated protocol list: " + ", ".join(PROTOCOLS))
    parser.add_argument("--trials", type=int, default=20, metavar="K")
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--out", default="results")
    parser.add_argument("--trace", action="store_true",
                        help="write a per-trial protocol event log")
    parser.add_argument("--trace-agent", action="store_true",
                        help="include per-update agent lines in the trace")
    parser.add_argument("--static-weights", action="store_true",
                        help="freeze the objective weights at uniform 0.25")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.scenario)
        if args.static_weights:
            config.rl.static_weights = True
        protocols = [p.strip() for p in args.protocol.split(",") if p.strip()]
        for protocol in protocols:
            if protocol not in PROTOCOLS:
                raise ValueError(f"unknown protocol: {protocol!r}")
        if args.trials < 1:
            raise ValueError("--trials must be >= 1")
    except (ValueError, OSError) as exc:
        print(f"uansim: {exc}", file=sys.stderr)
        return 2
    try:
        manifest = run_experiment(config, protocols, args.trials, args.seed,
                                  args.out, trace=args.trace,
                                  trace_agent=args.trace_agent)
    except Exception as exc:  # trial failure: partial outputs stay on disk
        print(f"uansim: trial failed: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}/trials.csv ({manifest['trials']} trials x "
          f"{len(manifest['protocols'])} protocols, scenario {manifest['label']})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
