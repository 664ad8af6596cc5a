#!/usr/bin/env python3
"""Run any named preset into an output directory.

Usage: python scripts/run_preset.py PRESET OUT_DIR [--workers N] [--seed S]

Dispatches to the matching CLI subcommand for the preset's kind, so the
outputs are identical to invoking `sqws` directly.
"""

import argparse
import sys

from sqws.cli import main as cli_main
from sqws.presets import preset_kind

KIND_TO_COMMAND = {
    "sweep": "sweep",
    "no_sink": "no-sink",
    "ring_lattice": "ring-lattice",
    "profile": "ring-lattice",
    "metrics": "metrics",
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("preset")
    ap.add_argument("out")
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--series", action="store_true")
    args = ap.parse_args()

    command = KIND_TO_COMMAND[preset_kind(args.preset)]
    argv = [command, "--config", args.preset, "--out", args.out]
    if command in ("sweep", "no-sink", "ring-lattice") and args.workers:
        argv += ["--workers", str(args.workers)]
    if args.seed is not None and command != "metrics":
        argv += ["--seed", str(args.seed)]
    if args.series and command == "sweep":
        argv += ["--series"]
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
