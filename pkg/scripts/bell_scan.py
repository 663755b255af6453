#!/usr/bin/env python3
"""Scan the qudit Bell quantity over a dimension range and emit JSON lines.

Each record carries the probability-level value, the closed-form value, the
exhaustive deterministic maximum (where the d^4 enumeration is feasible),
and the white-noise violation threshold.
"""

import argparse
import sys

from qcorr.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--d-range", default="2..16", help="inclusive range A..B")
    parser.add_argument("--out", default=None, help="also write the lines to this path")
    args = parser.parse_args()
    argv = []
    if args.out:
        argv += ["--out", args.out]
    argv += ["bell", "--d-range", args.d_range]
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
