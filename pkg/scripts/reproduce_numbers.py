#!/usr/bin/env python3
"""Run the full claim registry and write the reproduction report.

Thin wrapper over ``qcorr reproduce-all``; exits nonzero if any
MATCH-classified claim fails.
"""

import argparse
import sys

from qcorr.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="reproduction_report.json")
    parser.add_argument("--json", action="store_true", help="print JSON instead of summary lines")
    args = parser.parse_args()
    argv = ["--out", args.out]
    if args.json:
        argv.append("--json")
    argv.append("reproduce-all")
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
