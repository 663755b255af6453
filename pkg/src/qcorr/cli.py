"""Command-line entry point reproducing every registry claim and scan.

Subcommands:

* ``reproduce-all``       run the claim registry, print one line per claim,
                          exit nonzero iff a MATCH-classified claim fails;
* ``witness NAME``        threshold report for one witness, optionally a
                          value at a noise fraction or a PSD check at gamma;
* ``bell --d-range A..B`` JSON-lines scan of the qudit Bell quantity;
* ``lhv --d D|--mermin N``exhaustive deterministic maxima;
* ``correlators FAMILY``  export a correlator family as dense JSON.

Reports are deterministic: repeated runs with the same arguments produce
byte-identical output (keys sorted, no timestamps).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bell, correlators, states, witnesses
from .claims import RunConfig, run_claims
from .errors import UnknownWitnessError

CORRELATOR_FAMILIES = (
    "ghz-single",
    "ghz-pair",
    "ghz-x-parity",
    "mermin",
    "stabilizer",
    "singlet4-x",
    "singlet4-y",
    "singlet4-z",
    "ghz4x3-z",
    "ghz4x3-f",
    "bell-qudit",
)


def _dump(obj: dict | list) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _dump_lines(records: list[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")


def _parse_d_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        lo_i, hi_i = int(lo), int(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from exc
    if lo_i < 2 or hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"bad dimension range {text!r}")
    return lo_i, hi_i


def _parse_tol(text: str) -> tuple[str, float]:
    try:
        name, value = text.split("=", 1)
        return name, float(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected NAME=VAL, got {text!r}") from exc


def cmd_reproduce_all(args: argparse.Namespace) -> int:
    config = RunConfig(
        d_range=args.d_range,
        tolerance_overrides=tuple(args.tol),
        seed=args.seed,
    )
    report = run_claims(config)
    text = _dump(report.to_dict())
    _write_out(text, args.out)
    if args.json:
        sys.stdout.write(text)
    else:
        for line in report.human_lines():
            print(line)
    return report.exit_status


def cmd_witness(args: argparse.Namespace) -> int:
    try:
        witness = witnesses.assemble(args.name, tau=args.tau, word_index=args.word_index)
    except UnknownWitnessError:
        print(f"unknown witness {args.name!r}; choose from {witnesses.WITNESS_NAMES}")
        return 2
    target = witnesses.target_state(args.name)
    report = witnesses.noise_threshold(witness, target).to_dict()
    pw = witnesses.projector_witness(target, witness.partition_dims)
    report["alpha"] = pw.alpha
    report["find_gamma"] = witnesses.find_gamma(witness, pw)
    if args.p is not None:
        rho = states.white_noise_mix(target, args.p)
        report["p"] = args.p
        report["witness_value_at_p"] = witnesses.witness_value(witness, rho)
    if args.gamma is not None:
        report["gamma"] = args.gamma
        report["validate_at_gamma"] = witnesses.validate(witness, pw, args.gamma)
    text = _dump(report)
    _write_out(text, args.out)
    if args.json:
        sys.stdout.write(text)
    else:
        print(f"{args.name}: tau={report['tau']} <S>={report['quantum_expectation']:.9g}")
        print(f"  noise threshold p* = {report['p_star']:.9g} (scan {report['p_star_scan']:.6f})")
        if report["lhv_violation_threshold"] is not None:
            print(
                f"  classical-bound violation threshold = "
                f"{report['lhv_violation_threshold']:.9g} (bound {report['lhv_bound']:g})"
            )
        if report["paper_claim"] is not None:
            print(f"  reference {report['paper_claim']:.9g} -> match={report['match']}")
        print(f"  alpha = {report['alpha']:.9g}, find_gamma = {report['find_gamma']}")
        if "witness_value_at_p" in report:
            print(f"  value at p={args.p}: {report['witness_value_at_p']:.9g}")
        if "validate_at_gamma" in report:
            print(f"  PSD at gamma={args.gamma}: {report['validate_at_gamma']}")
    return 0


def cmd_bell(args: argparse.Namespace) -> int:
    lo, hi = args.d_range
    records = [bell.scan_record(d) for d in range(lo, hi + 1)]
    limit = bell.bell_limit_constant()
    records.append(
        {
            "limit_constant": limit,
            "abs_distance_at_max_d": abs(records[-1]["C_d_analytic"] - limit),
        }
    )
    text = _dump_lines(records)
    _write_out(text, args.out)
    sys.stdout.write(text)
    return 0


def cmd_lhv(args: argparse.Namespace) -> int:
    if (args.d is None) == (args.mermin is None):
        print("provide exactly one of --d or --mermin")
        return 2
    if args.d is not None:
        value, assignment = bell.lhv_max_bipartite(args.d)
        record = {
            "d": args.d,
            "lhv_max": value,
            "argmax": {
                "party1": list(assignment.outcomes[0]),
                "party2": list(assignment.outcomes[1]),
            },
        }
    else:
        words = list(bell.mermin_combination(args.mermin))
        record = {
            "n": args.mermin,
            "word_count": len(words),
            "lhv_max": bell.lhv_max_dichotomic(words),
        }
    text = _dump(record)
    _write_out(text, args.out)
    sys.stdout.write(text)
    return 0


def _correlator_set(args: argparse.Namespace):
    family = args.family
    if family == "ghz-single":
        sets = [correlators.ghz_single_party_correlators(n) for n in (1, 2, 3, 4)]
    elif family == "ghz-pair":
        sets = [
            correlators.ghz_pair_correlators(n, m)
            for n in (1, 2, 3, 4)
            for m in (1, 2, 3, 4)
            if n < m
        ]
    elif family == "ghz-x-parity":
        sets = [correlators.ghz_x_parity_correlators(k) for k in (1, 2, 3, 4)]
    elif family == "mermin":
        ops = tuple(correlators.ghz_mermin_correlator(k) for k in range(1, 9))
        meta = tuple({"word_index": k} for k in range(1, 9))
        return correlators.CorrelatorSet(correlators.FAMILY_MERMIN, ops, meta)
    elif family == "stabilizer":
        return correlators.stabilizer_correlator_pair(args.word, args.pivot)
    elif family.startswith("singlet4-"):
        return correlators.singlet_correlators(family.rsplit("-", 1)[1])
    elif family == "ghz4x3-z":
        return correlators.ghz4x3_correlator_set("z")
    elif family == "ghz4x3-f":
        return correlators.ghz4x3_correlator_set("f")
    elif family == "bell-qudit":
        return bell.bell_correlator_set(args.d)
    else:  # pragma: no cover - argparse choices guard this
        raise ValueError(family)
    merged_ops = tuple(op for s in sets for op in s.operators)
    merged_meta = tuple(m for s in sets for m in s.metadata)
    return correlators.CorrelatorSet(sets[0].family, merged_ops, merged_meta)


def cmd_correlators(args: argparse.Namespace) -> int:
    cset = _correlator_set(args)
    text = _dump(cset.to_dict())
    _write_out(text, args.out)
    if args.json or not args.out:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcorr",
        description="quantum-correlation criteria, witnesses, and qudit Bell scans",
    )
    parser.add_argument("--out", default=None, help="write the JSON report to this path")
    parser.add_argument(
        "--tol",
        action="append",
        default=[],
        type=_parse_tol,
        metavar="NAME=VAL",
        help="override the tolerance of one claim (repeatable)",
    )
    parser.add_argument("--seed", type=int, default=7, help="seed recorded in run config")
    parser.add_argument("--json", action="store_true", help="print machine JSON to stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reproduce-all", help="run every claim in the registry")
    p.add_argument("--d-range", type=_parse_d_range, default=(2, 8))
    p.set_defaults(func=cmd_reproduce_all)

    p = sub.add_parser("witness", help="threshold report for one witness")
    p.add_argument("name", choices=witnesses.WITNESS_NAMES)
    p.add_argument("--p", type=float, default=None, help="evaluate at this noise fraction")
    p.add_argument("--gamma", type=float, default=None, help="PSD check at this gamma")
    p.add_argument("--tau", type=float, default=None, help="tau override (W_2II only)")
    p.add_argument("--word-index", type=int, default=1, help="word index for W_GHZ")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("bell", help="scan the qudit Bell quantity")
    p.add_argument("--d-range", type=_parse_d_range, required=True)
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("lhv", help="exhaustive deterministic maxima")
    p.add_argument("--d", type=int, default=None, help="bipartite qudit scenario")
    p.add_argument("--mermin", type=int, default=None, help="n-party Mermin-type words")
    p.set_defaults(func=cmd_lhv)

    p = sub.add_parser("correlators", help="export a correlator family as JSON")
    p.add_argument("family", choices=CORRELATOR_FAMILIES)
    p.add_argument("--d", type=int, default=4, help="dimension for bell-qudit")
    p.add_argument("--word", default="IIZXZ", help="stabilizer word (stabilizer family)")
    p.add_argument("--pivot", type=int, default=4, help="pivot site (stabilizer family)")
    p.set_defaults(func=cmd_correlators)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        # stdout consumer (e.g. head) closed the pipe early; not an error
        sys.stderr.close()
        return 0


if __name__ == "__main__":
    raise SystemExit(main())
