"""Command line runner for the named checks.

Results print to stdout as JSON lines, one object per check:
{check_id, status, witnesses, elapsed_ms}.  Exit code 0 when every
selected check passes, 1 on any failure or internal error, 2 on usage
problems such as unknown check ids.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .checks import RunOptions, UnknownCheck, run_checks


def _parse_factors(text: str) -> tuple[int, ...]:
    try:
        factors = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError("factors must be a comma list of counts")
    if not factors:
        raise argparse.ArgumentTypeError("factors must be a comma list of counts")
    return factors


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ppav-lab",
        description="Exact checks over polarized lattice constructions.")
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser("run", help="run named checks (default: all)")
    run_p.add_argument("--check", action="append", dest="checks", metavar="ID",
                       help="check id to run; repeatable")
    run_p.add_argument("--gmax", type=int, default=6,
                       help="largest genus for the per-genus sweeps")
    run_p.add_argument("--factors", type=_parse_factors, default=None,
                       metavar="a,b,..", help="factor genera for standard-build")
    run_p.add_argument("--ydim", type=int, default=None,
                       help="matching torus dimension for standard-build")
    run_p.add_argument("--seed", type=int, default=0,
                       help="seed for the randomized property checks")
    run_p.add_argument("--json", dest="json_path", default=None,
                       help="also write the JSON lines to this file")
    run_p.add_argument("--list", action="store_true", dest="list_checks",
                       help="list registered check ids and exit")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.list_checks:
        from .checks import CHECKS
        for check_id in CHECKS:
            print(check_id)
        return 0
    options = RunOptions(gmax=args.gmax, factors=args.factors,
                         ydim=args.ydim, seed=args.seed)
    try:
        results = run_checks(args.checks, options)
    except UnknownCheck as exc:
        print(str(exc), file=sys.stderr)
        return 2
    lines = [json.dumps(dataclasses.asdict(r)) for r in results]
    for line in lines:
        print(line)
    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")
    return 0 if all(r.status == "pass" for r in results) else 1


if __name__ == "__main__":
    raise SystemExit(main())
