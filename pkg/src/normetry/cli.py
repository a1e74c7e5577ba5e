"""Command-line orchestration.

Subcommands:
  verify   run checkers over seeded random trials plus the witness table
  falsify  run a (possibly mutated) campaign and emit violation certificates
  replay   recompute a certificate's margin and compare
  gen      emit one sample matrix from a generator spec

Exit codes: 0 success, 1 violation/mismatch, 2 usage or config error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone

from . import checks, falsify, serialize
from .errors import BadSpec, ConvergenceFailure, NormetryError, UnknownCheck
from .rand import GenSpec, KINDS, generate

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

DEFAULT_DIMS = (1, 2, 3, 4, 5, 6)
DEFAULT_TRIALS = 500
DEFAULT_TOL = 1e-9


def _default_seed() -> int:
    return int(os.environ.get("NORMETRY_SEED", "0"))


def _parse_dims(text: str) -> list[int]:
    dims = [int(part) for part in text.split(",") if part.strip()]
    if not dims or any(d < 1 for d in dims):
        raise BadSpec(f"invalid dims {text!r}")
    return dims


def _parse_checks(text: str) -> list[str]:
    if text == "all":
        return list(checks.CHECK_IDS)
    ids = [part.strip() for part in text.split(",") if part.strip()]
    for cid in ids:
        if cid not in checks.CHECK_IDS:
            raise UnknownCheck(cid)
    return ids


def _header(config: dict) -> dict:
    return {
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "tool_version": falsify.TOOL_VERSION,
        "config": config,
    }


def _write_report(report: dict, path: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=1)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _csv_summary(campaigns: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["check", "mutation", "trials", "violations", "min_margin"])
    for c in campaigns:
        writer.writerow(
            [c["check"], c.get("mutation") or "", c["trials"],
             len(c["violations"]), repr(c["min_margin"])]
        )
    return buf.getvalue()


def cmd_verify(args) -> int:
    check_ids = _parse_checks(args.checks)
    dims = _parse_dims(args.dims)
    config = {
        "command": "verify",
        "checks": check_ids,
        "dims": dims,
        "trials": args.trials,
        "seed": args.seed,
        "tol": args.tol,
    }
    from .witnesses import witnesses_for

    witness_rows = []
    all_pass = True
    for w in witnesses_for(check_ids):
        verdict = w.run()
        ok = verdict.passed and (not w.equality or abs(verdict.min_margin) <= args.tol)
        all_pass &= ok
        witness_rows.append(
            {
                "check": w.check_id,
                "description": w.description,
                "equality": w.equality,
                "min_margin": verdict.min_margin,
                "pass": ok,
            }
        )
    campaigns = []
    verdict_rows = []
    for cid in check_ids:
        report = falsify.run_campaign(
            cid, mutation=None, trials=args.trials, dims=dims,
            root_seed=args.seed, tol=args.tol, keep_verdicts=True,
        )
        all_pass &= not report.violations
        campaigns.append(
            {
                "check": cid,
                "mutation": None,
                "trials": report.trials,
                "min_margin": report.min_margin,
                "violations": report.violations,
            }
        )
        verdict_rows.extend(report.verdicts)
    out = {
        "header": _header(config),
        "witnesses": witness_rows,
        "campaigns": campaigns,
        "verdicts": verdict_rows,
    }
    if args.format == "csv-summary":
        text = _csv_summary(campaigns)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        _write_report(out, args.out)
    return EXIT_OK if all_pass else EXIT_VIOLATION


def cmd_falsify(args) -> int:
    if args.check not in checks.CHECK_IDS:
        raise UnknownCheck(args.check)
    dims = _parse_dims(args.dims)
    mutation = args.mutate
    if mutation is not None and mutation not in falsify.MUTATIONS:
        raise BadSpec(f"unknown mutation {mutation!r}")
    if mutation is not None and args.check not in falsify.MUTATIONS[mutation]["targets"]:
        raise BadSpec(f"mutation {mutation!r} does not apply to {args.check}")
    config = {
        "command": "falsify",
        "check": args.check,
        "mutation": mutation,
        "dims": dims,
        "trials": args.trials,
        "seed": args.seed,
        "tol": args.tol,
    }
    report = falsify.run_campaign(
        args.check, mutation=mutation, trials=args.trials, dims=dims,
        root_seed=args.seed, tol=args.tol,
    )
    if args.cert_dir:
        os.makedirs(args.cert_dir, exist_ok=True)
        for i, cert in enumerate(report.violations):
            path = os.path.join(args.cert_dir, f"cert-{args.check}-{i}.json")
            with open(path, "w") as fh:
                json.dump(cert, fh, sort_keys=True, indent=1)
    out = {
        "header": _header(config),
        "campaign": {
            "check": report.check_id,
            "mutation": report.mutation,
            "expectation": report.expectation,
            "trials": report.trials,
            "min_margin": report.min_margin,
            "violations": report.violations,
            "wall_time": report.wall_time,
        },
    }
    _write_report(out, args.out)
    if report.expectation == "must-violate":
        return EXIT_OK if report.violations else EXIT_VIOLATION
    if report.expectation == "exploratory":
        return EXIT_OK
    return EXIT_OK if not report.violations else EXIT_VIOLATION


def cmd_replay(args) -> int:
    try:
        with open(args.certificate) as fh:
            cert = json.load(fh)
        stored = float(cert["margin"])
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        print(f"error: cannot parse certificate: {exc}", file=sys.stderr)
        return EXIT_USAGE
    verdict = falsify.replay_certificate(cert)
    recomputed = verdict.min_margin
    ok = abs(recomputed - stored) <= 1e-12 * max(1.0, abs(stored))
    print(
        f"replay {cert['case']['check_id']}: stored={stored!r} "
        f"recomputed={recomputed!r} {'match' if ok else 'MISMATCH'}"
    )
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_gen(args) -> int:
    if args.kind not in KINDS:
        raise BadSpec(f"unknown kind {args.kind!r}; choose from {KINDS}")
    m = generate(GenSpec(kind=args.kind, n=args.dim, seed=args.seed, scale=args.scale))
    payload = serialize.mat_to_json(m)
    text = json.dumps(payload, sort_keys=True, indent=1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normetry",
        description="Verify and falsify symmetric-norm matrix inequalities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run checkers over seeded random trials")
    p.add_argument("--checks", default="all")
    p.add_argument("--dims", default=",".join(map(str, DEFAULT_DIMS)))
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv-summary"), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("falsify", help="run a mutation campaign")
    p.add_argument("--check", required=True)
    p.add_argument("--mutate", default=None)
    p.add_argument("--dims", default=",".join(map(str, DEFAULT_DIMS)))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out", default=None)
    p.add_argument("--cert-dir", default=None)
    p.set_defaults(func=cmd_falsify)

    p = sub.add_parser("replay", help="recompute a certificate's margin")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("gen", help="emit a sample matrix")
    p.add_argument("--kind", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ConvergenceFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (UnknownCheck, BadSpec) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NormetryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
