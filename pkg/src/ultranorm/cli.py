"""Command line front end.

Every subcommand reads an optional JSON config, runs a focused set of
checks (or, for ``verify``, the config's full suite list), and either
writes a report directory or prints the payload to stdout.  Exit codes:
0 all checks passed, 1 at least one failed, 2 usage or config error,
3 at least one inconclusive check with no failures.
"""

import argparse
import sys

from .config import ExperimentConfig, parse_config
from .errors import ConfigError
from .report import VerificationReport, summary_csv, table_csv, write_report
from .suites import REGISTRY, check_seminorm_table, run_named, run_suites

_TOOL_CHECKS = {
    "assoc": ("seq_associated",),
    "check-seq": tuple(name for suite, name, _, _ in REGISTRY
                       if suite == "sequence_checks"),
    "regularize": ("seq_regularization", "proj_regularization"),
    "weights": tuple(name for suite, name, _, _ in REGISTRY
                     if suite == "weight_checks"),
    "stft": tuple(name for suite, name, _, _ in REGISTRY
                  if suite == "transform_checks"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH",
                        help="JSON experiment config (defaults apply if "
                             "omitted)")
    common.add_argument("--out", metavar="DIR",
                        help="write the report into this directory; "
                             "without it the payload goes to stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--plot", action="store_true",
                        help="also render SVG plots for tabular checks")
    common.add_argument("--tol", action="append", default=[],
                        metavar="NAME=VAL",
                        help="override a named tolerance (repeatable)")
    common.add_argument("--threads", type=int, default=1, metavar="N")
    common.add_argument("--seed", type=int, metavar="N",
                        help="override the config seed")

    p = argparse.ArgumentParser(
        prog="ultranorm",
        description="certificates for weight sequences, weight systems, "
                    "and the short-time Fourier transform")
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "assoc": "tabulate the associated function M(t) of the sequence M",
        "check-seq": "run the weight-sequence certificate suite",
        "regularize": "regularize the configured r sequences and certify",
        "weights": "run the weight-system certificate suite",
        "seminorm": "survey inductive and projective seminorms of the family",
        "stft": "run the transform identity checks",
        "verify": "run the config's full suite list",
    }
    for cmd in ("assoc", "check-seq", "regularize", "weights", "seminorm",
                "stft", "verify"):
        sub.add_parser(cmd, parents=[common], help=helps[cmd])
    rp = sub.add_parser("report", parents=[common],
                        help="re-render an existing JSON report")
    rp.add_argument("path", help="path to a previously written report.json")
    return p


def _load_config(args):
    cfg = parse_config(args.config) if args.config else ExperimentConfig({})
    if args.tol:
        cfg.override_tolerances(args.tol)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.threads < 1:
        raise ConfigError("--threads must be at least 1")
    return cfg


def _emit(report, args):
    if args.out:
        paths = write_report(report, args.out, fmt=args.format,
                             plot=args.plot)
        for c in report.checks:
            print(f"{c.status.upper():13s} {c.name}")
        s = report.summary
        print(f"overall: {s['overall']} ({s['pass']} pass, {s['fail']} fail, "
              f"{s['inconclusive']} inconclusive)")
        for path in paths:
            print(f"wrote {path}")
    elif args.format == "json":
        sys.stdout.write(report.to_json().decode())
    else:
        # csv to stdout: the single-table case prints the table itself,
        # anything larger prints the summary rows
        tabular = [c for c in report.checks if c.table]
        if len(report.checks) == 1 and tabular:
            print(table_csv(report.checks[0]), end="")
        else:
            print(summary_csv(report), end="")
    return report.exit_code


def _cmd_report(args):
    try:
        with open(args.path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read report: {exc}") from exc
    try:
        report = VerificationReport.from_json(text)
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"not a valid report file: {exc}") from exc
    return _emit(report, args)


def _dispatch(args):
    if args.command == "report":
        return _cmd_report(args)
    cfg = _load_config(args)
    if args.command == "verify":
        report = run_suites(cfg, threads=args.threads)
    elif args.command == "seminorm":
        report = run_named(cfg, (), threads=args.threads,
                           extra=(("seminorm_table", check_seminorm_table),))
    else:
        report = run_named(cfg, _TOOL_CHECKS[args.command],
                           threads=args.threads)
    return _emit(report, args)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
