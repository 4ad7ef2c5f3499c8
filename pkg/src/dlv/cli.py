"""Command-line front end.

Subcommands: ``verify`` (one n), ``sweep`` (an odd range), ``oracle``
(independent check suites), ``pair`` (ad-hoc expression evaluation).
Exit codes: 0 on full success, 1 on usage errors, 2 on any failed
instance or oracle failure.  All numbers print in full; JSON output is
byte-deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .constructions import build_tower
from .errors import DivisorLatticeError
from .expr import ExprError, parse_expr
from .lattice import format_class
from .oracle import (
    bilinearity_suite,
    enumeration_check,
    forcing_order_check,
    identity_suite,
    oracle_report_to_dict,
)
from .pipeline import (
    FAILED,
    SCHEMA_VERSION,
    VerificationReport,
    canonical_json,
    render_report_text,
    render_sweep_text,
    report_to_dict,
    sweep_to_dict,
    verify,
    verify_instance,
)
from .schema import schema_check_enabled, validate_document


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; usage errors here are 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _parse_odd_range(text: str) -> list[int]:
    parts = text.split("..")
    if len(parts) != 2:
        raise _UsageError(f"--n-range expects A..B, got {text!r}")
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise _UsageError(f"--n-range expects integers, got {text!r}") from None
    if lo % 2 == 0 or hi % 2 == 0 or lo < 3 or hi < lo:
        raise _UsageError(
            f"--n-range expects odd bounds with 3 <= A <= B, got {text!r}"
        )
    return list(range(lo, hi + 1, 2))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="dlv",
        description=(
            "Exact intersection-theory verifier: certifies self-intersection "
            "and section-count claims on a tower of declared surface lattices."
        ),
    )
    parser.add_argument("--version", action="version", version=f"dlv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p):
        p.add_argument(
            "--format", choices=("text", "json"), default="text", help="output format"
        )
        p.add_argument("--out", metavar="PATH", help="write the report to this file")

    def add_seed_flag(p):
        # verification is fully deterministic; the flag is accepted everywhere
        # so invocations stay uniform, but only the oracle command uses it
        p.add_argument("--seed", type=int, default=0, help="randomization seed")

    p_verify = sub.add_parser("verify", help="verify one odd n across its full m range")
    p_verify.add_argument("--n", type=int, required=True, help="odd integer >= 3")
    p_verify.add_argument("--m", type=int, help="verify a single instance m only")
    p_verify.add_argument(
        "--m-max", type=int, dest="m_max", help="override the certified threshold"
    )
    add_seed_flag(p_verify)
    add_output_flags(p_verify)

    p_sweep = sub.add_parser("sweep", help="verify every odd n in a range")
    p_sweep.add_argument(
        "--n-range", dest="n_range", required=True, metavar="A..B", help="odd range, step 2"
    )
    add_seed_flag(p_sweep)
    add_output_flags(p_sweep)

    p_oracle = sub.add_parser("oracle", help="run the independent check suites")
    p_oracle.add_argument(
        "--n-range", dest="n_range", default="3..99", metavar="A..B",
        help="odd n range for the identity suite (default 3..99)",
    )
    p_oracle.add_argument(
        "--m-max", dest="m_max", type=int, default=20,
        help="m per n for the identity suite (default 20)",
    )
    p_oracle.add_argument("--trials", type=int, default=10_000, help="randomized trials")
    add_seed_flag(p_oracle)
    p_oracle.add_argument(
        "--bound", type=int, default=10, help="coefficient bound for enumeration"
    )
    add_output_flags(p_oracle)

    p_pair = sub.add_parser("pair", help="evaluate a pairing expression")
    p_pair.add_argument("--n", type=int, required=True, help="odd integer >= 3")
    p_pair.add_argument(
        "--expr",
        required=True,
        help="expression over F, G, G_n, R, A, L, D and basis labels, "
        "e.g. \"(2*A - R).G_n\"",
    )
    add_output_flags(p_pair)
    return parser


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(document: dict, out_path: str | None) -> int:
    if schema_check_enabled():
        try:
            validate_document(document)
        except Exception as exc:  # jsonschema.ValidationError
            print(f"dlv: schema self-validation failed: {exc}", file=sys.stderr)
            return 2
    _emit(canonical_json(document), out_path)
    return 0


def _report_exit_code(reports) -> int:
    for report in reports:
        for instance in report.instances:
            if instance.status == FAILED:
                return 2
    return 0


def _cmd_verify(args) -> int:
    if args.m is not None:
        result = verify_instance(args.n, args.m)
        report = VerificationReport(
            n=args.n,
            m_max=args.m,
            instances=(result,),
            summary=f"single instance n={args.n}, m={args.m}: {result.status}",
        )
    else:
        report = verify(args.n, m_max=args.m_max)
    if args.format == "json":
        code = _emit_json(report_to_dict(report), args.out)
        if code:
            return code
    else:
        _emit(render_report_text(report), args.out)
    return _report_exit_code([report])


def _cmd_sweep(args) -> int:
    ns = _parse_odd_range(args.n_range)
    reports = []
    aborted = False
    for i, n in enumerate(ns, start=1):
        if args.format == "text":
            print(f"[{i}/{len(ns)}] n={n}", file=sys.stderr)
        report = verify(n)
        reports.append(report)
        if any(r.status == FAILED for r in report.instances):
            # a Failed instance means an internal contradiction: emit what
            # was collected and abort the rest of the sweep
            print(f"dlv: n={n} failed internal checks; aborting sweep", file=sys.stderr)
            aborted = True
            break
    if args.format == "json":
        code = _emit_json(sweep_to_dict(reports), args.out)
        if code:
            return code
    else:
        _emit(render_sweep_text(reports), args.out)
    return 2 if aborted else _report_exit_code(reports)


def _cmd_oracle(args) -> int:
    ns = _parse_odd_range(args.n_range)
    tower = build_tower(3)
    suites = [
        identity_suite(ns, m_max_per_n=args.m_max, seed=args.seed),
        bilinearity_suite(trials=args.trials, seed=args.seed),
        forcing_order_check(tower.base_blowup, tower.classes["L"], m_cap=5),
        enumeration_check(n=3, m_cap=4, coeff_bound=args.bound),
    ]
    failures_total = sum(len(s.failures) for s in suites)
    if args.format == "json":
        document = {
            "schema": "oracle-run",
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "reports": [oracle_report_to_dict(s) for s in suites],
            "failures_total": failures_total,
        }
        code = _emit_json(document, args.out)
        if code:
            return code
    else:
        lines = []
        for s in suites:
            state = "ok" if s.ok else f"{len(s.failures)} FAILURES"
            lines.append(f"suite {s.suite}: {s.trials} trials, {state} (seed {s.seed})")
            lines.extend(f"  {f}" for f in s.failures)
        lines.append(f"total failures: {failures_total}")
        _emit("\n".join(lines) + "\n", args.out)
    return 2 if failures_total else 0


def _cmd_pair(args) -> int:
    tower = build_tower(args.n)
    result = parse_expr(
        args.expr,
        tower.base,
        named=dict(tower.classes),
        models=tower.models,
    )
    if isinstance(result, int):
        kind, rendered = "pairing", result
    else:
        kind, rendered = "class", format_class(tower.model_of(result), result)
    if args.format == "json":
        document = {
            "schema": "pair-result",
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "n": args.n,
            "expr": args.expr,
            "kind": kind,
            "value": rendered,
        }
        return _emit_json(document, args.out)
    _emit(f"{rendered}\n", args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "oracle":
            return _cmd_oracle(args)
        if args.command == "pair":
            return _cmd_pair(args)
        raise _UsageError(f"unknown command {args.command!r}")
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except ExprError as exc:
        print(f"dlv: expression error: {exc}", file=sys.stderr)
        return 1
    except DivisorLatticeError as exc:
        parser.print_usage(sys.stderr)
        print(f"dlv: error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
