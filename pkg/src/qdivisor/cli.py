"""Command-line driver: ``qdivisor list | verify | sweep | probe``.

Exit codes: 0 every check passed, 1 an identity check failed, 2 schema or
usage error, 3 pole, domain or convergence error.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .errors import ConvergenceError, DomainError, PoleError, QDivisorError, SchemaError
from .numeric.series import DEFAULT_K, DEFAULT_PREC
from .registry import (REDUCTIONS, Bounds, IdentityInstance, entries, get_entry, probe_noninteger,
                       random_instance, random_reduction_params, reduction_check, verify)
from .report import ReportDocument, VerificationReport

EXIT_OK, EXIT_FAIL, EXIT_SCHEMA, EXIT_MATH = 0, 1, 2, 3
SYMBOL_FLAGS = ("q", "x", "z", "t", "y", "w")
PROBE_CHOICES = ("PB1.11", "PC1.12", "N2.16")


class UsageError(SchemaError):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems with the schema exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_SCHEMA, f"{self.prog}: error: {message}\n")


# -- argument handling --------------------------------------------------------

def parse_assignments(items) -> dict:
    """``["n=2,m=1", "q=1/2"]`` -> ``{"n": "2", "m": "1", "q": "1/2"}``."""
    out = {}
    for item in items or ():
        for part in item.split(","):
            if not part.strip():
                continue
            key, sep, val = part.partition("=")
            if not sep or not key.strip():
                raise UsageError(f"expected key=value, got {part!r}")
            out[key.strip()] = val.strip()
    return out


def _params(args) -> dict:
    params = parse_assignments(args.set)
    for sym in SYMBOL_FLAGS:
        val = getattr(args, sym, None)
        if val is not None:
            params[sym] = val
    return params


def _config(args) -> dict:
    keep = ("command", "id", "set", "seed", "trials", "bounds", "prec", "K", "strict_printed", "section", "a",
            "numeric") + SYMBOL_FLAGS
    return {k: v for k, v in sorted(vars(args).items()) if k in keep and v not in (None, False, [])}


def _emit(doc: ReportDocument, args) -> None:
    text = doc.to_csv() if args.format == "csv" else doc.to_json(timing=not args.no_timing)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _exit_code(reports) -> int:
    if any(r.status == "fail" for r in reports):
        return EXIT_FAIL
    if any(r.status == "error" for r in reports):
        return EXIT_MATH
    return EXIT_OK


# -- workers (module level so that process pools can pickle them) ---------------

def _error_report(id, exc) -> dict:
    return VerificationReport(id=id, instance={}, backend="", status="error",
                              note=f"{type(exc).__name__}: {exc}").to_dict()


def run_trial(task) -> dict:
    """One sweep unit, returned in serialized form."""
    kind, id, seed, trial, bounds, printed, prec, K = task
    try:
        if kind == "reduction":
            params = random_reduction_params(id, seed, bounds, trial=trial)
            rep = reduction_check(id, params)
        else:
            inst = random_instance(id, seed, bounds, trial=trial)
            rep = verify(id, inst, printed=printed, prec=prec, K=K)
    except (PoleError, DomainError, ConvergenceError) as exc:
        return _error_report(id, exc)
    return rep.to_dict()


def _run_tasks(tasks, jobs: int) -> list:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(run_trial, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        rows = [run_trial(t) for t in tasks]
    return [VerificationReport.from_dict(r) for r in rows]


# -- subcommands ----------------------------------------------------------------------

def cmd_list(args) -> int:
    rows = entries(args.section, kernel=args.kernel)
    if args.format == "json":
        out = [{"id": e.id, "section": e.section, "backend": e.backend, "params": list(e.params()),
                "summary": e.summary} for e in rows]
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    else:
        for e in rows:
            sys.stdout.write(f"{e.id:<8} {e.backend:<10} ({', '.join(e.params())})  {e.summary}\n")
        if args.reductions:
            for r in REDUCTIONS.values():
                sys.stdout.write(f"{r.name:<16} {r.mapping}\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = IdentityInstance.from_params(args.id, _params(args))
    backend = "numeric" if args.numeric else None
    rep = verify(args.id, inst, printed=args.strict_printed, backend=backend, prec=args.prec, K=args.K)
    doc = ReportDocument(_config(args), [rep], __version__)
    _emit(doc, args)
    return _exit_code([rep])


def _sweep_ids(id: str, kernel: bool):
    if id == "all":
        ids = [e.id for e in entries(kernel=kernel)]
        return [("identity", i) for i in ids] + [("reduction", r) for r in REDUCTIONS]
    if id in REDUCTIONS:
        return [("reduction", id)]
    get_entry(id)
    return [("identity", id)]


def cmd_sweep(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    bounds = Bounds.parse(args.bounds)
    tasks = [(kind, id, args.seed, trial, bounds, args.strict_printed, args.prec, args.K)
             for kind, id in _sweep_ids(args.id, args.kernel) for trial in range(args.trials)]
    reports = _run_tasks(tasks, args.jobs)
    doc = ReportDocument(_config(args), reports, __version__)
    _emit(doc, args)
    return _exit_code(reports)


def cmd_probe(args) -> int:
    params = _params(args)
    grid = [a for a in (args.a or "").split(",") if a.strip()]
    if not grid:
        raise UsageError("probe needs --a with one or more real orders")
    reports = []
    for a in grid:
        inst = IdentityInstance.from_params(args.id, {**params, "a": a})
        reports.append(probe_noninteger(args.id, inst, prec=args.prec, K=args.K))
    doc = ReportDocument({**_config(args), "exploratory": True}, reports, __version__)
    _emit(doc, args)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------------

def _output_flags(p):
    p.add_argument("--format", choices=("json", "csv"), default="json", help="report format (default json)")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed times (byte-stable output)")


def _eval_flags(p):
    p.add_argument("--prec", type=int, default=DEFAULT_PREC, help="working precision in bits for reals")
    p.add_argument("--K", type=int, default=DEFAULT_K, help="initial truncation for infinite series")


def _param_flags(p):
    p.add_argument("--set", action="append", metavar="k=v,...",
                   help="parameters, e.g. n=3,m=2,q=1/2,m_vec=1:0:2 (repeatable)")
    for sym in SYMBOL_FLAGS:
        p.add_argument(f"--{sym}", metavar="VALUE", help=f"shorthand for --set {sym}=VALUE")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qdivisor", description="Verify q-series divisor identities exactly or numerically.")
    parser.add_argument("--version", action="version", version=f"qdivisor {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("list", help="list registry entries")
    p.add_argument("--section", help="only entries from this section number")
    p.add_argument("--kernel", action="store_true", help="include the operator-kernel facts")
    p.add_argument("--reductions", action="store_true", help="also list the registered reductions")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("verify", help="verify one identity on explicit parameters")
    p.add_argument("--id", required=True)
    _param_flags(p)
    p.add_argument("--strict-printed", action="store_true",
                   help="use printed forms where an erratum exists; documented mismatches become xfail")
    p.add_argument("--numeric", action="store_true", help="evaluate an exact identity in floating point")
    _eval_flags(p)
    _output_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="verify random instances")
    p.add_argument("--id", default="all", help="registry id, reduction name, or 'all' (default)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--bounds", help="size caps, e.g. n=6,k=3,entry=3")
    p.add_argument("--kernel", action="store_true", help="with --id all, include the operator-kernel facts")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (output does not depend on this)")
    p.add_argument("--strict-printed", action="store_true")
    _eval_flags(p)
    _output_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("probe", help="exploratory real-order evaluation (no verdict)")
    p.add_argument("--id", required=True, choices=PROBE_CHOICES)
    p.add_argument("--a", help="comma-separated real orders, e.g. 1/2,3")
    _param_flags(p)
    _eval_flags(p)
    _output_flags(p)
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"qdivisor: schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (PoleError, DomainError, ConvergenceError) as exc:
        print(f"qdivisor: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except QDivisorError as exc:
        print(f"qdivisor: error: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
