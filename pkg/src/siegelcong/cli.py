"""Command-line entry point: ``siegelcong <subcommand>``."""

from __future__ import annotations

import argparse
import json
import sys

from . import checks
from .errors import SiegelCongError
from .exact import bernoulli, format_rational
from .report import Status, to_csv, to_json, to_text

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--format", choices=("text", "json", "csv"), default=default("text"))
    parent.add_argument("--jobs", type=int, default=default(1))
    parent.add_argument("--cache", metavar="DIR", default=default(None))
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="siegelcong", parents=[_global_flags(False)],
                     description="Exact Siegel Eisenstein coefficients and mod-p congruence checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    flags = _global_flags(True)

    p = sub.add_parser("bernoulli", parents=[flags], help="print B_0..B_M")
    p.add_argument("--upto", type=int, required=True)

    p = sub.add_parser("eis", parents=[flags], help="Eisenstein series expansion")
    p.add_argument("--degree", type=int, choices=(1, 2), required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--det2-bound", type=int)
    p.add_argument("--out")

    p = sub.add_parser("theta", parents=[flags], help="lattice vector counts")
    p.add_argument("--lattice", choices=("leech",), required=True)
    p.add_argument("--max-norm", type=int, required=True)

    p = sub.add_parser("verify", parents=[flags], help="run a named check, or 'all'")
    p.add_argument("check_id")
    p.add_argument("--config")
    p.add_argument("--prime", type=int)
    p.add_argument("--det2-bound", type=int)
    p.add_argument("--t-bound", type=int)
    p.add_argument("--trace-bound", type=int)
    p.add_argument("--n", type=int)
    return parser


def _cmd_bernoulli(args) -> int:
    values = {m: bernoulli(m) for m in range(args.upto + 1)}
    if args.format == "json":
        print(json.dumps({str(m): format_rational(v) for m, v in values.items()}))
    else:
        for m, v in values.items():
            print(f"{m},{format_rational(v)}" if args.format == "csv" else f"B_{m} = {format_rational(v)}")
    return EXIT_OK


def _cmd_eis(args) -> int:
    from .cache import cached_expansion
    from .eisenstein import eis1, eis2

    if args.degree == 1:
        F = cached_expansion(args.cache, "eis", 1, args.weight, args.bound,
                             lambda: eis1(args.weight, args.bound))
    else:
        F = cached_expansion(args.cache, "eis", 2, args.weight, args.bound,
                             lambda: eis2(args.weight, args.bound, args.det2_bound),
                             det2_bound=args.det2_bound)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(F.to_json())
    elif args.format == "json":
        print(F.to_json())
    else:
        sep = "," if args.format == "csv" else "  "
        for T, v in F.items():
            key = T if isinstance(T, int) else "(%d,%d,%d)" % tuple(T)
            print(f"{key}{sep}{format_rational(v)}")
    return EXIT_OK


def _cmd_theta(args) -> int:
    from .lattices import leech_lattice, short_vector_counts

    counts = short_vector_counts(leech_lattice(), args.max_norm)
    if args.format == "json":
        print(json.dumps({str(m): c for m, c in counts.items()}))
    else:
        for m, c in counts.items():
            print(f"{m},{c}" if args.format == "csv" else f"norm {m}: {c}")
    return EXIT_OK


_FLAG_PARAMS = {"prime": "prime", "det2_bound": "det2_bound", "t_bound": "t_bound",
                "trace_bound": "trace_bound", "n": "n"}


def _emit(reports, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps([r.to_dict() for r in reports]) if len(reports) != 1 else to_json(reports[0]))
    elif fmt == "csv":
        sys.stdout.write(to_csv(reports))
    else:
        for r in reports:
            print(to_text(r))
        counts = {s: sum(r.status is s for r in reports) for s in Status}
        print("summary: " + ", ".join(f"{s.value} {n}" for s, n in counts.items()))


def _cmd_verify(args) -> int:
    if args.check_id.lower() == "all":
        config = checks.load_config(args.config) if args.config else checks.default_config()
        reports = checks.run_suite(config, jobs=args.jobs, cache_dir=args.cache)
    else:
        params = {}
        for attr, key in _FLAG_PARAMS.items():
            value = getattr(args, attr)
            if value is not None:
                params[key] = value
        defaults = checks.resolve_params(args.check_id.upper(), {})
        params = {k: v for k, v in params.items() if k in defaults}
        reports = [checks.run_check(args.check_id.upper(), params,
                                    checks.RunContext(cache_dir=args.cache))]
    _emit(reports, args.format)
    return checks.exit_code(reports)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"bernoulli": _cmd_bernoulli, "eis": _cmd_eis, "theta": _cmd_theta,
               "verify": _cmd_verify}[args.command]
    try:
        return handler(args)
    except SiegelCongError as exc:
        print(f"siegelcong: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"siegelcong: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
