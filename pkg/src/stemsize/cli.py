"""Command-line surface: batch computation, verification suites, and table
emission.

Exit codes: 0 success, 1 validation error, 2 verification-suite failure,
3 resource-guard trip.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import algebra, asymptotics, ehp, presets, torsion, verify
from .dsl import DslError
from .series import SeriesError, TruncatedSeries

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_VERIFY_FAILED = 2
EXIT_RESOURCE = 3


class CliError(ValueError):
    """A validation problem in the command line or its input files."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1, not argparse's default 2
        raise CliError(message)


def parse_points(expr: str) -> list[int]:
    """Point lists: '2^6..2^16' (per-exponent powers), '10..20' (unit step),
    or comma-separated integers, each term allowing base^exp."""

    def term(s: str) -> int:
        s = s.strip()
        if "^" in s:
            base, _, exp = s.partition("^")
            return int(base) ** int(exp)
        return int(s)

    try:
        if ".." in expr:
            lo_s, _, hi_s = expr.partition("..")
            if "^" in lo_s and "^" in hi_s:
                base = int(lo_s.partition("^")[0])
                base2 = int(hi_s.partition("^")[0])
                if base != base2:
                    raise CliError(f"mismatched bases in point range {expr!r}")
                e0 = int(lo_s.partition("^")[2])
                e1 = int(hi_s.partition("^")[2])
                if e1 < e0:
                    raise CliError(f"empty point range {expr!r}")
                return [base**e for e in range(e0, e1 + 1)]
            lo, hi = term(lo_s), term(hi_s)
            if hi < lo:
                raise CliError(f"empty point range {expr!r}")
            if hi - lo > 1_000_000:
                raise CliError(f"point range {expr!r} is too large")
            return list(range(lo, hi + 1))
        return [term(s) for s in expr.split(",") if s.strip()]
    except ValueError as exc:
        raise CliError(f"bad point expression {expr!r}: {exc}") from None


def _load_curve(arg: str) -> torsion.VanishingCurve:
    if arg == "linear":
        return torsion.LinearCurve()
    if arg == "sqrt":
        return torsion.PowerLawCurve(0.5, 1.0)
    if arg.startswith("table:"):
        path = arg[len("table:"):]
        try:
            with open(path, encoding="utf-8") as fh:
                values = tuple(int(line) for line in fh if line.strip())
        except OSError as exc:
            raise CliError(f"cannot read curve table {path!r}: {exc}") from None
        return torsion.TableCurve(values)
    raise CliError(f"unknown curve {arg!r}: expected linear, sqrt, or table:<path>")


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _emit_series(series: TruncatedSeries, fmt: str, out: str | None) -> None:
    if fmt == "json":
        _emit(series.to_json(), out)
    else:
        _emit(_csv_text(series.csv_rows()), out)


def _cmd_hilbert(args) -> int:
    try:
        with open(args.spec, encoding="utf-8") as fh:
            spec = algebra.parse_spec(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read spec {args.spec!r}: {exc}") from None
    fn = algebra.hilbert_cumulative if args.cumulative else algebra.hilbert
    _emit_series(fn(spec, args.max_degree), args.format, args.out)
    return EXIT_OK


def _cmd_preset(args) -> int:
    spec = presets.preset(
        args.name,
        args.p,
        h=args.h,
        k=args.h if args.name == "s_k" else None,
        drop_q0=args.drop_q0,
        simplify_odd=args.simplify_odd,
    )
    fn = algebra.hilbert_cumulative if args.cumulative else algebra.hilbert
    _emit_series(fn(spec, args.max_degree), args.format, args.out)
    return EXIT_OK


def _cmd_torsion(args) -> int:
    curve = _load_curve(args.curve)
    report = torsion.stable_torsion_bound(args.p, args.n, curve)
    if args.format == "json":
        _emit(report.to_json(), args.out)
    else:
        rows = [
            ("p", "n", "exact_sum", "closed_form", "curve"),
            (
                str(report.p),
                str(report.n),
                str(report.exact_sum),
                repr(report.closed_form),
                report.curve["model"],
            ),
        ]
        _emit(_csv_text(rows), args.out)
    return EXIT_OK


def _cmd_ehp(args) -> int:
    if args.max_dim is not None:
        seqs = ehp.enumerate_I(args.p, args.excess, args.max_dim)
        if args.format == "json":
            _emit(json.dumps([J.to_json_obj() for J in seqs], indent=2), args.out)
        else:
            rows = [("entries", "dim")]
            rows += [(repr(list(J.entries)), str(J.dim)) for J in seqs]
            _emit(_csv_text(rows), args.out)
        return EXIT_OK
    series = ehp.a_series(args.p, args.excess, args.max_degree)
    _emit_series(series, args.format, args.out)
    return EXIT_OK


def _cmd_asymptotics(args) -> int:
    if args.points is not None:
        if args.name is None:
            raise CliError("ratio profiles need --name <preset>")
        profile = asymptotics.ratio_profile(
            args.name,
            args.p,
            args.exponent,
            parse_points(args.points),
            h=args.h,
            k=args.h if args.name == "s_k" else None,
            drop_q0=args.drop_q0,
            simplify_odd=args.simplify_odd,
        )
        if args.format == "json":
            _emit(json.dumps(profile.to_json_obj(), indent=2), args.out)
        else:
            _emit(_csv_text(profile.csv_rows()), args.out)
        return EXIT_OK
    if args.name in asymptotics.BRACKET_MODELS:
        if args.n is None:
            raise CliError("bracketing checks need --n <scale m>")
        if args.lower_ceiling is not None:
            report = asymptotics.bracketing_check(
                args.p,
                args.n,
                args.name,
                lower_ceiling=args.lower_ceiling,
                require_lower=True,
            )
        else:
            report = asymptotics.bracketing_check(args.p, args.n, args.name)
        if args.format == "json":
            _emit(json.dumps(report.to_json_obj(), indent=2), args.out)
        else:
            rows = [("check", "ok", "detail")]
            rows += [(c.name, str(c.ok), c.detail) for c in report.checks]
            _emit(_csv_text(rows), args.out)
        return EXIT_OK if report.ok else EXIT_VERIFY_FAILED
    consts = asymptotics.constants(args.p)
    if args.format == "json":
        _emit(json.dumps(consts.to_json_obj(), indent=2), args.out)
    else:
        rows = [("p", "K1", "K2", "K3"),
                (str(consts.p), repr(consts.k1), repr(consts.k2), repr(consts.k3))]
        _emit(_csv_text(rows), args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    results = verify.run(args.suite, args.seed)
    _emit(verify.format_report(results, args.suite, args.seed), args.out)
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY_FAILED


def build_parser() -> _Parser:
    parser = _Parser(prog="stemsize", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, prime=True, degree=False):
        if prime:
            p.add_argument("--p", type=int, default=2, help="prime p")
        if degree:
            p.add_argument("--max-degree", type=int, required=True,
                           help="series truncation N")
        p.add_argument("--format", choices=("csv", "json"), default="json")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("hilbert", help="Hilbert series of a spec file")
    p.add_argument("--spec", required=True, help="path to a spec in the gen DSL")
    p.add_argument("--cumulative", action="store_true")
    common(p, prime=False, degree=True)
    p.set_defaults(fn=_cmd_hilbert)

    p = sub.add_parser("preset", help="Hilbert series of a named preset")
    p.add_argument("--name", required=True, choices=presets.PRESET_NAMES)
    p.add_argument("--h", type=int, default=None,
                   help="family parameter (h, or k for s_k)")
    p.add_argument("--drop-q0", action="store_true")
    p.add_argument("--simplify-odd", action="store_true")
    p.add_argument("--cumulative", action="store_true")
    common(p, degree=True)
    p.set_defaults(fn=_cmd_preset)

    p = sub.add_parser("torsion", help="stable torsion-exponent bound")
    p.add_argument("--n", type=int, required=True, help="stem degree")
    p.add_argument("--curve", default="linear",
                   help="vanishing curve: linear | sqrt | table:<path>")
    common(p)
    p.set_defaults(fn=_cmd_torsion)

    p = sub.add_parser("ehp", help="completely unadmissible sequences / A(n;t)")
    p.add_argument("--excess", type=int, required=True, help="excess n")
    p.add_argument("--max-dim", type=int, default=None,
                   help="list sequences up to this dimension")
    p.add_argument("--max-degree", type=int, default=40,
                   help="series truncation when --max-dim is absent")
    common(p)
    p.set_defaults(fn=_cmd_ehp)

    p = sub.add_parser("asymptotics",
                       help="growth constants, ratio profiles, bracketing checks")
    p.add_argument("--name", default=None,
                   help="preset for --points profiles, or a bracketing model")
    p.add_argument("--points", default=None,
                   help="sample points, e.g. 2^6..2^16 or 100,200,400")
    p.add_argument("--exponent", type=int, choices=(2, 3), default=3)
    p.add_argument("--n", type=int, default=None, help="bracketing scale m")
    p.add_argument("--lower-ceiling", type=int, default=None,
                   help="force the exact lower check up to this rank budget")
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--drop-q0", action="store_true")
    p.add_argument("--simplify-odd", action="store_true")
    common(p)
    p.set_defaults(fn=_cmd_asymptotics)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", default="all",
                   help="suite name or 'all' (%s)" % ", ".join(sorted(verify.SUITES)))
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    common(p, prime=False)
    p.set_defaults(fn=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except asymptotics.ResourceLimitError as exc:
        print(f"stemsize: resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (
        CliError,
        DslError,
        SeriesError,
        algebra.AlgebraError,
        presets.PresetError,
        torsion.TorsionError,
        ValueError,
    ) as exc:
        print(f"stemsize: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
