"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 domain error, 3 a
``verify`` run that found failures.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import verify as verify_mod
from .arith import format_rational, parse_rational
from .closed_forms import SumSpec, brute_sum, sum_linear, sum_power
from .core import SeqKind, make_params, term_by_binet, term_by_recurrence
from .errors import DenominatorVanishes, HoradamError
from .genfunc import gf_power, series_coeffs

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3

_SIGNED_VALUE = re.compile(r"^-\d+(/\d+)?$")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational_arg(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_arg(text):
    if not re.fullmatch(r"\s*[+-]?\d+\s*", text):
        pos = next((i for i, ch in enumerate(text) if not (ch.isdigit() or (i == 0 and ch in "+-"))), 0)
        raise argparse.ArgumentTypeError(f"invalid integer {text!r} at position {pos}")
    return int(text)


def _family_options(sub):
    sub.add_argument("--kind", choices=["u", "v", "w"], default="w",
                     help="u and v ignore -a/-b (they use (0, 1) and (2, p))")
    sub.add_argument("-a", type=_rational_arg, default=parse_rational("0"), help="w_0")
    sub.add_argument("-b", type=_rational_arg, default=parse_rational("1"), help="w_1")
    sub.add_argument("-p", type=_rational_arg, required=True)
    sub.add_argument("-q", type=_rational_arg, required=True)
    sub.add_argument("--output", choices=["plain", "json"], default="plain")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="horadam", description="Exact Horadam/Lucas sums and generating functions.")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    term = subs.add_parser("term", help="evaluate the n-th term (any integer n)")
    _family_options(term)
    term.add_argument("--n", type=_int_arg, required=True, help="index")
    term.add_argument("--method", choices=["recurrence", "binet"], default="recurrence")

    total = subs.add_parser("sum", help="sum_{j=0}^{k} t_{rj+s}^n z^j in closed form")
    _family_options(total)
    total.add_argument("--n", type=_int_arg, default=1, help="power")
    total.add_argument("--r", type=_int_arg, default=1)
    total.add_argument("--s", type=_int_arg, default=0)
    total.add_argument("--k", type=_int_arg, required=True)
    total.add_argument("--z", type=_rational_arg, default=parse_rational("1"))

    gf = subs.add_parser("gf", help="generating function sum_{j>=0} t_{rj+s}^n z^j")
    _family_options(gf)
    gf.add_argument("--n", type=_int_arg, default=1)
    gf.add_argument("--r", type=_int_arg, default=1)
    gf.add_argument("--s", type=_int_arg, default=0)
    gf.add_argument("--no-reduce", action="store_true", help="keep the combined partial-fraction form")

    series = subs.add_parser("series", help="first m series coefficients of the generating function")
    _family_options(series)
    series.add_argument("--n", type=_int_arg, default=1)
    series.add_argument("--r", type=_int_arg, default=1)
    series.add_argument("--s", type=_int_arg, default=0)
    series.add_argument("--m", type=_int_arg, default=10)

    check = subs.add_parser("verify", help="check every closed form against direct summation")
    check.add_argument("--scale", choices=sorted(verify_mod.SCALES), default="small")
    check.add_argument("--output", choices=["plain", "json"], default="plain")
    return parser


def _normalize_argv(argv):
    # argparse reads "-2/3" as an option flag; glue negative rationals to their option
    out = []
    for tok in argv:
        if out and out[-1].startswith("-") and "=" not in out[-1] and _SIGNED_VALUE.match(tok) \
                and out[-1] not in ("--no-reduce",):
            out[-1] = f"{out[-1]}={tok}" if out[-1].startswith("--") else out[-1] + tok
        else:
            out.append(tok)
    return out


def _family(args):
    kind = SeqKind.coerce(args.kind)
    params = make_params(args.a, args.b, args.p, args.q).with_kind(kind)
    return params, kind


def _emit(args, plain, payload):
    if args.output == "json":
        print(json.dumps(payload))
    else:
        print(plain)


def _cmd_term(args):
    params, kind = _family(args)
    fn = term_by_binet if args.method == "binet" else term_by_recurrence
    value = format_rational(fn(params, kind, args.n))
    _emit(args, value, {"value": value})
    return EXIT_OK


def _cmd_sum(args):
    params, kind = _family(args)
    spec = SumSpec(kind, args.n, args.r, args.s, args.k, args.z)
    op = sum_linear if spec.n == 1 else sum_power
    try:
        value = op(params, spec)
    except DenominatorVanishes as exc:
        if os.environ.get("HORADAM_NO_FALLBACK") == "1":
            raise
        print(f"warning: degenerate denominator ({exc}); falling back to direct summation",
              file=sys.stderr)
        value = brute_sum(params, spec)
    text = format_rational(value)
    _emit(args, text, {"value": text})
    return EXIT_OK


def _cmd_gf(args):
    params, kind = _family(args)
    rf = gf_power(params, kind, args.n, args.r, args.s, reduce=not args.no_reduce)
    _emit(args, str(rf), json.loads(rf.to_json()))
    return EXIT_OK


def _cmd_series(args):
    params, kind = _family(args)
    if args.m < 0:
        raise argparse.ArgumentTypeError("--m must be nonnegative")
    coeffs = [format_rational(c) for c in series_coeffs(gf_power(params, kind, args.n, args.r, args.s), args.m)]
    _emit(args, " ".join(coeffs), {"coefficients": coeffs})
    return EXIT_OK


def _cmd_verify(args):
    results = verify_mod.run_all(args.scale)
    failed = sum(len(r.failures) for r in results)
    passed = sum(r.passed for r in results)
    if args.output == "json":
        print(json.dumps({"passed": passed, "failed": failed,
                          "checks": [{"name": r.name, "passed": r.passed, "failed": len(r.failures),
                                      "degenerate": r.skipped} for r in results]}))
    else:
        for r in results:
            print(r.summary())
        print(f"total: {passed} passed, {failed} failed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


COMMANDS = {"term": _cmd_term, "sum": _cmd_sum, "gf": _cmd_gf, "series": _cmd_series, "verify": _cmd_verify}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize_argv(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except argparse.ArgumentTypeError as exc:
        print(f"horadam: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HoradamError as exc:
        print(f"horadam: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
