"""Command-line front end.

Exit codes: 0 all checks passed, 1 verification failure, 2 usage or parse
error, 3 arithmetic domain error.  Results go to stdout, diagnostics to
stderr.
"""
from __future__ import annotations

import argparse
import logging
import random
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .arith import bernoulli_numbers, is_prime
from .errors import DenominatorCollision, DomainError, FMZVError, OrderViolation, ParseError, TruncationTooSmall
from .genfun import extract_P, gr_series, integer_powersum_oracle
from .index import format_index, parse_index
from .reduction import reduce_full
from .serialize import (
    SCHEMA,
    combination_to_csv,
    combination_to_json,
    dumps,
    rational_to_json,
    table_to_csv,
    table_to_json,
)
from .sweep import check_reduce
from .truncated import TruncationRange, zeta_trunc_exact, zeta_trunc_mod

log = logging.getLogger("fmzv")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

MAX_GENFUN_DEPTH = 4
MAX_GENFUN_K = 6
GENFUN_TRUNC_CAP = 64


class UsageError(Exception):
    pass


def _parse_range(text: str) -> TruncationRange:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--range expects 'a,b', got {text!r}") from None
    try:
        return TruncationRange(a, b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- subcommands -------------------------------------------------------------


def cmd_value(args) -> int:
    k = parse_index(args.index)
    if not is_prime(args.prime):
        raise UsageError(f"--prime {args.prime} is not prime")
    if args.pow < 1:
        raise UsageError("--pow must be positive")
    rng = _parse_range(args.range) if args.range else TruncationRange(0, args.prime)
    res = zeta_trunc_mod(k, args.prime, args.pow, rng)
    exact = zeta_trunc_exact(k, rng) if args.exact else None
    if args.format == "json":
        doc = {
            "schema": SCHEMA,
            "index": format_index(k),
            "prime": args.prime,
            "pow": args.pow,
            "range": [rng.lower, rng.upper],
            "residue": str(res.value),
            "modulus": str(res.modulus),
        }
        if exact is not None:
            doc["exact"] = rational_to_json(exact)
        _emit(dumps(doc))
    elif args.format == "csv":
        head = "index,prime,pow,a,b,residue" + (",exact" if exact is not None else "")
        row = f'"{format_index(k)}",{args.prime},{args.pow},{rng.lower},{rng.upper},{res.value}'
        if exact is not None:
            row += f",{_fraction_str(exact)}"
        _emit(head + "\n" + row)
    else:
        _emit(str(res.value))
        if exact is not None:
            _emit(_fraction_str(exact))
    return EXIT_OK


def cmd_reduce(args) -> int:
    k = parse_index(args.index)
    trace = reduce_full(k, args.strategy)
    c = trace.final.specialize_single() if args.single_var else trace.final
    names = ("x+", "x") if args.single_var else ("x+", "x-")
    log.info("%d elimination steps", len(trace.steps))
    if args.format == "json":
        doc = combination_to_json(c, source=k)
        doc["single_var"] = bool(args.single_var)
        _emit(dumps(doc))
    elif args.format == "csv":
        _emit(combination_to_csv(c))
    else:
        _emit(c.format(names))
    return EXIT_OK


def _strategies(text: str) -> tuple[str, ...]:
    if text == "all":
        return ("leftmost", "rightmost")
    out = tuple(s.strip() for s in text.split(","))
    for s in out:
        if s not in ("leftmost", "rightmost"):
            raise UsageError(f"unknown strategy {s!r}")
    return out


def _report_line(rep) -> str:
    status = "PASS" if rep.all_passed else "FAIL"
    line = (
        f"{status} ({format_index(rep.index)}) n={rep.exponent}: "
        f"{len(rep.primes_checked)} checked, {len(rep.primes_skipped)} skipped"
    )
    if rep.primes_skipped:
        line += " [" + " ".join(str(p) for p, _ in rep.primes_skipped) + "]"
    if rep.first_failure is not None:
        f = rep.first_failure
        line += f"; first failure p={f.prime} ({f.strategy}): {f.lhs} != {f.rhs}"
    return line


def cmd_check_reduce(args) -> int:
    k = parse_index(args.index)
    if args.primes_up_to < 5:
        raise UsageError("--primes-up-to must be at least 5")
    rep = check_reduce(
        k, args.primes_up_to, args.pow, strategies=_strategies(args.strategies), primes_from=args.primes_from
    )
    _emit(dumps(rep.to_json()) if args.format == "json" else _report_line(rep))
    return EXIT_OK if rep.all_passed else EXIT_FAIL


def cmd_sweep(args) -> int:
    if args.primes_up_to < 5:
        raise UsageError("--primes-up-to must be at least 5")
    strategies = _strategies(args.strategies)
    with open(args.file, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    indices = []
    for lineno, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0]
        if not text.strip():
            continue
        try:
            indices.append(parse_index(text.strip()))
        except ParseError as exc:
            raise UsageError(f"{args.file}:{lineno}: {exc}") from None
    reports = [
        check_reduce(k, args.primes_up_to, args.pow, strategies=strategies, primes_from=args.primes_from)
        for k in indices
    ]
    ok = all(r.all_passed for r in reports)
    if args.format == "json":
        _emit(dumps({"schema": SCHEMA, "all_passed": ok, "reports": [r.to_json() for r in reports]}))
    else:
        for r in reports:
            _emit(_report_line(r))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bernoulli(args) -> int:
    if args.n < 0:
        raise UsageError("N must be non-negative")
    bs = bernoulli_numbers(args.n)
    if args.format == "json":
        _emit(dumps({"schema": SCHEMA, "convention": "B_1=+1/2", "values": [rational_to_json(b) for b in bs]}))
    elif args.format == "csv":
        _emit("n,num,den\n" + "\n".join(f"{i},{b.numerator},{b.denominator}" for i, b in enumerate(bs)))
    else:
        for i, b in enumerate(bs):
            _emit(f"B_{i} = {_fraction_str(b)}")
    return EXIT_OK


def _p_table(r: int, kmax: int):
    trunc = r * kmax + 1
    while True:
        try:
            return extract_P(r, kmax, gr_series(r, trunc))
        except TruncationTooSmall:
            if trunc >= GENFUN_TRUNC_CAP:
                raise
            trunc = min(2 * trunc, GENFUN_TRUNC_CAP)
            log.warning("series truncation too small, retrying with %d", trunc)


def cmd_genfun(args) -> int:
    r, kmax = args.depth, args.max_k
    if not 1 <= r <= MAX_GENFUN_DEPTH:
        raise UsageError(f"--depth must be in 1..{MAX_GENFUN_DEPTH}")
    if not 0 <= kmax <= MAX_GENFUN_K:
        raise UsageError(f"--max-k must be in 0..{MAX_GENFUN_K}")
    table = _p_table(r, kmax)
    failures = []
    checked = 0
    if args.check_oracle:
        B = args.b_up_to
        for k in sorted(table):
            poly = table[k]
            for b in range(1, B + 1):
                for a in range(b):
                    checked += 1
                    got = poly(a, b)
                    want = integer_powersum_oracle(k, a, b)
                    if got != want:
                        failures.append((k, a, b, got, want))
    if args.format == "json":
        doc = table_to_json(table, r, kmax)
        if args.check_oracle:
            doc["oracle"] = {
                "b_up_to": args.b_up_to,
                "checked": checked,
                "passed": not failures,
                "failures": [
                    {"k": format_index(k), "a": a, "b": b, "got": str(g), "want": str(w)}
                    for k, a, b, g, w in failures[:20]
                ],
            }
        _emit(dumps(doc))
    elif args.format == "csv":
        _emit(table_to_csv(table))
    else:
        for k in sorted(table):
            _emit(f"P({format_index(k)}) = {table[k].format(('y+', 'y-'))}")
        if args.check_oracle:
            _emit(f"oracle: {checked} evaluations, {'pass' if not failures else f'{len(failures)} FAILED'}")
    for k, a, b, g, w in failures[:5]:
        log.error("P(%s) at (%d,%d): %s != %s", format_index(k), a, b, g, w)
    return EXIT_FAIL if failures else EXIT_OK


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"not a complex number: {text!r}") from None


def cmd_numeric_check(args) -> int:
    from .numeric import check_thm14, sample_check

    if args.samples < 1:
        raise UsageError("--samples must be positive")
    results = []
    if args.s is not None:
        s = [_parse_complex(x) for x in args.s.split(",")]
        if args.position is None or args.k is None:
            raise UsageError("--s needs --position and --k")
        case = None if args.case == "all" else args.case
        N = args.trunc or (10**4 if len(s) >= 3 else 10**5)
        results.append(
            check_thm14(case, s, args.position, args.k, _parse_complex(args.t_plus), _parse_complex(args.t_minus), N)
        )
    else:
        cases = ("head", "middle", "tail") if args.case == "all" else (args.case,)
        rng = random.Random(args.seed)
        for case in cases:
            for _ in range(args.samples):
                results.append(sample_check(case, rng, N=args.trunc))
    rows = []
    any_fail = any_inconclusive = False
    for res in results:
        if res.residual >= args.tol:
            status = "fail"
            any_fail = True
        elif res.budget > args.tol:
            status = "inconclusive"
            any_inconclusive = True
        else:
            status = "pass"
        rows.append((res, status))
    if any_inconclusive:
        log.warning("error budget exceeds tolerance %g for some samples; increase --trunc", args.tol)
    max_res = max(r.residual for r, _ in rows)
    max_budget = max(r.budget for r, _ in rows)
    overall = "fail" if any_fail else "inconclusive" if any_inconclusive else "pass"
    if args.format == "json":
        _emit(
            dumps(
                {
                    "schema": SCHEMA,
                    "tol": args.tol,
                    "status": overall,
                    "max_residual": max_res,
                    "max_budget": max_budget,
                    "samples": [
                        {
                            "case": r.case,
                            "s": [[z.real, z.imag] for z in r.s],
                            "position": r.position,
                            "k": r.k,
                            "t_plus": [r.t_plus.real, r.t_plus.imag],
                            "t_minus": [r.t_minus.real, r.t_minus.imag],
                            "N": r.N,
                            "residual": r.residual,
                            "budget": r.budget,
                            "status": st,
                        }
                        for r, st in rows
                    ],
                }
            )
        )
    else:
        for r, st in rows:
            _emit(f"{r.case:6s} k={r.k} N={r.N} residual={r.residual:.3e} budget={r.budget:.3e} {st}")
        _emit(f"{overall}: max residual {max_res:.3e}, max budget {max_budget:.3e}, tol {args.tol:g}")
    return EXIT_OK if overall == "pass" else EXIT_FAIL


# -- parser ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # so that index text such as "-1,-1" is taken as a positional argument
        self._negative_number_matcher = re.compile(r"^-\d[\d,\s+-]*$")

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fmzv", description="Truncated multiple harmonic sums of general integer indices.")
    p.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    fmt = dict(choices=("plain", "json", "csv"), default="plain")

    v = sub.add_parser("value", help="truncated sum modulo p^n")
    v.add_argument("index", help='comma-separated integers, e.g. "3,-1"; "" is the empty index')
    v.add_argument("--prime", type=int, required=True)
    v.add_argument("--pow", type=int, default=1)
    v.add_argument("--range", help="summation range a,b (default 0,p)")
    v.add_argument("--exact", action="store_true", help="also print the exact rational")
    v.add_argument("--format", **fmt)
    v.set_defaults(func=cmd_value)

    r = sub.add_parser("reduce", help="rewrite as a combination of positive indices")
    r.add_argument("index")
    r.add_argument("--single-var", action="store_true", help="set x+ = 0")
    r.add_argument("--strategy", choices=("leftmost", "rightmost"), default="leftmost")
    r.add_argument("--format", **fmt)
    r.set_defaults(func=cmd_reduce)

    for name, helptext, func in (
        ("check-reduce", "verify the reduction prime by prime", cmd_check_reduce),
        ("sweep", "check-reduce for every index in a file", cmd_sweep),
    ):
        c = sub.add_parser(name, help=helptext)
        if name == "sweep":
            c.add_argument("file", help="one index per line; '#' starts a comment")
        else:
            c.add_argument("index")
        c.add_argument("--primes-up-to", type=int, required=True)
        c.add_argument("--primes-from", type=int, default=2)
        c.add_argument("--pow", type=int, default=1)
        c.add_argument("--strategies", default="all", help="all, leftmost, rightmost or a comma list")
        c.add_argument("--format", choices=("plain", "json"), default="plain")
        c.set_defaults(func=func)

    b = sub.add_parser("bernoulli", help="B_0..B_N with B_1 = +1/2")
    b.add_argument("n", type=int, metavar="N")
    b.add_argument("--format", **fmt)
    b.set_defaults(func=cmd_bernoulli)

    g = sub.add_parser("genfun", help="table of the P_r polynomials")
    g.add_argument("--depth", type=int, required=True)
    g.add_argument("--max-k", type=int, required=True)
    g.add_argument("--check-oracle", action="store_true")
    g.add_argument("--b-up-to", type=int, default=10)
    g.add_argument("--format", **fmt)
    g.set_defaults(func=cmd_genfun)

    n = sub.add_parser("numeric-check", help="numerical check of the elimination identity")
    n.add_argument("--case", choices=("head", "middle", "tail", "all"), default="all")
    n.add_argument("--samples", type=int, default=10)
    n.add_argument("--trunc", type=int, default=None, help="N (default 1e5 at depth 2, 1e4 at depth 3)")
    n.add_argument("--tol", type=float, default=1e-6)
    n.add_argument("--seed", type=int, default=0)
    n.add_argument("--s", help="manual point, e.g. '6,-1,7' or '6+0.2j,0'")
    n.add_argument("--position", type=int)
    n.add_argument("--k", type=int)
    n.add_argument("--t-plus", default="0")
    n.add_argument("--t-minus", default="0")
    n.add_argument("--format", choices=("plain", "json"), default="plain")
    n.set_defaults(func=cmd_numeric_check)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"fmzv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="fmzv: %(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"fmzv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DenominatorCollision, DomainError, OrderViolation, ArithmeticError) as exc:
        print(f"fmzv: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (FMZVError, ValueError, OSError) as exc:
        print(f"fmzv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
