"""Command-line entry point: ``binsum <subcommand> ...``.

Data goes to stdout, diagnostics to stderr.  Exit status is 0 on success,
1 when at least one verification failed and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import charpoly, invariant, sums
from .exactpoly import MPoly, X
from .report import VerifyReport

IDENTITIES = (
    "lemma1", "convolution", "genfun", "smallm", "duality", "weightlaw",
    "pkrec", "minimal", "split", "theorem1", "schur", "oracle",
)

# (n_max, m_max) defaults per identity
DEFAULTS = {
    "lemma1": (40, 8),
    "convolution": (40, 6),
    "genfun": (12, 3),
    "smallm": (20, 3),
    "duality": (0, 6),
    "weightlaw": (0, 6),
    "pkrec": (15, 6),
    "minimal": (0, 6),
    "split": (0, 6),
    "theorem1": (60, 5),
    "schur": (50, 2),
    "oracle": (12, 12),
}


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


_RANGE = re.compile(r"^(-?\d+)(?:\.\.|:)(-?\d+)$")


def _int_range(text: str) -> tuple[int, int]:
    match = _RANGE.match(text.strip())
    if match:
        lo, hi = int(match.group(1)), int(match.group(2))
        if lo <= hi:
            return lo, hi
    elif re.fullmatch(r"-?\d+", text.strip()):
        return int(text), int(text)
    raise argparse.ArgumentTypeError(f"expected an inclusive range like -2:2, got {text!r}")


def _emit(out, text):
    out.write(text)
    if not text.endswith("\n"):
        out.write("\n")


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


# subcommands producing data


def cmd_table(args, out):
    if args.n < 0 or args.m < 1:
        raise UsageError("table needs n >= 0 and m >= 1")
    row = [1] if args.n == 0 else invariant.coeff_table(args.n, args.m).row()
    if args.format == "json":
        _emit(out, _dump_json({"n": args.n, "m": args.m, "row": [str(v) for v in row]}))
    else:
        sep = "," if args.format == "csv" else "\t"
        _emit(out, sep.join(str(v) for v in row))
    return 0


def _poly_out(p: MPoly, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(p.to_json())
    return p.to_csv() if fmt == "csv" else str(p)


def cmd_invariant(args, out):
    inv = invariant.invariant_poly(args.n, args.m)
    if args.format == "json":
        _emit(out, _dump_json({
            "n": inv.n, "m": inv.m, "poly": inv.poly.to_json(),
            "parts": {str(k): p.to_json() for k, p in inv.parts.items()},
        }))
    elif args.format == "csv":
        _emit(out, "\n".join(
            [f"f,{inv.poly.to_csv()}"] + [f"p{k},{p.to_csv()}" for k, p in inv.parts.items()]
        ))
    else:
        _emit(out, "\n".join(
            [f"f = {inv.poly}"] + [f"p{k} = {p}" for k, p in inv.parts.items()]
        ))
    return 0


def cmd_pk(args, out):
    _emit(out, _poly_out(invariant.weight_part(args.n, args.m, args.k), args.format))
    return 0


def _zpoly_out(c, fmt):
    if fmt == "json":
        return _dump_json(c.to_json())
    if fmt == "csv":
        return "\n".join(f"{j},{cj.to_csv()}" for j, cj in enumerate(c.coeffs))
    return str(c)


def cmd_charpoly(args, out):
    c = charpoly.char_poly(args.m, args.k)
    if args.specialize:
        c = c.subs(X + 1, X)
    _emit(out, _zpoly_out(c, args.format))
    return 0


def cmd_split(args, out):
    chain, report = charpoly.split_factorization(args.m)
    if args.format == "json":
        _emit(out, _dump_json({
            "m": args.m, "w": [w.to_json() for w in chain], "report": report.to_dict(),
        }))
    elif args.format == "csv":
        _emit(out, "\n".join(
            f"w{k},{j},{c.to_csv()}" for k, w in enumerate(chain) for j, c in enumerate(w.coeffs)
        ))
    else:
        lines = [f"w{k} = {w}" for k, w in enumerate(chain)]
        lines.append(("PASS" if report.passed else "FAIL") + f" split m={args.m}")
        _emit(out, "\n".join(lines))
    if not report.passed:
        print(report.witness, file=sys.stderr)
    return 0 if report.passed else 1


def cmd_seq(args, out):
    a = sums.a_seq(args.n, args.m, args.i, args.l).value
    if args.at is not None:
        v = a.evaluate(args.at)
        if args.format == "json":
            _emit(out, _dump_json({"value": str(v)}))
        else:
            _emit(out, str(v))
        return 0
    if args.format == "json":
        _emit(out, _dump_json(a.to_json()))
    elif args.format == "csv":
        _emit(out, "\n".join(f"{h},{a[h]}" for h in a.support()) or "")
    else:
        _emit(out, str(a))
    return 0


# verification sweeps


def _grid(args):
    ident = args.identity
    n_max = args.n_max if args.n_max is not None else DEFAULTS[ident][0]
    m_max = args.m_max if args.m_max is not None else DEFAULTS[ident][1]
    if ident == "lemma1":
        return [(n, m) for m in range(2, m_max + 1) for n in range(1, n_max + 1)]
    if ident == "convolution":
        return [(n, m) for m in range(1, m_max + 1) for n in range(n_max + 1)]
    if ident == "genfun":
        return [(m, n_max) for m in (2, 3) if m <= m_max]
    if ident == "smallm":
        return [(n,) for n in range(1, n_max + 1)]
    if ident in ("duality", "weightlaw"):
        return [(m, k) for m in range(2, m_max + 1) for k in range(1, m)]
    if ident == "pkrec":
        return [(m, k, n_max) for m in range(2, m_max + 1) for k in range(1, m)]
    if ident == "minimal":
        return [
            (m, k) for m in range(2, m_max + 1) for k in range(1, m)
            if charpoly.binomial(m, k) <= 6
        ]
    if ident == "split":
        return [(m,) for m in range(2, m_max + 1)]
    if ident == "theorem1":
        i_max = args.i_max if args.i_max is not None else 6
        lo, hi = args.l_range if args.l_range is not None else (-2, 2)
        return [
            (n, m, i, l)
            for m in range(2, m_max + 1)
            for i in range(1, i_max + 1)
            for l in range(lo, hi + 1)  # noqa: E741
            for n in range(n_max + 1)
        ]
    if ident == "schur":
        return [(n,) for n in range(n_max + 1)]
    if ident == "oracle":
        rng = random.Random(args.seed)
        pts = []
        for _ in range(args.points):
            n = rng.randint(1, n_max)
            m = rng.randint(1, m_max)
            x0 = Fraction(rng.randint(-8, 8), rng.randint(1, 8))
            s0 = Fraction(rng.randint(-8, 8), rng.randint(1, 8))
            pts.append((n, m, str(x0), str(s0)))
        return pts
    raise UsageError(f"unknown identity {ident!r}")


def run_point(ident: str, point: tuple) -> VerifyReport:
    if ident == "lemma1":
        return invariant.verify_lemma1(*point)
    if ident == "convolution":
        return invariant.verify_convolution(*point)
    if ident == "genfun":
        return invariant.verify_genfun(*point)
    if ident == "smallm":
        return invariant.verify_smallm(*point)
    if ident == "duality":
        return charpoly.verify_duality(*point)
    if ident == "weightlaw":
        return charpoly.verify_weight_law(*point)
    if ident == "pkrec":
        return charpoly.verify_pk_recurrence(*point)
    if ident == "minimal":
        return charpoly.verify_minimality(*point)
    if ident == "split":
        return charpoly.split_factorization(*point)[1]
    if ident == "theorem1":
        return sums.verify_theorem1(*point)
    if ident == "schur":
        return sums.schur_point(*point)
    if ident == "oracle":
        n, m, x0, s0 = point
        return invariant.numeric_product_oracle(n, m, Fraction(x0), Fraction(s0), 1e-9)
    raise UsageError(f"unknown identity {ident!r}")


def _run_star(job):
    return run_point(*job)


def sweep(ident: str, grid: list, jobs: int = 1) -> list[VerifyReport]:
    if jobs > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_star, [(ident, p) for p in grid], chunksize=16))
    return [run_point(ident, p) for p in grid]


def _params_text(params):
    return " ".join(f"{k}={v}" for k, v in params.items())


def cmd_verify(args, out):
    grid = _grid(args)
    reports = sweep(args.identity, grid, args.jobs)
    passed = sum(r.passed for r in reports)
    if args.format == "json":
        _emit(out, _dump_json({
            "identity": args.identity,
            "total": len(reports),
            "passed": passed,
            "reports": [r.to_dict() for r in reports],
        }))
    elif args.format == "csv":
        _emit(out, "\n".join(
            ["identity,params,pass"]
            + [f"{r.identity},{_params_text(r.params)},{int(r.passed)}" for r in reports]
        ))
    else:
        lines = [
            f"{'PASS' if r.passed else 'FAIL'} {r.identity} {_params_text(r.params)}"
            for r in reports
        ]
        lines.append(f"{args.identity}: {passed}/{len(reports)} passed")
        _emit(out, "\n".join(lines))
    for r in reports:
        if not r.passed:
            print(f"FAIL {r.identity} {_params_text(r.params)}\n{r.witness}", file=sys.stderr)
    return 0 if passed == len(reports) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="binsum",
        description="Invariant polynomials, characteristic polynomials and binomial-sum recurrences.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="coefficient table row a(n, m, .)")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("invariant", parents=[common], help="f_{n,m} and its weight parts")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("pk", parents=[common], help="weight part p_k(n, m, x, s)")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_pk)

    p = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial c(m, k, x, s, z)")
    p.add_argument("m", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--specialize", action="store_true", help="substitute (x, s) -> (x + 1, x)")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("split", parents=[common], help="w-chain factorisation at (x + 1, x)")
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("seq", parents=[common], help="Laurent polynomial A(n, m, i, l, z)")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("i", type=int)
    p.add_argument("l", type=int)
    p.add_argument("--at", type=_rational, default=None, help="evaluate at a rational z")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("verify", parents=[common], help="sweep an identity over a parameter grid")
    p.add_argument("identity", choices=IDENTITIES)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--i-max", type=int, default=None)
    p.add_argument("--l-range", type=_int_range, default=None, help="inclusive, e.g. -2:2")
    p.add_argument("--points", type=int, default=50, help="oracle: number of random points")
    p.add_argument("--seed", type=int, default=2024, help="oracle: RNG seed")
    p.set_defaults(func=cmd_verify)
    return parser


def _glue_ranges(argv):
    # argparse mistakes a value such as "-2:2" for an option
    out = []
    it = iter(argv)
    for a in it:
        if a == "--l-range":
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    argv = _glue_ranges(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    args.format = getattr(args, "format", "text")
    args.jobs = getattr(args, "jobs", 1)
    try:
        return args.func(args, out)
    except (UsageError, ValueError) as exc:
        print(f"binsum: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
