"""Command line entry point."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from ..exactnum import bernoulli, check_von_staudt_clausen, primes_in
from ..normalization import Normalization
from ..qexp import eisenstein, isobaric_representation, minimal_integral_multiplier
from ..rvf import ab_polynomials
from .checks import CHECK_NAMES, explore_f2, run_check
from .report import VerificationReport, jsonable


def parse_primes(text: str) -> list[int]:
    """``A..B``, a single prime, or a comma-separated list."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise argparse.ArgumentTypeError(f"empty range {text}")
        return [p for p in primes_in(lo, hi) if p >= 5]
    try:
        values = sorted({int(x) for x in text.split(",") if x})
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    return values


def _common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--output", choices=("json", "text"), default=default if suppress else "text")
    parser.add_argument("--jobs", type=int, default=default if suppress else 1, metavar="W")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ramvf", description="Ramanujan vector field verifier")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bernoulli", help="table of B_k and Von Staudt-Clausen status")
    p.add_argument("--max-k", type=int, required=True)

    p = sub.add_parser("eisenstein", help="q-expansion of E_k")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--terms", type=int, default=10)
    p.add_argument("--mod-p", type=int, default=None)

    p = sub.add_parser("isobaric", help="isobaric polynomial and minimal integral multiplier")
    p.add_argument("--weight", type=int, required=True)

    p = sub.add_parser("ab", help="A and B over F_p")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--normalization", choices=[n.value for n in Normalization], default="classical")

    p = sub.add_parser("verify", help="run a verification check over a prime range")
    p.add_argument("--check", choices=CHECK_NAMES, required=True)
    p.add_argument("--primes", type=parse_primes, required=True, metavar="A..B")
    p.add_argument("--terms", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ceiling", type=int, default=None, help="override the check's prime ceiling")

    p = sub.add_parser("explore", help="exploratory computations")
    p.add_argument("what", choices=("f2",))
    p.add_argument("--prime", type=int, required=True)

    for sp in sub.choices.values():
        _common(sp, suppress=True)
    return parser


def _emit(obj: dict, output: str, text: str) -> None:
    print(json.dumps(jsonable(obj), sort_keys=True) if output == "json" else text)


def _bernoulli(args) -> int:
    for k in range(0, args.max_k + 1):
        b = bernoulli(k)
        vsc = check_von_staudt_clausen(k) if k >= 2 and k % 2 == 0 else None
        _emit({"k": k, "B_k": b, "von_staudt_clausen": vsc}, args.output,
              f"B_{k} = {b}" + ("" if vsc is None else f"  VSC {'ok' if vsc else 'FAILED'}"))
    return 0


def _eisenstein(args) -> int:
    s = eisenstein(args.weight, args.terms)
    if args.mod_p is not None:
        s = s.reduce_mod_p(args.mod_p)
    _emit({"weight": args.weight, "mod_p": args.mod_p, "series": str(s), "coefficients": list(s.coeffs)},
          args.output, str(s))
    return 0


def _isobaric(args) -> int:
    k = args.weight
    P = isobaric_representation(k, eisenstein(k, max(40, k // 12 + 5)))
    m = minimal_integral_multiplier(k) if k >= 4 else 1
    _emit({"weight": k, "polynomial": str(P), "multiplier": m}, args.output,
          f"E_{k} = {P}\nminimal integral multiplier: {m}")
    return 0


def _ab(args) -> int:
    A, B = ab_polynomials(args.prime, args.normalization)
    _emit({"prime": args.prime, "normalization": args.normalization, "A": str(A), "B": str(B)},
          args.output, f"A = {A}\nB = {B}")
    return 0


def _task(job):
    name, p, kw = job
    return run_check(name, p, **kw)


def run_reports(name: str, primes, jobs: int = 1, **kw) -> list[VerificationReport]:
    tasks = [(name, p, kw) for p in primes]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            reports = list(ex.map(_task, tasks))
    else:
        reports = [_task(t) for t in tasks]
    return sorted(reports, key=lambda r: (r.check, r.prime))


def _print_reports(reports, output: str) -> int:
    for r in reports:
        print(r.to_json() if output == "json" else r.to_text())
    return 1 if any(r.status == "fail" for r in reports) else 0


def _verify(args) -> int:
    reports = run_reports(args.check, args.primes, args.jobs, terms=args.terms,
                          samples=args.samples, seed=args.seed, ceiling=args.ceiling)
    return _print_reports(reports, args.output)


def _explore(args) -> int:
    return _print_reports([explore_f2(args.prime)], args.output)


COMMANDS = {
    "bernoulli": _bernoulli,
    "eisenstein": _eisenstein,
    "isobaric": _isobaric,
    "ab": _ab,
    "verify": _verify,
    "explore": _explore,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        return COMMANDS[args.command](args)
    except (ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
