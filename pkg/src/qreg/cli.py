"""Command-line front end.

    qreg eval --family northshield --n 13
    qreg verify --family gamma --base 3 --theta 0.3 --limit 2187 --tol 1e-9
    qreg certificate check --family northshield
    qreg certificate solve --family parametric --tau 2 --sigma 5
    qreg report growth --kmax 12

Exit codes: 0 pass, 1 mathematical failure, 2 usage error.  JSON goes to
stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .certificate import Certificate, NoCertificateError, check, default_workers, solve, verify_reversal
from .rings import ComplexApprox, DomainMismatchError, json_value, parse_exact, serialize
from .sequences import (DegenerateThetaError, ExcludedParameterError, binary_runs, cf_numerator, gamma_certificate,
                        gamma_rep, growth_blocks, northshield_certificate, northshield_rep,
                        northshield_symmetry, parametric_certificate, parametric_rep,
                        reversed_cf_same_numerator, stern_certificate, stern_number,
                        stern_poly_rep, stern_rep, symbolic_parametric)

FAMILIES = ("northshield", "parametric", "stern", "stern-poly", "gamma")
MAX_LIMIT = 3 ** 15
DEFAULT_SEED = 20170101


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# family construction
# --------------------------------------------------------------------------

def _exact(text: str | None, flag: str):
    if text is None:
        return None
    try:
        return parse_exact(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _rational(text: str | None, flag: str, default):
    if text is None:
        return default
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag}: not a rational number: {text!r}") from None


def build_family(args):
    """(rep, certificate or None, tolerance) for the selected family."""
    fam = args.family
    if fam == "northshield":
        return northshield_rep(), northshield_certificate(), None
    if fam == "parametric":
        tau, sigma = _exact(args.tau, "--tau"), _exact(args.sigma, "--sigma")
        if tau is None and sigma is None:
            rep, cert = symbolic_parametric()
            return rep, cert, None
        if tau is None or sigma is None:
            raise UsageError("parametric family needs both --tau and --sigma (or neither)")
        try:
            return parametric_rep(tau, sigma), parametric_certificate(tau, sigma), None
        except DomainMismatchError as exc:
            raise UsageError(str(exc)) from None
    if fam == "stern":
        x = _rational(args.x, "--x", Fraction(1))
        y = _rational(args.y, "--y", Fraction(1))
        try:
            rep = stern_rep(x, y)
        except ExcludedParameterError as exc:
            raise UsageError(str(exc)) from None
        try:
            cert = stern_certificate(x, y)
        except ExcludedParameterError:
            cert = None
        return rep, cert, None
    if fam == "stern-poly":
        return stern_poly_rep(), None, None
    if fam == "gamma":
        if args.theta is None:
            raise UsageError("gamma family needs --theta")
        base = args.base if args.base is not None else 2
        if base < 2:
            raise UsageError("--base must be >= 2")
        tol = args.tol if args.tol is not None else 1e-9
        try:
            return gamma_rep(base, args.theta), gamma_certificate(base, args.theta), tol
        except DegenerateThetaError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"unknown family {fam!r}")


def _value_plain(x):
    if isinstance(x, ComplexApprox):
        return f"{x.re!r} {x.im!r}"
    return serialize(x)


def _emit(args, payload, plain_lines=None):
    if args.output == "plain" and plain_lines is not None:
        for line in plain_lines:
            print(line)
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_eval(args) -> int:
    rep, _, _ = build_family(args)
    if args.range is not None:
        lo, hi = args.range
        if lo < 0 or hi < lo:
            raise UsageError("--range needs 0 <= START <= STOP")
        if hi - lo > MAX_LIMIT:
            raise UsageError(f"--range spans more than {MAX_LIMIT} indices")
        values = [rep.eval(n) for n in range(lo, hi)]
        _emit(args, [json_value(v) for v in values], [_value_plain(v) for v in values])
        return 0
    if args.n is None:
        raise UsageError("eval needs --n or --range")
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    v = rep.eval(args.n)
    _emit(args, json_value(v), [_value_plain(v)])
    return 0


def cmd_verify(args) -> int:
    rep, _, tol = build_family(args)
    if args.limit < 2 or args.limit > MAX_LIMIT:
        raise UsageError(f"--limit must be in [2, {MAX_LIMIT}]")
    if args.tol is not None:
        tol = args.tol
    bad = verify_reversal(rep, args.limit, tol=tol, workers=default_workers())
    if bad is None:
        _emit(args, {"pass": True, "checked": args.limit}, ["pass"])
        return 0
    _emit(args, {"pass": False, "counterexample": bad, "checked": args.limit},
          [f"fail {bad}"])
    return 1


def _user_certificate(args):
    parts = [args.a, args.b, args.c, args.d]
    if all(p is None for p in parts):
        return None
    if any(p is None for p in parts):
        raise UsageError("a custom certificate needs all of --a --b --c --d")
    return Certificate(*(_exact(p, f"--{k}") for p, k in zip(parts, "abcd")))


def cmd_certificate(args) -> int:
    if args.action == "solve":
        if args.family in ("gamma", "stern-poly") or (
                args.family == "parametric" and args.tau is None and args.sigma is None):
            raise UsageError("solve needs rational or quadratic-field entries")
        rep, _, _ = build_family(args)
        try:
            cert = solve(rep)
        except NoCertificateError as exc:
            _emit(args, {"pass": False, "witness": exc.witness.to_json()},
                  [f"fail {exc.witness.reason}"])
            return 1
        report = check(rep, cert)
        payload = {"pass": report.passed, "certificate": cert.to_json(), "check": report.to_json()}
        _emit(args, payload, [" ".join(f"{k}={v}" for k, v in cert.to_json().items())])
        return 0 if report.passed else 1

    if args.family == "stern":
        x = _rational(args.x, "--x", Fraction(1))
        y = _rational(args.y, "--y", Fraction(1))
        if x in (0, 1) or y in (0, 1):
            raise UsageError("stern certificates need --x and --y outside {0, 1}")
    rep, cert, tol = build_family(args)
    if args.tol is not None:
        tol = args.tol
    user = _user_certificate(args)
    if user is not None:
        cert = user
    if cert is None:
        raise UsageError(f"no built-in certificate for family {args.family!r}; pass --a --b --c --d")
    try:
        report = check(rep, cert, tol)
    except DomainMismatchError as exc:
        raise UsageError(str(exc)) from None
    payload = report.to_json()
    payload["certificate"] = cert.to_json()
    _emit(args, payload, ["pass" if report.passed else "fail"])
    return 0 if report.passed else 1


def cmd_report(args) -> int:
    if args.kind == "symmetry":
        if args.k is None or not 0 <= args.k <= 12:
            raise UsageError("report symmetry needs 0 <= --k <= 12")
        bad = northshield_symmetry(args.k)
        payload = {"pass": bad is None, "k": args.k, "counterexample": bad}
        _emit(args, payload, ["pass" if bad is None else f"fail {bad}"])
        return 0 if bad is None else 1
    if args.kind == "growth":
        if args.kmax is None or not 2 <= args.kmax <= 13:
            raise UsageError("report growth needs 2 <= --kmax <= 13")
        report = growth_blocks(args.kmax)
        payload = report.to_json()
        payload["final_in_range"] = 0.8 <= report.maxima[-1] <= 1.001
        _emit(args, payload, [f"{b.k} {b.max_ratio!r} {b.argmax}" for b in report.blocks])
        return 0
    if args.kind == "cf":
        if args.limit is None or not 2 <= args.limit <= 2 ** 24:
            raise UsageError("report cf needs 2 <= --limit <= 2^24")
        mismatch = next((n for n in range(1, args.limit, 2)
                         if cf_numerator(binary_runs(n)) != stern_number(n)), None)
        rng = random.Random(args.seed)
        bad_runs = None
        for _ in range(args.samples):
            runs = [rng.randint(1, 5) for _ in range(rng.randint(1, 8))]
            if not reversed_cf_same_numerator(runs):
                bad_runs = runs
                break
        ok = mismatch is None and bad_runs is None
        payload = {"pass": ok, "limit": args.limit, "odd_checked": len(range(1, args.limit, 2)),
                   "mismatch": mismatch, "samples": args.samples, "seed": args.seed,
                   "reversal_counterexample": bad_runs}
        _emit(args, payload, ["pass" if ok else "fail"])
        return 0 if ok else 1
    raise UsageError(f"unknown report {args.kind!r}")


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--output", choices=("json", "plain"), default="json")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return p


def _family_args() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--tau")
    p.add_argument("--sigma")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--theta", type=float)
    p.add_argument("--base", type=int)
    p.add_argument("--tol", type=float)
    return p


def build_parser() -> argparse.ArgumentParser:
    common, family = _common(), _family_args()
    parser = argparse.ArgumentParser(prog="qreg", description=__doc__.split("\n")[0],
                                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common, family], help="evaluate a sequence")
    p.add_argument("--n", type=int)
    p.add_argument("--range", type=int, nargs=2, metavar=("START", "STOP"))
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", parents=[common, family], help="digit-reversal sweep")
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certificate", parents=[common, family],
                       help="check or solve for a reversal certificate")
    p.add_argument("action", choices=("check", "solve"))
    for k in "abcd":
        p.add_argument(f"--{k}")
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("report", parents=[common], help="symmetry / growth / cf reports")
    p.add_argument("kind", choices=("symmetry", "growth", "cf"))
    p.add_argument("--k", type=int)
    p.add_argument("--kmax", type=int)
    p.add_argument("--limit", type=int)
    p.add_argument("--samples", type=int, default=500)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qreg {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
