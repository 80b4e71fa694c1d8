"""Command line front end.

Subcommands: orbit (print one critical orbit), zsigmondy (primitive
divisor report for one parameter), scan (grid sweep to CSV or JSON),
verify (run the self-check suite), bounds (explicit finiteness bounds
for a polynomial), normalize (conjugate an arbitrary polynomial into the
x^2-divisible family).

Exit codes: 0 success, 1 a verification or certification failure,
2 malformed input.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
from fractions import Fraction

from .harness import ScanConfig, run_scan, write_output
from .orbit import Verdict, decide_membership, escape_radius, iterate
from .poly import (
    RatPolynomial,
    X2DivisiblePoly,
    critical_points_rational,
    normalize_to_x2_divisible,
)
from .verification import check_names, run_all
from .zsigmondy import bound_report, zsigmondy_set


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r} ({exc})")


def _add_poly_options(sub, required: bool = True):
    group = sub.add_mutually_exclusive_group(required=required)
    group.add_argument("--poly", help="polynomial text, e.g. 'x^3+x^2' or '2*x^4-3*x^2'")
    group.add_argument("--coeffs", help="comma separated coefficients, constant first")


def _model_poly(args) -> X2DivisiblePoly:
    if args.poly is not None:
        return X2DivisiblePoly.parse(args.poly)
    return X2DivisiblePoly.from_coeffs(
        [Fraction(s.strip()) for s in args.coeffs.split(",")]
    )


def _format_value(num: int, den: int) -> str:
    text = str(num) if den == 1 else f"{num}/{den}"
    if len(text) <= 60:
        return text
    nd = len(str(abs(num)))
    dd = len(str(den))
    return f"<{nd}-digit>/<{dd}-digit>" if den != 1 else f"<{nd}-digit>"


def _cmd_orbit(args) -> int:
    g = _model_poly(args)
    c = args.c
    decision = decide_membership(g, c)
    print(f"polynomial: {g}")
    print(f"parameter:  c = {c}")
    print(f"verdict:    {decision.verdict.value} ({decision.witness_text()})")
    print(f"escape radius: {escape_radius(g, c)}")
    orbit = iterate(g, c, args.horizon, args.bit_cap)
    print(f"{'n':>3}  {'ln|value|':>12}  {'deep primes':>11}  value")
    for e in orbit.entries:
        deep = ",".join(f"{p}^{v}" for p, v in sorted(e.deep_valuations.items())) or "-"
        print(f"{e.n:>3}  {e.ln_abs:>12.4f}  {deep:>11}  {_format_value(e.num, e.den)}")
    if orbit.capped_at is not None:
        print(f"stopped at n={orbit.capped_at}: entry exceeds {orbit.bit_cap} bits")
    return 0


def _cmd_zsigmondy(args) -> int:
    g = _model_poly(args)
    c = args.c
    decision = decide_membership(g, c)
    print(f"polynomial: {g}")
    print(f"parameter:  c = {c}")
    print(f"verdict:    {decision.verdict.value} ({decision.witness_text()})")
    orbit = iterate(g, c, args.horizon, args.bit_cap)
    if any(e.num == 0 for e in orbit.entries):
        print("orbit hits zero inside the window; Zsigmondy set not defined")
        return 0
    report = zsigmondy_set(orbit)
    zset = " ".join(map(str, report.zset)) if report.zset else "(empty)"
    print(f"window:     1..{report.horizon}")
    print(f"zsigmondy set in window: {zset}")
    print(f"{'n':>3}  {'primitive':>9}  {'witness':>10}  {'residue bits':>12}  {'krieger':>8}")
    krieger = dict(report.krieger_checks)
    for v in report.verdicts:
        wit = str(v.witness_prime) if v.witness_prime is not None else "-"
        print(f"{v.n:>3}  {'yes' if v.has_primitive else 'no':>9}  {wit:>10}"
              f"  {v.stripped_remainder_bits:>12}  {krieger[v.n].value:>8}")
    rins = " ".join(map(str, report.rin_failures)) if report.rin_failures else "(none)"
    print(f"recursive inequality failures: {rins}")
    if orbit.capped_at is not None:
        print(f"window truncated at n={orbit.capped_at} by the {orbit.bit_cap}-bit cap")
    return 0


def _cmd_scan(args) -> int:
    if args.config is not None:
        cfg = ScanConfig.from_file(args.config)
        updates = {}
        if args.poly is not None or args.coeffs is not None:
            updates["poly"] = _model_poly(args)
        for name in ("num_bound", "den_bound", "horizon", "bit_cap",
                     "parallelism", "format", "output"):
            val = getattr(args, name)
            if val is not None:
                updates[name] = val
        if updates:
            cfg = dataclasses.replace(cfg, **updates)
    else:
        if args.poly is None and args.coeffs is None:
            raise ValueError("scan needs --config, or --poly/--coeffs with bounds")
        if args.num_bound is None or args.den_bound is None:
            raise ValueError("scan needs --num-bound and --den-bound")
        cfg = ScanConfig(
            poly=_model_poly(args),
            num_bound=args.num_bound,
            den_bound=args.den_bound,
            horizon=args.horizon if args.horizon is not None else 8,
            bit_cap=args.bit_cap if args.bit_cap is not None else 2_000_000,
            parallelism=args.parallelism if args.parallelism is not None else 1,
            output=args.output,
            format=args.format if args.format is not None else "csv",
        )
    summary = run_scan(cfg)
    text = write_output(summary)
    if cfg.output is None:
        sys.stdout.write(text)
    counts = " ".join(f"{k}={v}" for k, v in sorted(summary.verdict_counts.items()))
    print(
        f"scanned {len(summary.rows)} parameters ({counts}); "
        f"max zsigmondy window size {summary.empirical_max_zset_size}; "
        f"{summary.runtime_seconds:.2f}s",
        file=sys.stderr,
    )
    return 0


def _cmd_verify(args) -> int:
    names = args.check if args.check else None
    if names:
        unknown = set(names) - set(check_names())
        if unknown:
            raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")
    results = run_all(names)
    for r in results:
        print(f"ok   {r.name}" if r.ok else f"FAIL {r.name}: {r.detail}")
    good = sum(r.ok for r in results)
    print(f"{good}/{len(results)} checks passed")
    return 0 if good == len(results) else 1


def _cmd_bounds(args) -> int:
    g = _model_poly(args)
    report = bound_report(g, args.height, args.depth)
    print(f"polynomial: {g}")
    print(f"degree {report.degree}, leading coefficient {report.lead}, "
          f"length {report.coefficient_length}")
    print(f"parameter height {report.parameter_height}, preimage depth {report.preimage_depth}")
    print(f"preimage root bound: {report.root_bound}")
    print(f"index bounds: n0 = {report.n0}, n1 = {report.n1}, n2 = {report.n2}")
    print(f"unit equation count at n0: {report.evertse_at_n0:.6e}")
    for name in ("escape", "monomial", "bounded"):
        print(f"growth threshold ({name}): {report.region_thresholds[name]}")
    print(f"largest index bound: {report.max_index_bound()}")
    return 0


def _cmd_normalize(args) -> int:
    f = RatPolynomial.parse(args.poly)
    if args.u is not None:
        u = args.u
    else:
        points = critical_points_rational(f)
        if len(points) != 1:
            listed = ", ".join(map(str, points)) if points else "none found"
            raise ValueError(
                f"need --u: rational critical points of {f}: {listed}"
            )
        u = points[0]
    cert = normalize_to_x2_divisible(f, u)
    if not cert.verify():
        raise ArithmeticError("normalization certificate failed self-verification")
    s, t = cert.shift_constant, cert.scale
    print(f"source: {f}")
    print(f"critical point: u = {cert.u}")
    print(f"target: {cert.target}")
    print(f"shift constant: {s}")
    print(f"scale: {t}")
    offset = f"c + {s}" if s >= 0 else f"c - {-s}"
    divisor = str(t) if t.denominator == 1 else f"({t})"
    print(f"parameter map: c -> ({offset}) / {divisor}")
    print(f"quadratic regime: {'yes' if cert.krieger_regime else 'no'}")
    print(f"zsigmondy count distortion bound: {cert.distortion_bound}")
    if args.c is not None:
        print(f"mapped parameter: {args.c} -> {cert.param_map(args.c)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zsig",
        description="Zsigmondy sets of critical orbits for x^2-divisible polynomials",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("orbit", help="print one critical orbit with denominator data")
    _add_poly_options(p)
    p.add_argument("--c", type=_fraction, required=True, help="parameter, e.g. 1 or -3/2")
    p.add_argument("--horizon", type=int, default=10)
    p.add_argument("--bit-cap", dest="bit_cap", type=int, default=2_000_000)
    p.set_defaults(func=_cmd_orbit)

    p = subs.add_parser("zsigmondy", help="primitive divisor report for one parameter")
    _add_poly_options(p)
    p.add_argument("--c", type=_fraction, required=True)
    p.add_argument("--horizon", type=int, default=8)
    p.add_argument("--bit-cap", dest="bit_cap", type=int, default=2_000_000)
    p.set_defaults(func=_cmd_zsigmondy)

    p = subs.add_parser("scan", help="sweep a rational parameter grid")
    _add_poly_options(p, required=False)
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--num-bound", dest="num_bound", type=int)
    p.add_argument("--den-bound", dest="den_bound", type=int)
    p.add_argument("--horizon", type=int)
    p.add_argument("--bit-cap", dest="bit_cap", type=int)
    p.add_argument("--parallelism", type=int)
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--output", "-o")
    p.set_defaults(func=_cmd_scan)

    p = subs.add_parser("verify", help="run the self-check suite")
    p.add_argument("--check", action="append", help="run only this check (repeatable)")
    p.set_defaults(func=_cmd_verify)

    p = subs.add_parser("bounds", help="explicit finiteness bounds for a polynomial")
    _add_poly_options(p)
    p.add_argument("--L", dest="height", type=_fraction,
                   help="parameter height bound (default: the length)")
    p.add_argument("--N", dest="depth", type=int, default=3,
                   help="preimage depth for the root bound")
    p.set_defaults(func=_cmd_bounds)

    p = subs.add_parser("normalize", help="conjugate a polynomial into the model family")
    p.add_argument("--poly", required=True, help="any rational polynomial text")
    p.add_argument("--u", type=_fraction, help="critical point (default: the unique rational one)")
    p.add_argument("--c", type=_fraction, help="also map this parameter")
    p.set_defaults(func=_cmd_normalize)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ZeroDivisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


cli_dispatch = main


if __name__ == "__main__":
    sys.exit(main())
