"""majorant-lab command line.

Subcommands: rho, disc, delta, bound, lhs, ratio, sweep, lemmas.
Exit codes: 0 success, 2 validation failure, 3 suite failure (a configured
threshold was exceeded).  Every flag may also be given in a flat key=value
config file passed with --config; command-line flags win.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import bounds, lhs, numeric
from .bounds import BoundParams
from .errors import DomainError, ParamError
from .harness import (ExperimentConfig, emit, load_config_file,
                      parse_int_list, parse_system_spec, run_lemma_checks,
                      run_ratio_experiment, sweep_shifted_pairs)
from .mfunc import parse_function
from .polys import parse_poly
from .rootcount import rho

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_SUITE = 3


def _add_common(sub):
    sub.add_argument("--config", help="flat key=value config file")
    sub.add_argument("--mode", choices=("exact", "float"), default=None)


def _merge(args, keys):
    """Fill unset args from the config file; returns a plain dict."""
    file_cfg = load_config_file(args.config) if args.config else {}
    out = {}
    for key, conv, default in keys:
        cli_val = getattr(args, key.replace("-", "_"), None)
        if cli_val is not None:
            out[key] = cli_val if conv is None else cli_val
        elif key in file_cfg:
            out[key] = conv(file_cfg[key]) if conv else file_cfg[key]
        else:
            out[key] = default
    return out


def _system_from(args_dict):
    spec = args_dict.get("system")
    if not spec:
        raise DomainError("--system is required")
    return parse_system_spec(spec)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="majorant-lab", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p_rho = subs.add_parser("rho", help="root count of a polynomial mod n")
    p_rho.add_argument("--poly", required=True,
                       help='coefficients low-to-high "1,0,1" or "x^2+1"')
    p_rho.add_argument("--modulus", required=True, type=int)

    p_disc = subs.add_parser("disc", help="discriminant data of a system")
    p_disc.add_argument("--system", required=True,
                        help='factors "x;x+2" with optional "|" exponent rows')

    p_delta = subs.add_parser("delta", help="discriminant-local factors")
    _add_common(p_delta)
    p_delta.add_argument("--system")
    p_delta.add_argument("--function", default=None)

    p_bound = subs.add_parser("bound", help="right-hand side majorants")
    _add_common(p_bound)
    p_bound.add_argument("--system")
    p_bound.add_argument("--function", default=None)
    p_bound.add_argument("--variant", default=None,
                         help="main|cor-disc|cor-mult|shiu|primes (comma list)")
    for flag in ("x", "y", "alpha", "delta", "A", "B", "eps", "c0"):
        p_bound.add_argument(f"--{flag}", default=None)

    p_lhs = subs.add_parser("lhs", help="exact left-hand sums")
    _add_common(p_lhs)
    p_lhs.add_argument("--system")
    p_lhs.add_argument("--function", default=None)
    p_lhs.add_argument("--x", default=None)
    p_lhs.add_argument("--y", default=None)
    p_lhs.add_argument("--primes", action="store_true")

    p_ratio = subs.add_parser("ratio", help="ratio experiment over a family")
    _add_common(p_ratio)
    p_ratio.add_argument("--family", default=None,
                         choices=("shifted_pairs", "systems", "quadratic_sweep"))
    p_ratio.add_argument("--systems", default=None,
                         help="comma list of system specs")
    p_ratio.add_argument("--ells", default=None, help="shifts, e.g. 1..100")
    p_ratio.add_argument("--c-values", default=None)
    p_ratio.add_argument("--function", default=None)
    p_ratio.add_argument("--x", default=None, help="comma list of x values")
    p_ratio.add_argument("--y-exp", default=None)
    p_ratio.add_argument("--variants", default=None)
    p_ratio.add_argument("--seed", type=int, default=None)
    p_ratio.add_argument("--out", default=None)
    p_ratio.add_argument("--format", default=None, choices=("csv", "jsonl"))
    p_ratio.add_argument("--max-spread", type=float, default=None)
    for flag in ("alpha", "delta", "A", "B", "eps", "c0"):
        p_ratio.add_argument(f"--{flag}", default=None)

    p_sweep = subs.add_parser("sweep", help="shifted-pair sweep")
    _add_common(p_sweep)
    p_sweep.add_argument("--x", default=None)
    p_sweep.add_argument("--ells", default=None)
    p_sweep.add_argument("--m", type=int, default=None)
    p_sweep.add_argument("--out", default=None)
    p_sweep.add_argument("--format", default=None, choices=("csv", "jsonl"))
    p_sweep.add_argument("--max-spread", type=float, default=None)

    p_lem = subs.add_parser("lemmas", help="comparison-inequality checks")
    _add_common(p_lem)
    p_lem.add_argument("--system")
    p_lem.add_argument("--function", default=None)
    p_lem.add_argument("--z", default=None, help="comma list of z values")
    p_lem.add_argument("--prime-bound", type=int, default=None)
    p_lem.add_argument("--sigma", default=None,
                       choices=("one", "lambda", "lambda_inv"))

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (ParamError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "rho":
        poly = parse_poly(args.poly)
        print(rho(poly, args.modulus))
        return EXIT_OK

    if cmd == "disc":
        system = parse_system_spec(args.system)
        print(f"k={system.k} r={system.r} g={system.g} g*={system.gstar}")
        print(f"norm={system.norm()}")
        print(f"D={system.disc}")
        print(f"D*={system.dstar}")
        print(f"fixed_primes={sorted(system.fixed_primes) or '{}'}")
        return EXIT_OK

    if cmd == "delta":
        cfg = _merge(args, [("system", str, None), ("function", str, "tau"),
                            ("mode", str, "exact")])
        system = _system_from(cfg)
        fn = parse_function(cfg["function"], system.k)
        mode = cfg["mode"]
        print("delta_star =", numeric.render(
            bounds.delta_factor_star(system, fn, mode), mode))
        if system.disc != 0:
            print("delta_general =", numeric.render(
                bounds.delta_factor_general(system, fn, mode), mode))
            if system.k == 1:
                cancel, plain = bounds.delta_factor_k1(system.q, fn, mode)
                print("delta_k1 =", numeric.render(cancel, mode))
                print("delta_k1_plain =", numeric.render(plain, mode))
        else:
            print("delta_general = (zero discriminant)")
        return EXIT_OK

    if cmd == "bound":
        cfg = _merge(args, [
            ("system", str, None), ("function", str, "tau"),
            ("variant", str, "main"), ("mode", str, "exact"),
            ("x", Fraction, None), ("y", Fraction, None),
            ("alpha", Fraction, Fraction(2, 3)), ("delta", Fraction, Fraction(1, 2)),
            ("A", Fraction, Fraction(2)), ("B", Fraction, Fraction(512)),
            ("eps", Fraction, Fraction(1, 601)), ("c0", Fraction, Fraction(1)),
        ])
        if cfg["x"] is None or cfg["y"] is None:
            raise DomainError("--x and --y are required")
        system = _system_from(cfg)
        fn = parse_function(cfg["function"], system.k)
        params = BoundParams(Fraction(cfg["alpha"]), Fraction(cfg["delta"]),
                             Fraction(cfg["A"]), Fraction(cfg["B"]),
                             Fraction(cfg["eps"]), Fraction(cfg["x"]),
                             Fraction(cfg["y"]), Fraction(cfg["c0"]))
        rep = bounds.validate_params(system, params, fn)
        for w in rep.warnings:
            print(f"warning: {w}", file=sys.stderr)
        mode = cfg["mode"]
        for variant in str(cfg["variant"]).split(","):
            v = bounds.rhs_variant(variant.strip(), system, fn, params, mode)
            print(f"{variant.strip()} = {numeric.render(v, mode)}")
        return EXIT_OK

    if cmd == "lhs":
        cfg = _merge(args, [("system", str, None), ("function", str, "tau"),
                            ("x", Fraction, None), ("y", Fraction, None),
                            ("mode", str, "exact")])
        if cfg["x"] is None or cfg["y"] is None:
            raise DomainError("--x and --y are required")
        system = _system_from(cfg)
        fn = parse_function(cfg["function"], system.k)
        t0 = time.perf_counter()
        if args.primes:
            value = lhs.prime_sum(system, fn, Fraction(cfg["x"]), Fraction(cfg["y"]))
        else:
            value = lhs.short_sum(system, fn, Fraction(cfg["x"]), Fraction(cfg["y"]))
        ms = (time.perf_counter() - t0) * 1000
        print(numeric.render(value, "exact"))
        print(f"# {ms:.1f} ms", file=sys.stderr)
        return EXIT_OK

    if cmd == "ratio":
        cfg = _merge(args, [
            ("family", str, "systems"), ("systems", str, ""),
            ("ells", str, ""), ("c-values", str, ""),
            ("function", str, "tau"), ("x", str, ""),
            ("y-exp", Fraction, None), ("variants", str, "main"),
            ("seed", int, 0), ("out", str, None), ("format", str, "csv"),
            ("mode", str, "exact"), ("max-spread", float, None),
            ("alpha", Fraction, Fraction(2, 3)), ("delta", Fraction, Fraction(1, 2)),
            ("A", Fraction, Fraction(2)), ("B", Fraction, Fraction(512)),
            ("eps", Fraction, Fraction(1, 601)), ("c0", Fraction, Fraction(1)),
        ])
        config = ExperimentConfig(
            family=cfg["family"],
            systems=tuple(s for s in str(cfg["systems"]).split(";") if s.strip()) or (),
            ells=parse_int_list(cfg["ells"]) if cfg["ells"] else (),
            c_values=parse_int_list(cfg["c-values"]) if cfg["c-values"] else (),
            function=cfg["function"],
            x_values=parse_int_list(cfg["x"]) if cfg["x"] else (),
            y_exponent=Fraction(cfg["y-exp"]) if cfg["y-exp"] is not None else None,
            variants=tuple(v.strip() for v in str(cfg["variants"]).split(",") if v.strip()),
            alpha=Fraction(cfg["alpha"]), delta=Fraction(cfg["delta"]),
            A=Fraction(cfg["A"]), B=Fraction(cfg["B"]), eps=Fraction(cfg["eps"]),
            c0=Fraction(cfg["c0"]), mode=cfg["mode"], seed=int(cfg["seed"]))
        if not config.x_values:
            raise DomainError("ratio needs at least one x value")
        report = run_ratio_experiment(config)
        return _finish_report(report, cfg["out"], cfg["format"], cfg["max-spread"])

    if cmd == "sweep":
        cfg = _merge(args, [("x", int, None), ("ells", str, "1..100"),
                            ("m", int, 2), ("out", str, None),
                            ("format", str, "csv"), ("mode", str, "exact"),
                            ("max-spread", float, None)])
        if cfg["x"] is None:
            raise DomainError("--x is required")
        report = sweep_shifted_pairs(int(cfg["x"]), parse_int_list(cfg["ells"]),
                                     m=int(cfg["m"]), mode=cfg["mode"])
        return _finish_report(report, cfg["out"], cfg["format"], cfg["max-spread"])

    if cmd == "lemmas":
        cfg = _merge(args, [("system", str, None), ("function", str, "tau"),
                            ("z", str, "100,1000"), ("prime-bound", int, 1000),
                            ("sigma", str, "one"), ("mode", str, "exact")])
        system = _system_from(cfg)
        fn = parse_function(cfg["function"], system.k)
        report = run_lemma_checks(system, fn, parse_int_list(cfg["z"]),
                                  prime_bound=int(cfg["prime-bound"]),
                                  sigma=cfg["sigma"])
        for row in report.rows:
            status = "ok" if row.passed else "FAIL"
            print(f"{status:4s} {row.check:26s} {row.parameter:14s} "
                  f"ratio={float(row.ratio):.6g}")
        if not report.passed:
            print("suite failure: a ceiling was exceeded", file=sys.stderr)
            return EXIT_SUITE
        return EXIT_OK

    raise DomainError(f"unknown command {cmd}")


def _finish_report(report, out, fmt, max_spread) -> int:
    summary = report.summary()
    for variant, stats in summary.items():
        print(f"{variant}: rows={stats['rows']} min={stats['min_ratio']} "
              f"max={stats['max_ratio']} spread={stats['spread']}")
    for note in report.notes:
        print(f"note: {note}", file=sys.stderr)
    if out:
        emit(report, out, fmt)
        print(f"wrote {out}")
    if max_spread is not None:
        for stats in summary.values():
            if stats["spread"] == "inf" or float(stats["spread"]) > max_spread:
                print("suite failure: ratio spread exceeds the ceiling",
                      file=sys.stderr)
                return EXIT_SUITE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
