"""Experiment runner: ratio experiments comparing left-hand sums against
their majorants across families, shifted-pair sweeps, numeric verification
of the auxiliary comparison inequalities, and CSV / JSON-lines reporting.

Reports are deterministic: given the same config and seed, exact mode
produces byte-identical output (wall times are zeroed there, since timing is
the one irreproducible column).
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import bounds, lhs, numeric, rootcount
from .arith import primes_up_to
from .bounds import BoundParams, shifted_pair_system, validate_params
from .errors import DomainError, ZeroValueError
from .mfunc import MultiplicativeFunction, parse_function, tau_m_function
from .numeric import CTX, EXACT, check_mode
from .polys import build_factored_system, parse_poly

CSV_COLUMNS = ("family_param", "x", "y", "variant", "lhs", "rhs", "ratio",
               "delta_factor", "millis")


@dataclass
class RatioRow:
    family_param: str
    x: object
    y: object
    variant: str
    lhs: object
    rhs: object
    ratio: object
    delta_factor: object
    millis: int

    def rendered(self, mode: str) -> dict[str, str]:
        return {
            "family_param": str(self.family_param),
            "x": numeric.render(self.x, mode),
            "y": numeric.render(self.y, mode),
            "variant": self.variant,
            "lhs": numeric.render(self.lhs, mode),
            "rhs": numeric.render(self.rhs, mode),
            "ratio": numeric.render(self.ratio, mode),
            "delta_factor": numeric.render(self.delta_factor, mode),
            "millis": str(self.millis),
        }


@dataclass
class RatioReport:
    mode: str
    meta: dict = field(default_factory=dict)
    rows: list[RatioRow] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def summary(self) -> dict:
        out = {}
        by_variant: dict[str, list] = {}
        for row in self.rows:
            by_variant.setdefault(row.variant, []).append(
                numeric.as_comparable(row.ratio))
        for variant, ratios in sorted(by_variant.items()):
            lo, hi = min(ratios), max(ratios)
            out[variant] = {
                "rows": len(ratios),
                "min_ratio": str(lo),
                "max_ratio": str(hi),
                "spread": str(CTX.divide(hi, lo)) if lo > 0 else "inf",
            }
        return out


@dataclass
class ExperimentConfig:
    family: str = "systems"                      # shifted_pairs | systems | quadratic_sweep
    ells: tuple[int, ...] = ()
    systems: tuple[str, ...] = ()
    c_values: tuple[int, ...] = ()
    function: str = "tau"
    x_values: tuple[int, ...] = ()
    y_exponent: Optional[Fraction] = None        # y = x^theta
    y_values: tuple[Fraction, ...] = ()
    variants: tuple[str, ...] = ("main",)
    alpha: Fraction = Fraction(2, 3)
    delta: Fraction = Fraction(1, 2)
    A: Fraction = Fraction(2)
    B: Fraction = Fraction(512)
    eps: Fraction = Fraction(1, 601)
    c0: Fraction = Fraction(1)
    mode: str = EXACT
    seed: int = 0
    out: Optional[str] = None
    fmt: str = "csv"

    def members(self) -> list[tuple[str, object]]:
        if self.family == "shifted_pairs":
            if not self.ells:
                return []
            return [(str(ell), shifted_pair_system(ell))
                    for ell in sorted(set(self.ells))]
        if self.family == "quadratic_sweep":
            return [(f"c={c}", build_factored_system([f"{c},0,1"]))
                    for c in sorted(set(self.c_values))]
        out = []
        for spec in self.systems:
            out.append((spec, parse_system_spec(spec)))
        return out

    def y_for(self, x: int) -> Fraction:
        if self.y_values:
            i = list(self.x_values).index(x)
            return Fraction(self.y_values[min(i, len(self.y_values) - 1)])
        theta = self.y_exponent if self.y_exponent is not None else Fraction(2, 3)
        return power_ceil(x, theta)


def power_ceil(x, theta: Fraction, grain: int = 10**6) -> Fraction:
    """The least multiple of 1/grain that is >= x^theta (exact check)."""
    import math as _m

    y = Fraction(_m.ceil(float(x) ** float(theta) * grain), grain)
    while Fraction(x) ** theta.numerator > y ** theta.denominator:
        y += Fraction(1, grain)
    return y


def parse_system_spec(spec: str):
    """A system given inline or as a file path.

    Inline: semicolon-separated factor polynomials with an optional '|'
    exponent matrix ("x;x+2" or "x;x+2|1 0;0 1").  A path to an existing
    file is read in the flat config format with keys ``factors`` (semicolon
    list) and optional ``exponents`` (rows semicolon-separated, entries
    space-separated).
    """
    spec = spec.strip()
    path = Path(spec)
    if ("=" not in spec and "|" not in spec and len(spec) < 4096
            and path.is_file()):
        data = load_config_file(path)
        if "factors" not in data:
            raise DomainError(f"system file {spec} lacks a 'factors' key")
        fpart = data["factors"]
        epart = data.get("exponents", "")
    elif "|" in spec:
        fpart, _, epart = spec.partition("|")
    else:
        fpart, epart = spec, ""
    exps = ([[int(v) for v in row.split()] for row in epart.split(";")]
            if epart.strip() else None)
    factors = [parse_poly(t) for t in fpart.split(";") if t.strip()]
    return build_factored_system(factors, exps)


def run_ratio_experiment(config: ExperimentConfig) -> RatioReport:
    """LHS and the selected RHS majorants on every grid point of the family.

    Zero-value rows are aborted individually with a note; everything else is
    deterministic given the config (and its seed, via random:* functions).
    """
    mode = check_mode(config.mode)
    report = RatioReport(mode=mode, meta={
        "family": config.family, "function": config.function,
        "variants": ",".join(config.variants), "mode": mode,
        "seed": config.seed,
        "alpha": str(config.alpha), "delta": str(config.delta),
        "A": str(config.A), "B": str(config.B), "eps": str(config.eps),
        "c0": str(config.c0),
    })
    for param, system in config.members():
        fn = parse_function(_seeded_name(config.function, config.seed),
                            system.k)
        for x in config.x_values:
            y = config.y_for(int(x))
            params = BoundParams(config.alpha, config.delta, config.A,
                                 config.B, config.eps, Fraction(x), y,
                                 config.c0)
            vrep = validate_params(system, params, fn)
            for w in vrep.warnings:
                note = f"{param} x={x}: {w}"
                if note not in report.notes:
                    report.notes.append(note)
            interval_table = None
            for variant in config.variants:
                t0 = time.perf_counter()
                try:
                    if variant == "holowinsky":
                        row = _holowinsky_row(config, param, system, x, mode)
                    else:
                        if interval_table is None:
                            interval_table = lhs.factor_interval(system, x, y)
                        row = _short_interval_row(
                            config, param, system, fn, params, variant,
                            interval_table, mode)
                except (ZeroValueError, DomainError) as exc:
                    report.notes.append(
                        f"row aborted ({param}, x={x}, {variant}): {exc}")
                    continue
                row.millis = (0 if mode == EXACT
                              else int((time.perf_counter() - t0) * 1000))
                report.rows.append(row)
    report.rows.sort(key=lambda r: (_numeric_key(r.family_param),
                                    float(numeric.as_comparable(r.x)),
                                    r.variant))
    return report


def _numeric_key(s: str):
    try:
        return (0, float(s), s)
    except ValueError:
        return (1, 0.0, s)


def _seeded_name(function_name: str, seed: int) -> str:
    """The bare "random" builtin picks up the experiment seed."""
    if function_name.strip().lower() == "random":
        return f"random:{seed}"
    return function_name


def _short_interval_row(config, param, system, fn, params, variant, table,
                        mode) -> RatioRow:
    if variant == "primes":
        left = lhs.prime_sum(system, fn, params.x, params.y, table=table)
    else:
        left = lhs.short_sum(system, fn, params.x, params.y, table=table)
    right = bounds.rhs_variant(variant, system, fn, params, mode)
    delta = _delta_for(variant, system, fn, mode)
    lv = numeric.convert(left, mode)
    ratio = _safe_ratio(lv, right, mode)
    return RatioRow(param, params.x_int, params.y, variant, lv, right, ratio,
                    delta, 0)


def _holowinsky_row(config, param, system, x, mode) -> RatioRow:
    ell = int(param)
    m = _tau_order(config.function)
    lam = tau_m_function(m, 1)
    pair_sums = lhs.shifted_pair_sums([ell], m, int(x))
    left = pair_sums[ell]
    right = bounds.rhs_holowinsky(ell, lam, lam, int(x), mode, system=system)
    pair_fn = parse_function(config.function, 2)
    delta = bounds.delta_factor_general(system, pair_fn, mode)
    lv = numeric.convert(left, mode)
    ratio = _safe_ratio(lv, right, mode)
    return RatioRow(param, int(x), int(x), "holowinsky", lv, right, ratio,
                    delta, 0)


def _tau_order(function_name: str) -> int:
    name, _, arg = function_name.partition(":")
    if name.strip().lower() == "tau":
        return 2
    if name.strip().lower() == "tau_m":
        return int(arg)
    raise DomainError(
        "the shifted-pair sweep needs a divisor-power function (tau/tau_m)")


def _delta_for(variant, system, fn, mode):
    if variant in ("cor-disc", "cor-mult", "primes"):
        return bounds.delta_factor_star(system, fn, mode)
    if variant == "shiu":
        d, _ = bounds.delta_factor_k1(system.q, fn, mode)
        return d
    return numeric.convert(Fraction(1), mode)


def _safe_ratio(left, right, mode):
    rc = numeric.as_comparable(right)
    if rc == 0:
        return numeric.convert(Fraction(0), mode)
    if mode == EXACT and isinstance(left, (int, Fraction)) \
            and isinstance(right, (int, Fraction)):
        return Fraction(left) / Fraction(right)
    return CTX.divide(numeric.to_decimal(left), numeric.to_decimal(right))


def sweep_shifted_pairs(x: int, ells, m: int = 2, mode: str = EXACT,
                        seed: int = 0) -> RatioReport:
    """Shifted-pair family: LHS sum_{n<=x} tau_m(n) tau_m(n+ell) against the
    shifted-pair majorant, one row per shift, plus the empirical mean of the
    local discriminant factor over the range."""
    check_mode(mode)
    ells = sorted(set(int(e) for e in ells))
    if any(e < 1 for e in ells):
        raise DomainError("shifts must be >= 1")
    report = RatioReport(mode=mode, meta={
        "family": "shifted_pairs", "function": f"tau_m:{m}",
        "variants": "holowinsky", "mode": mode, "seed": seed, "x": str(x),
    })
    sums = lhs.shifted_pair_sums(ells, m, int(x))
    lam = tau_m_function(m, 1)
    pair_fn = tau_m_function(m, 2)
    deltas = []
    for ell in ells:
        t0 = time.perf_counter()
        system = shifted_pair_system(ell)
        right = bounds.rhs_holowinsky(ell, lam, lam, int(x), mode, system=system)
        delta = bounds.delta_factor_general(system, pair_fn, EXACT)
        deltas.append(delta)
        lv = numeric.convert(sums[ell], mode)
        millis = (0 if mode == EXACT
                  else int((time.perf_counter() - t0) * 1000))
        report.rows.append(RatioRow(str(ell), int(x), int(x), "holowinsky",
                                    lv, right, _safe_ratio(lv, right, mode),
                                    numeric.convert(delta, mode), millis))
    mean = numeric.sum_exact([Fraction(d) for d in deltas]) / len(deltas)
    report.meta["mean_delta_factor"] = numeric.render(
        mean if mode == EXACT else numeric.to_decimal(mean), mode)
    return report


def delta_factor_mean(ells, m: int = 2) -> Fraction:
    """Exact mean of the shifted-pair local factor over a shift range."""
    pair_fn = tau_m_function(m, 2)
    total = []
    ells = list(ells)
    for ell in ells:
        system = shifted_pair_system(ell)
        total.append(Fraction(bounds.delta_factor_general(system, pair_fn, EXACT)))
    return numeric.sum_exact(total) / len(ells)


# --- numeric checks of the auxiliary comparison inequalities ----------------


@dataclass
class LemmaCeilings:
    """Configurable pass thresholds; the inequalities' implied constants are
    never specified (they grow with g, A, B and the bounded sigma weights),
    so these are generous empirical ceilings, recorded in every report
    header."""

    h2_sup: float = 2000.0
    h3_sup: float = 2000.0
    theta_ratio: float = 100.0
    beta_ratio: float = 5000.0
    shrink_exponent: float = 12.0
    smooth_bounded_ratio: float = 1000.0


@dataclass
class LemmaRow:
    check: str
    parameter: str
    lhs: object
    rhs: object
    ratio: object
    passed: bool


@dataclass
class LemmaReport:
    rows: list[LemmaRow] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)


def _lambda_weight(g: int, invert: bool = False):
    """sigma/theta weight (n/phi(n))^g on prime powers, or its inverse."""
    def weight(p: int, exps) -> Fraction:
        s = sum(1 for e in exps if e >= 1)
        base = Fraction(p, p - 1) ** (g * s)
        return 1 / base if invert else base

    return weight


def _h_value(system, ftilde, parts, sigma=None) -> Fraction:
    import math as _m

    from .arith import factor as _factor

    hat = rootcount.rho_hat(system, parts)
    if hat == 0:
        return Fraction(0)
    modulus = 1
    for v in parts:
        if v > 1:
            k = 1
            for p, _ in _factor(v):
                k *= p
            modulus = _m.lcm(modulus, v * k)
    out = ftilde.value(parts) * Fraction(hat, modulus)
    if sigma is not None:
        per_prime: dict[int, list[int]] = {}
        for h, v in enumerate(parts):
            for p, e in _factor(v):
                per_prime.setdefault(p, [0] * len(parts))[h] = e
        for p, exps in per_prime.items():
            out *= sigma(p, tuple(exps))
    return out


_SIGMA_CHOICES = ("one", "lambda", "lambda_inv")


def run_lemma_checks(system, fn: MultiplicativeFunction, z_values,
                     ceilings: LemmaCeilings | None = None,
                     prime_bound: int = 1000,
                     sigma: str = "one") -> LemmaReport:
    """Numeric two-sided verification of the comparison inequalities used to
    assemble the majorant: local sum bounds (h2/h3), the theta-weighted and
    beta-weighted comparisons, smoothness shrinking, and the smooth-support
    versus product-bounded comparison (whose lower direction is an exact
    containment, asserted at ratio >= 1).

    ``sigma`` picks the bounded multiplicative weight baked into H and T:
    one of "one", "lambda" ((n/phi(n))^g) or "lambda_inv".
    """
    ceilings = ceilings or LemmaCeilings()
    if sigma not in _SIGMA_CHOICES:
        raise DomainError(f"sigma must be one of {_SIGMA_CHOICES}")
    report = LemmaReport(meta={
        "system": repr(system), "function": fn.name, "sigma": sigma,
        "ceilings": json.dumps(ceilings.__dict__, sort_keys=True),
    })
    ftilde = bounds.system_pushforward(system, fn)
    g = system.g
    sig = (None if sigma == "one"
           else _lambda_weight(g, invert=(sigma == "lambda_inv")))

    def sig_at(p, exps) -> Fraction:
        return Fraction(1) if sig is None else sig(p, exps)

    # h1: H(a b) <= T(b) H(a) on coprime tuple pairs, exact
    small, large = [1, 2, 3, 4, 5, 8, 9], [1, 7, 11, 13, 49]
    violations = 0
    checked = 0
    for a1 in small:
        for b1 in large:
            parts_a = (a1,) + (1,) * (system.r - 1)
            parts_b = (b1,) + (1,) * (system.r - 1)
            prod = tuple(x * y for x, y in zip(parts_a, parts_b))
            ha = _h_value(system, ftilde, parts_a, sig)
            hb = _h_value(system, ftilde, prod, sig)
            tb = _h_value(system, ftilde, parts_b, sig)
            checked += 1
            if hb > tb * ha:
                violations += 1
    report.rows.append(LemmaRow("h1_submult", f"{checked} pairs",
                                violations, 0, violations, violations == 0))

    # h2/h3: local sums against 1/p and p^(-5/4)
    cap = 2 * g + 6
    sup2 = Fraction(0)
    sup3 = 0.0
    for p in primes_up_to(prime_bound):
        local2 = Fraction(0)
        local3 = 0.0
        for exps in bounds._exp_tuples(system.r, cap):
            hat = rootcount.rho_hat_pp(system, exps, p)
            if hat == 0:
                continue
            m_exp = max(e + 1 for e in exps if e >= 1)
            t_val = (ftilde.local(p, exps) * Fraction(hat, p**m_exp)
                     * sig_at(p, exps))
            local2 += t_val
            s = sum(exps)
            if s > 2 * g:
                local3 += float(t_val) * float(p) ** (s / (4 * g))
        sup2 = max(sup2, local2 * p)
        sup3 = max(sup3, local3 * float(p) ** 1.25)
    report.rows.append(LemmaRow("h2_local", f"p<={prime_bound}",
                                float(sup2), ceilings.h2_sup, float(sup2),
                                float(sup2) <= ceilings.h2_sup))
    report.rows.append(LemmaRow("h3_tail", f"p<={prime_bound}",
                                sup3, ceilings.h3_sup, sup3,
                                sup3 <= ceilings.h3_sup))

    for z in sorted(int(z) for z in z_values):
        plain_table = bounds._OptionTable(system, ftilde, z, extra=sig)
        plain = bounds._tuple_sum_dfs(plain_table, z, EXACT)
        # theta weighting, both directions
        for tag, invert in (("lambda", False), ("lambda_inv", True)):
            theta = _lambda_weight(g, invert)
            extra = (theta if sig is None
                     else (lambda p, e: sig(p, e) * theta(p, e)))
            table = bounds._OptionTable(system, ftilde, z, extra=extra)
            weighted = bounds._tuple_sum_dfs(table, z, EXACT)
            ratio = weighted / plain
            worst = max(ratio, 1 / ratio)
            report.rows.append(LemmaRow(
                f"theta_weight[{tag}]", f"z={z}", weighted, plain,
                float(ratio), float(worst) <= ceilings.theta_ratio))
        # smooth support vs product bound; lower direction is exact
        smooth = bounds.smooth_tuple_product(system, ftilde, z, EXACT,
                                             extra=sig)
        ratio = Fraction(smooth) / Fraction(plain)
        report.rows.append(LemmaRow(
            "smooth_vs_bounded", f"z={z}", smooth, plain, float(ratio),
            ratio >= 1 and float(ratio) <= ceilings.smooth_bounded_ratio))
        # beta weighting on the smooth sum; the comparison is only claimed
        # for z >= e^{4g} (chi = 1), so smaller z are informational
        import math as _m

        beta = Fraction(1, max(1, _m.ceil(float(numeric.dec_log(z)))))
        boosted = _smooth_product_boosted(system, ftilde, z, beta, sig)
        base = numeric.to_decimal(smooth)
        bratio = float(CTX.divide(boosted, base))
        in_regime = float(z) >= float(numeric.dec_exp(4 * g))
        report.rows.append(LemmaRow(
            f"beta_weight[{'in' if in_regime else 'below'}_regime]",
            f"z={z}", float(boosted), float(base), bratio,
            (not in_regime) or bratio <= ceilings.beta_ratio))
        # smoothness shrinking z -> z^(1/K)
        for kk in (2, 4):
            zk = max(2, int(round(float(z) ** (1 / kk))))
            shrunk = bounds.smooth_tuple_product(system, ftilde, zk, EXACT,
                                                 extra=sig)
            ratio = Fraction(smooth) / Fraction(shrunk)
            expo = (float(numeric.dec_log(max(1.0, float(ratio))))
                    / float(numeric.dec_log(kk)))
            report.rows.append(LemmaRow(
                "smooth_shrink", f"z={z},K={kk}", smooth, shrunk, expo,
                expo <= ceilings.shrink_exponent))
    return report


def _smooth_product_boosted(system, ftilde, z: int, beta: Fraction, sig=None):
    """Float-mode smooth product with the extra weight p^(beta * sum nu)."""
    acc = CTX.create_decimal(1)
    for p in primes_up_to(z):
        cap = max(2 * system.g + 2, bounds._ilog(z, p) + 2)
        local = CTX.create_decimal(1)
        for exps in bounds._exp_tuples(system.r, cap):
            hat = rootcount.rho_hat_pp(system, exps, p)
            if hat == 0:
                continue
            m_exp = max(e + 1 for e in exps if e >= 1)
            w = ftilde.local(p, exps) * Fraction(hat, p**m_exp)
            if sig is not None:
                w *= sig(p, exps)
            boost = numeric.dec_pow(p, beta * sum(exps))
            local = CTX.add(local, CTX.multiply(numeric.to_decimal(w), boost))
        acc = CTX.multiply(acc, local)
    return acc


# --- emission ----------------------------------------------------------------


def emit(report: RatioReport, path, fmt: str = "csv") -> None:
    """Write a report; csv has a fixed header and documented column order,
    jsonl carries one row object per line after a meta record."""
    if fmt not in ("csv", "jsonl"):
        raise DomainError(f"unknown format {fmt!r}")
    import csv as _csv
    import io

    path = Path(path)
    mode = report.mode
    if fmt == "csv":
        buf = io.StringIO()
        for key in sorted(report.meta):
            buf.write(f"# {key}={report.meta[key]}\n")
        for note in report.notes:
            buf.write(f"# note={note}\n")
        writer = _csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in report.rows:
            r = row.rendered(mode)
            writer.writerow([r[c] for c in CSV_COLUMNS])
        path.write_text(buf.getvalue())
        return
    with path.open("w") as fh:
        fh.write(json.dumps({"meta": report.meta, "notes": report.notes,
                             "summary": report.summary()},
                            sort_keys=True) + "\n")
        for row in report.rows:
            fh.write(json.dumps(row.rendered(mode), sort_keys=True) + "\n")


def parse_csv(path) -> list[dict[str, str]]:
    """Inverse of the csv emitter for the row schema (meta lines skipped)."""
    import csv as _csv

    lines = [ln for ln in Path(path).read_text().splitlines()
             if ln and not ln.startswith("#")]
    reader = _csv.reader(lines)
    header = next(reader, None)
    if header is None:
        return []
    return [dict(zip(header, row)) for row in reader]


# --- flat key=value config files ---------------------------------------------


def load_config_file(path) -> dict[str, str]:
    """Flat config: one ``key = value`` per line, '#' comments."""
    out: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"bad config line {raw!r}")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def parse_int_list(text: str) -> tuple[int, ...]:
    """Comma-separated ints with a..b range syntax ("1..5,10" -> 1..5,10)."""
    out: list[int] = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            a, _, b = part.partition("..")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return tuple(out)
