"""Right-hand sides: sifted Euler products, truncated majorant sums, the
discriminant-local factors, and the assembled bound for each inequality
variant (main / cor-disc / cor-mult / shiu / holowinsky / primes).

Everything rational is computed exactly or in 36-digit decimal according to
``mode``; log/exp factors are always decimal and taint the result (see
``numeric``).  Sums over tuples run through one multiplicative enumerator
with per-prime option lists; primes outside the exceptional set of the
system use closed-form local counts, the rest go through the exact local
machinery in ``rootcount``.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import numeric, rootcount
from .arith import factor, phi, primes_up_to
from .errors import DomainError, ParamError
from .mfunc import (ClassBudget, MultiplicativeFunction,
                    check_membership, minimal_majorant, pushforward)
from .numeric import CTX, EXACT, FLOAT, accumulate_product, accumulate_sum, check_mode
from .polys import FactoredSystem, IntPoly


@dataclass
class BoundParams:
    """Parameters (alpha, delta, A, B, eps, x, y) plus the configurable
    stand-in c0 for the admissible-range constant."""

    alpha: Fraction
    delta: Fraction
    A: Fraction
    B: Fraction
    eps: Fraction
    x: Fraction
    y: Fraction
    c0: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("alpha", "delta", "A", "B", "eps", "x", "y", "c0"):
            setattr(self, name, Fraction(getattr(self, name)))

    @property
    def budget(self) -> ClassBudget:
        return ClassBudget(self.A, self.B, self.eps)

    @property
    def x_int(self) -> int:
        return int(self.x)

    @property
    def interval(self) -> tuple[int, int]:
        """Integers in (x, x+y] as an inclusive range (lo, hi)."""
        return int(self.x) + 1, int(self.x + self.y)


@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    flags: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.errors


def _frac_pow_le(base: Fraction, expo: Fraction, bound: Fraction) -> bool:
    """Exact test of base**expo <= bound for base, bound > 0, expo > 0."""
    a, b = expo.numerator, expo.denominator
    return base**a <= bound**b


def validate_params(system: FactoredSystem, params: BoundParams,
                    fn: Optional[MultiplicativeFunction] = None,
                    check_class: bool = False) -> ValidationReport:
    """Hypothesis check for the main bound; c0-dependent conditions are
    warnings (c0 is a configurable stand-in), the rest are errors."""
    rep = ValidationReport()
    p = params
    if not (0 < p.alpha < 1):
        rep.errors.append("alpha must lie in (0,1)")
    if not (0 < p.delta < 1):
        rep.errors.append("delta must lie in (0,1)")
    if p.A < 1 or p.B < 1:
        rep.errors.append("A and B must be >= 1")
    if p.eps <= 0:
        rep.errors.append("eps must be positive")
    if p.x <= 0 or p.y <= 0:
        rep.errors.append("x and y must be positive")
    if p.c0 < 1:
        rep.errors.append("c0 must be >= 1")
    if rep.errors:
        return rep
    g = system.g
    eps_cap = p.alpha / (50 * g * (g + 1 / p.delta))
    rep.flags["main_regime"] = p.eps < eps_cap
    rep.flags["classical_regime"] = p.eps <= p.alpha * p.delta / (12 * g * g)
    if not rep.flags["main_regime"]:
        rep.errors.append(
            f"eps={p.eps} is not below alpha/(50 g (g+1/delta)) = {eps_cap}")
    if not _frac_pow_le(p.x, p.alpha, p.y):
        rep.errors.append("y < x^alpha")
    if p.y > p.x:
        rep.errors.append("y > x")
    norm = Fraction(system.norm())
    if not _frac_pow_le(norm, p.delta, p.x / p.c0):
        rep.warnings.append(f"x < c0 * norm(Q)^delta (norm={norm})")
    if fn is not None:
        if fn.arity != system.k:
            rep.errors.append(
                f"function arity {fn.arity} != system k={system.k}")
        if check_class:
            mrep = check_membership(fn, params.budget)
            if not mrep.passed:
                rep.warnings.append(
                    f"class membership fails on the grid at {mrep.first_violation}")
    return rep


def _require_valid(system, params, fn=None) -> ValidationReport:
    rep = validate_params(system, params, fn)
    if not rep.ok:
        raise ParamError(rep.errors)
    return rep


def system_pushforward(system: FactoredSystem, fn: MultiplicativeFunction
                       ) -> MultiplicativeFunction:
    """F composed with the exponent matrix, cached on the system."""
    if fn.arity != system.k:
        raise DomainError(f"function arity {fn.arity} != system k={system.k}")
    key = ("pushforward", fn.name, fn.arity)
    cache = system._cache
    if key not in cache:
        cache[key] = pushforward(fn, system.exponents, degree_bound=system.g)
    return cache[key]


# --- sifted Euler product ---------------------------------------------------


def sifted_product(system: FactoredSystem, x, mode: str = EXACT):
    """prod_{g < p <= x} (1 - rho(p)/p); every factor is in (0, 1]."""
    check_mode(mode)
    xi = int(x)
    if xi <= system.g:
        return numeric.convert(Fraction(1), mode)
    primes, counts = rootcount.rho_table(system, xi)
    factors = (
        Fraction(int(p) - int(c), int(p))
        for p, c in zip(primes.tolist(), counts.tolist())
        if p > system.g
    )
    return accumulate_product(factors, mode)


# --- multiplicative tuple sums ----------------------------------------------


class _OptionTable:
    """Per-prime option lists (p^{sum nu}, rational weight) for the tuple
    enumerators, built lazily and sorted by the product contribution.

    weight(p, nu_vec) = ftilde(p^{nu}) * rho_hat_p(nu) / p^{max nu_h + 1},
    optionally times ``extra(p, nu_vec)``.
    """

    def __init__(self, system: FactoredSystem, ftilde: MultiplicativeFunction,
                 limit: int, extra: Optional[Callable] = None):
        self.system = system
        self.ftilde = ftilde
        self.limit = limit
        self.extra = extra
        self.primes = primes_up_to(limit)
        self._factor_tables = [
            rootcount.factor_rho_table(system, h, limit)[1]
            for h in range(system.r)
        ]
        self._built: dict[int, list[tuple[int, Fraction]]] = {}

    def options(self, j: int) -> list[tuple[int, Fraction]]:
        opts = self._built.get(j)
        if opts is None:
            opts = self._build(j)
            self._built[j] = opts
        return opts

    def _build(self, j: int) -> list[tuple[int, Fraction]]:
        p = self.primes[j]
        system = self.system
        out: list[tuple[int, Fraction]] = []
        if rootcount.stable_prime(system, p):
            # single-coordinate tuples only; exact-count p^nu || is
            # rho_h(p) (p-1) at every level nu >= 1
            for h in range(system.r):
                rho_h = int(self._factor_tables[h][j])
                if rho_h == 0:
                    continue
                pp = p
                nu = 1
                while pp <= self.limit:
                    exps = tuple(nu if i == h else 0 for i in range(system.r))
                    w = (self.ftilde.local(p, exps)
                         * rho_h * (p - 1) / Fraction(pp * p))
                    if self.extra is not None:
                        w *= self.extra(p, exps)
                    if w:
                        out.append((pp, w))
                    pp *= p
                    nu += 1
        else:
            max_total = 0
            pp = 1
            while pp <= self.limit // p:
                pp *= p
                max_total += 1
            for exps in _exp_tuples(system.r, max_total):
                hat = rootcount.rho_hat_pp(system, exps, p)
                if hat == 0:
                    continue
                m = max(e + 1 for e in exps if e >= 1)
                w = self.ftilde.local(p, exps) * hat / Fraction(p**m)
                if self.extra is not None:
                    w *= self.extra(p, exps)
                if w:
                    out.append((p ** sum(exps), w))
        out.sort(key=lambda t: t[0])
        return out


def _exp_tuples(r: int, max_total: int):
    """Nonzero exponent tuples with 1 <= sum <= max_total."""
    def rec(slots, budget):
        if slots == 1:
            for v in range(budget + 1):
                yield (v,)
            return
        for v in range(budget + 1):
            for rest in rec(slots - 1, budget - v):
                yield (v,) + rest

    for t in rec(r, max_total):
        if any(t):
            yield t


def _tuple_sum_dfs(table: _OptionTable, x: int, mode: str):
    """Sum of prod-of-weights over all tuples with total product <= x."""
    primes = table.primes
    one = numeric.convert(Fraction(1), mode)
    if mode == FLOAT:
        total = CTX.create_decimal(0)

        def emit(v):
            nonlocal total
            total = CTX.add(total, v)
    else:
        terms: list[Fraction] = []
        emit = terms.append

    conv: dict[int, list] = {}

    def converted(j, opts):
        vals = conv.get(j)
        if vals is None:
            vals = [numeric.convert(w, mode) for _, w in opts]
            conv[j] = vals
        return vals

    def rec(i: int, cur, budget: int):
        emit(cur)
        hi = bisect_right(primes, budget, lo=i)
        for j in range(i, hi):
            opts = table.options(j)
            if not opts:
                continue
            vals = converted(j, opts)
            for idx, (pp, _) in enumerate(opts):
                if pp > budget:
                    break
                rec(j + 1, cur * vals[idx], budget // pp)

    rec(0, one, x)
    if mode == FLOAT:
        return total
    return numeric.sum_exact(terms)


def majorant_sum(system: FactoredSystem, fn: MultiplicativeFunction, x,
                 mode: str = EXACT, pushed: bool = False):
    """Truncated weighted sum over factor tuples:
    sum_{n_1...n_r <= x} Ftilde(n) rho_hat(n) / lcm(n_h kappa(n_h)),
    by exhaustive recursive enumeration over supported tuples."""
    check_mode(mode)
    xi = int(x)
    if xi < 1:
        raise DomainError("majorant_sum needs x >= 1")
    ftilde = fn if pushed else system_pushforward(system, fn)
    if ftilde.arity != system.r:
        raise DomainError("pushed function arity must equal the factor count")
    table = _OptionTable(system, ftilde, xi)
    return _tuple_sum_dfs(table, xi, mode)


def smooth_tuple_product(system: FactoredSystem, ftilde: MultiplicativeFunction,
                         z: int, mode: str = EXACT,
                         extra: Optional[Callable] = None,
                         cap_headroom: int = 2):
    """sum over tuples supported on primes <= z of the same weights, as the
    Euler product prod_{p<=z} (1 + sum_options); exponent totals are capped
    at max(2g+2, floor(log_p z) + cap_headroom), which keeps every tuple of
    the product-bounded sum inside the index set (tested containment)."""
    check_mode(mode)
    z = int(z)
    if z < 2:
        return numeric.convert(Fraction(1), mode)
    factors = []
    for p in primes_up_to(z):
        cap = max(2 * system.g + 2, _ilog(z, p) + cap_headroom)
        local = Fraction(0)
        for exps in _exp_tuples(system.r, cap):
            hat = rootcount.rho_hat_pp(system, exps, p)
            if hat == 0:
                continue
            m = max(e + 1 for e in exps if e >= 1)
            w = ftilde.local(p, exps) * hat / Fraction(p**m)
            if extra is not None:
                w *= extra(p, exps)
            local += w
        factors.append(1 + local)
    return accumulate_product(iter(factors), mode)


def _ilog(n: int, p: int) -> int:
    out = 0
    pp = p
    while pp <= n:
        out += 1
        pp *= p
    return out


# --- discriminant-local factors ----------------------------------------------


def delta_factor_star(system: FactoredSystem, fn: MultiplicativeFunction,
                      mode: str = EXACT, pushed: bool = False):
    """prod over p | D* of (1 + sum over 1 <= nu_h <= deg R_h of
    Gtilde(p^nu) rho_hat_p(nu) / p^{max nu + 1}); 1 for unit discriminant."""
    check_mode(mode)
    gt = fn if pushed else system_pushforward(system, minimal_majorant(fn))
    d = abs(system.dstar)
    if d == 1:
        return numeric.convert(Fraction(1), mode)
    out = Fraction(1)
    degs = system.factor_degrees
    for p in factor(d).primes:
        local = Fraction(0)
        for exps in _bounded_tuples(degs):
            hat = rootcount.rho_hat_pp(system, exps, p)
            if hat == 0:
                continue
            m = max(e + 1 for e in exps if e >= 1)
            local += gt.local(p, exps) * hat / Fraction(p**m)
        out *= 1 + local
    return numeric.convert(out, mode)


def _bounded_tuples(bounds):
    """Nonzero tuples with 0 <= t_h <= bounds[h]."""
    def rec(i):
        if i == len(bounds):
            yield ()
            return
        for v in range(bounds[i] + 1):
            for rest in rec(i + 1):
                yield (v,) + rest

    for t in rec(0):
        if any(t):
            yield t


def delta_factor_k1(poly: IntPoly, fn: MultiplicativeFunction,
                    mode: str = EXACT):
    """Single-polynomial local factors over p | D = disc(Q):

    cancellation-aware:  1 + sum_{nu<=g} f(p^nu)(rho(p^nu)/p^nu - rho(p^{nu+1})/p^{nu+1})
    plain divisibility:  1 + sum_{nu<=g} f(p^nu) rho(p^nu)/p^nu

    Returns (cancel, plain); requires D != 0.
    """
    check_mode(mode)
    if fn.arity != 1:
        raise DomainError("delta_factor_k1 needs a one-variable function")
    if poly.degree < 1:
        raise DomainError("degree must be >= 1")
    d = discriminant_of(poly)
    if d == 0:
        raise DomainError("zero discriminant: use delta_factor_star instead")
    g = poly.degree
    cancel = Fraction(1)
    plain = Fraction(1)
    for p in factor(abs(d)).primes:
        rho_pows = [rootcount.rho_pp(poly, p, nu) for nu in range(g + 2)]
        s_cancel = Fraction(0)
        s_plain = Fraction(0)
        for nu in range(1, g + 1):
            fval = fn.local(p, (nu,))
            s_cancel += fval * (Fraction(rho_pows[nu], p**nu)
                                - Fraction(rho_pows[nu + 1], p ** (nu + 1)))
            s_plain += fval * Fraction(rho_pows[nu], p**nu)
        cancel *= 1 + s_cancel
        plain *= 1 + s_plain
    return numeric.convert(cancel, mode), numeric.convert(plain, mode)


def discriminant_of(poly: IntPoly) -> int:
    from .polys import discriminant

    return discriminant(poly)


def delta_factor_general(system: FactoredSystem, fn: MultiplicativeFunction,
                         mode: str = EXACT):
    """Local factors over p | D = disc(Q) with the exact-power counts of the
    composite polynomials Q_j, the inner count by exhaustive residue scan:

    prod_{p|D} (1 + sum_{1 <= nu_j <= deg Q_j} F(p^nu) *
                #{n mod p^{max nu + 1} : p^{nu_j} || Q_j(n)} / p^{max nu + 1})

    The exponent tuples run over all-positive vectors: that is the index set
    under which the k = 1 case collapses to the cancellation form of
    :func:`delta_factor_k1`, and it keeps the factor at 1 + O(1/p).
    """
    check_mode(mode)
    if fn.arity != system.k:
        raise DomainError("function arity must equal k")
    d = system.disc
    if d == 0:
        raise DomainError("zero discriminant: use delta_factor_star instead")
    if abs(d) == 1:
        return numeric.convert(Fraction(1), mode)
    degs = [q.degree for q in system.polys]
    out = Fraction(1)
    cache = system._cache
    for p in factor(abs(d)).primes:
        local = Fraction(0)
        for exps in _positive_tuples(degs):
            key = ("qj_exact_count", p, exps)
            cnt = cache.get(key)
            m = max(e for e in exps) + 1
            if cnt is None:
                cnt = _qj_exact_count(system, p, exps, m)
                cache[key] = cnt
            if cnt:
                local += fn.local(p, exps) * Fraction(cnt, p**m)
        out *= 1 + local
    return numeric.convert(out, mode)


def _positive_tuples(bounds_list):
    """Tuples with 1 <= t_j <= bounds_list[j] in every coordinate."""
    def rec(i):
        if i == len(bounds_list):
            yield ()
            return
        for v in range(1, bounds_list[i] + 1):
            for rest in rec(i + 1):
                yield (v,) + rest

    if any(b < 1 for b in bounds_list):
        return
    yield from rec(0)


def _qj_exact_count(system: FactoredSystem, p: int, exps, m: int) -> int:
    from . import kernels

    rows, mods, divs, nondivs = [], [], [], []
    for j, e in enumerate(exps):
        if e == 0:
            continue
        rows.append(list(system.polys[j].coeffs))
        mods.append(p ** (e + 1))
        divs.append(p**e)
        nondivs.append(p ** (e + 1))
    return kernels.scan_exact_count(rows, mods, divs, nondivs, p**m)


# --- assembled right-hand sides ----------------------------------------------


def rhs_main(system: FactoredSystem, fn: MultiplicativeFunction,
             params: BoundParams, mode: str = EXACT):
    """y * sifted_product(x) * majorant_sum(x)."""
    _require_valid(system, params, fn)
    y = numeric.convert(params.y, mode)
    return y * sifted_product(system, params.x_int, mode) \
        * majorant_sum(system, fn, params.x_int, mode)


def rhs_cor_disc(system: FactoredSystem, fn: MultiplicativeFunction,
                 params: BoundParams, mode: str = EXACT):
    """Delta_star * y * sifted_product * (coprime-restricted factor sum)."""
    _require_valid(system, params, fn)
    ftilde = system_pushforward(system, fn)
    xi = params.x_int
    table = _CoprimeOptionTable(system, ftilde, xi)
    s = _tuple_sum_dfs(table, xi, mode)
    return (numeric.convert(params.y, mode)
            * delta_factor_star(system, fn, mode)
            * sifted_product(system, xi, mode) * s)


class _CoprimeOptionTable(_OptionTable):
    """Options for the pairwise-coprime sum away from D*: one coordinate per
    prime, weight Ftilde(p^{nu e_h}) rho_{R_h}(p^nu)/p^nu."""

    def _build(self, j):
        p = self.primes[j]
        system = self.system
        if system.dstar % p == 0:
            return []
        out = []
        stable = rootcount.stable_prime(system, p)
        for h in range(system.r):
            base = int(self._factor_tables[h][j])
            if stable and base == 0:
                continue
            pp = p
            nu = 1
            while pp <= self.limit:
                cnt = base if stable else rootcount.rho_factor_pp(system, h, p, nu)
                if cnt:
                    exps = tuple(nu if i == h else 0 for i in range(system.r))
                    w = self.ftilde.local(p, exps) * Fraction(cnt, pp)
                    out.append((pp, w))
                pp *= p
                nu += 1
        out.sort(key=lambda t: t[0])
        return out


def rhs_cor_mult(system: FactoredSystem, fn: MultiplicativeFunction,
                 params: BoundParams, mode: str = EXACT):
    """Delta_star * y * sifted_product *
    prod_{p <= x, p not | D*} prod_h (1 + Gtilde^{(h)}(p) rho_{R_h}(p) / p)."""
    _require_valid(system, params, fn)
    xi = params.x_int
    gt = system_pushforward(system, minimal_majorant(fn))
    primes, _ = rootcount.rho_table(system, xi)
    tables = [rootcount.factor_rho_table(system, h, xi)[1]
              for h in range(system.r)]

    def factors():
        for j, p in enumerate(primes.tolist()):
            if system.dstar % p == 0:
                continue
            loc = Fraction(1)
            for h in range(system.r):
                c = int(tables[h][j])
                if c:
                    loc *= 1 + gt.component(h, p) * Fraction(c, p)
            yield loc

    prod = accumulate_product(factors(), mode)
    return (numeric.convert(params.y, mode)
            * delta_factor_star(system, fn, mode)
            * sifted_product(system, xi, mode) * prod)


def rhs_shiu(system: FactoredSystem, fn: MultiplicativeFunction,
             params: BoundParams, mode: str = EXACT):
    """Single irreducible-polynomial form:
    Delta_D * y * sifted_product * exp(sum_{p <= x, p not | D} f(p)/p).
    Requires k = r = 1 with unit exponent.  The exp factor is decimal."""
    if system.k != 1 or system.r != 1 or system.exponents != ((1,),):
        raise ParamError(["shiu form needs a single polynomial system "
                          "(k = r = 1, unit exponent)"])
    _require_valid(system, params, fn)
    xi = params.x_int
    d = system.disc
    if d == 0:
        raise ParamError(["shiu form needs a nonzero discriminant"])
    delta, _ = delta_factor_k1(system.q, fn, mode)
    primes, _ = rootcount.rho_table(system, xi)
    chunks = (fn.local(p, (1,)) / p for p in primes.tolist() if d % p != 0)
    esum = accumulate_sum(chunks, FLOAT)
    expf = CTX.exp(esum)
    base = numeric.convert(params.y, mode) * delta \
        * sifted_product(system, xi, mode)
    return numeric.to_decimal(base) * expf


def rhs_holowinsky(ell: int, lam1: MultiplicativeFunction,
                   lam2: MultiplicativeFunction, x, mode: str = EXACT,
                   system: Optional[FactoredSystem] = None):
    """Shifted-pair form at shift ell:
    Delta(ell) * x / (log x)^2 * prod_{p<=x} (1 + lam1(p)/p)(1 + lam2(p)/p),
    with Delta(ell) the exact-power local factor of (X, X+ell)."""
    if ell < 1:
        raise DomainError("shift must be >= 1 (zero shift repeats a factor)")
    if lam1.arity != 1 or lam2.arity != 1:
        raise DomainError("lam1, lam2 must be one-variable functions")
    if system is None:
        system = shifted_pair_system(ell)
    pair = _pair_function(lam1, lam2)
    delta = delta_factor_general(system, pair, EXACT)
    xi = int(x)
    key = (lam1.name, lam2.name, xi, mode)
    prod = _holowinsky_product_cache.get(key)
    if prod is None:
        ps = primes_up_to(xi)
        prod = accumulate_product(
            ((1 + lam1.local(p, (1,)) / Fraction(p))
             * (1 + lam2.local(p, (1,)) / Fraction(p)) for p in ps), mode)
        _holowinsky_product_cache[key] = prod
    logx = numeric.dec_log(xi)
    scale = CTX.divide(numeric.to_decimal(xi), CTX.multiply(logx, logx))
    return numeric.to_decimal(delta) * numeric.to_decimal(prod) * scale


_holowinsky_product_cache: dict = {}


def _pair_function(lam1: MultiplicativeFunction, lam2: MultiplicativeFunction
                   ) -> MultiplicativeFunction:
    def local(p, exps):
        return lam1.local(p, (exps[0],)) * lam2.local(p, (exps[1],))

    budget = ClassBudget(max(lam1.budget.A, lam2.budget.A),
                         max(lam1.budget.B, lam2.budget.B),
                         max(lam1.budget.eps, lam2.budget.eps))
    return MultiplicativeFunction(f"{lam1.name}*{lam2.name}", 2, local, budget)


def shifted_pair_system(ell: int) -> FactoredSystem:
    from .polys import build_factored_system

    return build_factored_system([IntPoly((0, 1)), IntPoly((ell, 1))])


def rhs_primes(system: FactoredSystem, fn: MultiplicativeFunction,
               params: BoundParams, mode: str = EXACT):
    """Prime-argument form: (Q(0)/phi(Q(0))) * Delta_star * (y/log x)
    * sifted_product * majorant_sum.  Requires Q(0) != 0."""
    q0 = system.q.evaluate(0)
    if q0 == 0:
        raise ParamError(["prime sums need Q(0) != 0"])
    _require_valid(system, params, fn)
    xi = params.x_int
    q0 = abs(q0)
    base = (Fraction(q0, phi(q0))
            * numeric.to_fraction(delta_factor_star(system, fn, EXACT)))
    rest = numeric.convert(params.y, mode) \
        * sifted_product(system, xi, mode) \
        * majorant_sum(system, fn, xi, mode)
    return numeric.to_decimal(base) * numeric.to_decimal(rest) \
        / numeric.dec_log(xi)


VARIANTS = ("main", "cor-disc", "cor-mult", "shiu", "primes")


def rhs_variant(name: str, system: FactoredSystem, fn: MultiplicativeFunction,
                params: BoundParams, mode: str = EXACT):
    if name == "main":
        return rhs_main(system, fn, params, mode)
    if name == "cor-disc":
        return rhs_cor_disc(system, fn, params, mode)
    if name == "cor-mult":
        return rhs_cor_mult(system, fn, params, mode)
    if name == "shiu":
        return rhs_shiu(system, fn, params, mode)
    if name == "primes":
        return rhs_primes(system, fn, params, mode)
    raise DomainError(f"unknown variant {name!r}")
