"""Left-hand sides: exact short-interval sums of F over polynomial values,
prime-restricted sums, and sifted counts.

The workhorse is an interval table holding the complete factorization of
every |R_h(n)| for n in (x, x+y]: small primes are divided out along root
classes of each factor (the int64 fast path runs through the kernel
backends), and the remaining cofactors get certified factorization.
Correctness never depends on the sieve bound z, only speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels, numeric, rootcount
from .arith import factor, is_prime, kappa, primes_up_to
from .errors import DomainError, ZeroValueError
from .mfunc import MultiplicativeFunction
from .numeric import EXACT, check_mode
from .polys import FactoredSystem

INT64_VALUE_CAP = 1 << 62


@dataclass
class IntervalTable:
    """Factorizations of |R_h(n)| for lo <= n <= hi (inclusive)."""

    system: FactoredSystem
    lo: int
    hi: int
    sieve_bound: int
    factor_exps: list[list[dict[int, int]]]  # [h][n - lo] -> {p: e}
    zero_points: frozenset[int]

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def factor_value_exps(self, n: int, h: int) -> dict[int, int]:
        return self.factor_exps[h][n - self.lo]

    def poly_value_exps(self, n: int, j: int) -> dict[int, int]:
        """Exponent map of |Q_j(n)| composed from the factor rows."""
        row = self.system.exponents[j]
        out: dict[int, int] = {}
        for h, gamma in enumerate(row):
            if gamma:
                for p, e in self.factor_exps[h][n - self.lo].items():
                    out[p] = out.get(p, 0) + gamma * e
        return out

    def prime_profile(self, n: int) -> dict[int, tuple[int, ...]]:
        """Per prime p | Q(n): the vector (v_p|Q_1(n)|, ..., v_p|Q_k(n)|)."""
        sys = self.system
        i = n - self.lo
        out: dict[int, list[int]] = {}
        for h in range(sys.r):
            for p, e in self.factor_exps[h][i].items():
                vec = out.get(p)
                if vec is None:
                    vec = [0] * sys.k
                    out[p] = vec
                for j in range(sys.k):
                    g = sys.exponents[j][h]
                    if g:
                        vec[j] += g * e
        return {p: tuple(v) for p, v in out.items()}


def default_sieve_bound(x, y) -> int:
    return max(10_000, math.isqrt(max(0, int(x + y))) // 100 + 1,
               round(float(max(1, x + y)) ** (1 / 3)) + 1)


def factor_interval(system: FactoredSystem, x, y, sieve_bound: int | None = None
                    ) -> IntervalTable:
    """Factor every |R_h(n)| over (x, x+y] (exactly; zeros are flagged)."""
    if y < 1:
        raise DomainError("interval length must be >= 1")
    lo = int(x) + 1
    hi = int(Fraction(x) + Fraction(y))
    if hi < lo:
        raise DomainError("empty interval")
    z = int(sieve_bound) if sieve_bound else default_sieve_bound(x, y)
    if z < 2:
        raise DomainError("sieve bound must be >= 2")
    count = hi - lo + 1
    zero_points: set[int] = set()
    factor_exps: list[list[dict[int, int]]] = []
    small = primes_up_to(z)
    for h in range(system.r):
        poly = system.factors[h]
        exps: list[dict[int, int]] = [dict() for _ in range(count)]
        bound = poly.norm() * max(abs(lo), abs(hi), 1) ** max(poly.degree, 1)
        use_int64 = bound < INT64_VALUE_CAP
        if use_int64:
            ns = np.arange(lo, hi + 1, dtype=np.int64)
            values = np.zeros(count, dtype=np.int64)
            for c in reversed(poly.coeffs):
                values = values * ns + c
            values = np.abs(values)
        else:
            values = [abs(poly.evaluate(n)) for n in range(lo, hi + 1)]
        for p in small:
            roots = rootcount.roots_mod_prime(poly, p)
            if not roots:
                continue
            if use_int64:
                idx, exp = kernels.divide_out_int64(values, lo, p, roots)
                for i, e in zip(idx.tolist(), exp.tolist()):
                    exps[i][p] = e
            else:
                for i, e in kernels._python.divide_out(values, lo, p, roots):
                    exps[i][p] = e
        for i in range(count):
            v = int(values[i])
            if v == 0:
                zero_points.add(lo + i)
            elif v > 1:
                for p, e in factor(v):
                    exps[i][p] = exps[i].get(p, 0) + e
        factor_exps.append(exps)
    return IntervalTable(system, lo, hi, z, factor_exps, frozenset(zero_points))


def _check_no_zeros(table: IntervalTable) -> None:
    if table.zero_points:
        n = min(table.zero_points)
        raise ZeroValueError(
            f"a polynomial value vanishes at n={n}; the summand is undefined")


def short_sum(system: FactoredSystem, fn: MultiplicativeFunction, x, y,
              table: IntervalTable | None = None) -> Fraction:
    """sum_{x < n <= x+y} F(|Q_1(n)|, ..., |Q_k(n)|), exactly."""
    if fn.arity != system.k:
        raise DomainError(f"function arity {fn.arity} != k={system.k}")
    if table is None:
        table = factor_interval(system, x, y)
    _check_no_zeros(table)
    terms = []
    for n in range(table.lo, table.hi + 1):
        v = Fraction(1)
        for p, vec in table.prime_profile(n).items():
            v *= fn.local(p, vec)
        terms.append(v)
    return numeric.sum_exact(terms)


def prime_sum(system: FactoredSystem, fn: MultiplicativeFunction, x, y,
              table: IntervalTable | None = None) -> Fraction:
    """The same sum restricted to prime n; requires Q(0) != 0."""
    if system.q.evaluate(0) == 0:
        raise DomainError("prime sums need Q(0) != 0")
    if fn.arity != system.k:
        raise DomainError(f"function arity {fn.arity} != k={system.k}")
    if table is None:
        table = factor_interval(system, x, y)
    _check_no_zeros(table)
    terms = []
    for n in range(max(table.lo, 2), table.hi + 1):
        if not is_prime(n):
            continue
        v = Fraction(1)
        for p, vec in table.prime_profile(n).items():
            v *= fn.local(p, vec)
        terms.append(v)
    return numeric.sum_exact(terms) if terms else Fraction(0)


def sieve_count(system: FactoredSystem, parts, z: int, x, y,
                fixed_divisors=None, table: IntervalTable | None = None) -> int:
    """#{x < n <= x+y : a_h || R_h(n) for all h, and p | Q(n) implies
    p | a_1...a_r or p in the fixed set or p > z}, by direct enumeration."""
    parts = tuple(int(a) for a in parts)
    if len(parts) != system.r:
        raise DomainError("tuple arity mismatch")
    if any(a < 1 for a in parts):
        raise DomainError("components must be >= 1")
    if fixed_divisors is None:
        fixed_divisors = system.fixed_primes
    if table is None:
        table = factor_interval(system, x, y, max(default_sieve_bound(x, y), z))
    part_exps = [dict(factor(a)) if a > 1 else {} for a in parts]
    allowed = set().union(*[set(pe) for pe in part_exps]) | set(fixed_divisors)
    count = 0
    for n in range(table.lo, table.hi + 1):
        if n in table.zero_points:
            continue
        ok = True
        for h in range(system.r):
            exps = table.factor_value_exps(n, h)
            for p, e in part_exps[h].items():
                if exps.get(p, 0) != e:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        for h in range(system.r):
            for p in table.factor_value_exps(n, h):
                if p <= z and p not in allowed:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


def sieve_rhs(system: FactoredSystem, parts, z: int, y, mode: str = EXACT):
    """y * rho_hat(a) / lcm(a_h kappa(a_h)) *
    prod_{g < p <= z, p not | a_1...a_r} (1 - rho(p)/p)."""
    check_mode(mode)
    parts = tuple(int(a) for a in parts)
    hat = rootcount.rho_hat(system, parts)
    modulus = 1
    for a in parts:
        modulus = math.lcm(modulus, a * kappa(a)) if a > 1 else modulus
    prod_a = math.prod(parts)
    out = Fraction(y) * Fraction(hat, modulus)
    for p in primes_up_to(z):
        if p <= system.g or prod_a % p == 0:
            continue
        out *= Fraction(p - rootcount.system_rho_p(system, p), p)
    return numeric.convert(out, mode)


def shifted_pair_sums(ells, m: int, x: int) -> dict[int, int]:
    """sum_{n <= x} tau_m(n) tau_m(n+ell) for each shift, via one shared
    divisor table (the family fast path; equals the per-n route exactly)."""
    ells = sorted(set(int(e) for e in ells))
    if any(e < 1 for e in ells):
        raise DomainError("shifts must be >= 1")
    x = int(x)
    n_max = x + ells[-1]
    table = kernels.divisor_power_table(n_max, m)
    out: dict[int, int] = {}
    tmax = int(table.max())
    if x * tmax * tmax < (1 << 62):
        for ell in ells:
            out[ell] = int(np.dot(table[1 : x + 1], table[1 + ell : x + ell + 1]))
    else:
        py = table.tolist()
        for ell in ells:
            out[ell] = sum(py[n] * py[n + ell] for n in range(1, x + 1))
    return out
