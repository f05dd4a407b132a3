"""Multiplicative k-variable functions with growth budgets.

A function is given by its prime-power evaluator e(p, (v_1, ..., v_k)) with
e(p, 0) = 1; values are exact rationals.  The growth budget (A, B, eps)
asserts e(p, v) <= min(A^{sum v}, B p^{eps sum v}) and an optional eta in
(0, 1) asserts e(p, v) >= eta^{sum v}; both are verified on a deterministic
grid by :func:`check_membership` / :func:`check_lower`, with all comparisons
done in exact arithmetic.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .arith import factor, primes_up_to
from .errors import DomainError


@dataclass(frozen=True)
class ClassBudget:
    A: Fraction
    B: Fraction
    eps: Fraction

    def __post_init__(self):
        if self.A < 1 or self.B < 1 or self.eps <= 0:
            raise DomainError("budget requires A >= 1, B >= 1, eps > 0")


def _binom(n: int, k: int) -> int:
    return math.comb(n, k)


def iroot(n: int, k: int) -> int:
    """floor(n^(1/k)) for n >= 0, k >= 1, by integer Newton."""
    if n < 0 or k < 1:
        raise DomainError("iroot needs n >= 0, k >= 1")
    if n < 2 or k == 1:
        return n
    x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def le_scaled_power(value: Fraction, scale: Fraction, p: int, expo: Fraction) -> bool:
    """Exact test of value <= scale * p**expo for rational expo >= 0."""
    if value <= scale:
        return True
    a, b = expo.numerator, expo.denominator
    lhs = (value / scale) ** b
    return lhs <= p**a


def lower_scaled_power(scale: Fraction, p: int, expo: Fraction) -> Fraction:
    """A rational lower bound of scale * p**expo (within 2^-38 relative)."""
    a, b = expo.numerator, expo.denominator
    if b == 1:
        return scale * p**a
    if b <= 64:
        shift = 40
        r = iroot(p**a << (shift * b), b)
        return scale * Fraction(r, 1 << shift)
    from .numeric import CTX, to_decimal

    d = CTX.multiply(to_decimal(scale), CTX.exp(CTX.multiply(to_decimal(expo), CTX.ln(to_decimal(p)))))
    approx = Fraction(d)
    return approx * Fraction((1 << 30) - 1, 1 << 30)


class MultiplicativeFunction:
    """Non-negative multiplicative function of ``arity`` integer variables."""

    def __init__(
        self,
        name: str,
        arity: int,
        local: Callable[[int, tuple[int, ...]], Fraction],
        budget: ClassBudget,
        eta: Optional[Fraction] = None,
    ):
        if arity < 1:
            raise DomainError("arity must be >= 1")
        self.name = name
        self.arity = arity
        self._local = local
        self.budget = budget
        self.eta = eta
        self._memo: dict[tuple[int, tuple[int, ...]], Fraction] = {}
        for p in (2, 3):
            if self.local(p, (0,) * arity) != 1:
                raise DomainError("prime-power evaluator must send the zero "
                                  "tuple to 1 (normalization F(1,...,1) = 1)")

    def local(self, p: int, exps: tuple[int, ...]) -> Fraction:
        """Value at (p^{v_1}, ..., p^{v_k})."""
        exps = tuple(int(e) for e in exps)
        key = (p, exps)
        v = self._memo.get(key)
        if v is None:
            v = Fraction(self._local(p, exps))
            if v < 0:
                raise DomainError(f"{self.name} negative at p={p}, exps={exps}")
            self._memo[key] = v
        return v

    def value(self, ns) -> Fraction:
        """F(n_1, ..., n_k) via factorization of the arguments."""
        ns = tuple(int(n) for n in ns)
        if len(ns) != self.arity:
            raise DomainError(f"{self.name} expects {self.arity} arguments")
        if any(n < 1 for n in ns):
            raise DomainError("arguments must be >= 1")
        exps_by_p: dict[int, list[int]] = {}
        for j, n in enumerate(ns):
            for p, e in factor(n):
                exps_by_p.setdefault(p, [0] * self.arity)[j] = e
        out = Fraction(1)
        for p, exps in exps_by_p.items():
            out *= self.local(p, tuple(exps))
        return out

    def value1(self, n: int) -> Fraction:
        return self.value((n,))

    def component(self, h: int, p: int, nu: int = 1) -> Fraction:
        """Value at the tuple with p^nu in slot h and 1 elsewhere."""
        exps = [0] * self.arity
        exps[h] = nu
        return self.local(p, tuple(exps))

    def __repr__(self):
        return f"MultiplicativeFunction({self.name}, k={self.arity})"


def pushforward(base: MultiplicativeFunction, gamma, degree_bound: int | None = None
                ) -> MultiplicativeFunction:
    """The arity-r function G with G(n_1,...,n_r) = F(prod_h n_h^{g_1h}, ...).

    On prime powers this is evaluator composition with the matrix action
    v -> gamma . v, so multiplicativity is inherited.  The budget becomes
    (A^g, B, g eps) where g bounds the total weight (the degree of the
    product polynomial when built from a factored system).
    """
    gamma = tuple(tuple(int(v) for v in row) for row in gamma)
    k = len(gamma)
    if k != base.arity:
        raise DomainError("gamma row count must equal the base arity")
    r = len(gamma[0])
    if any(len(row) != r for row in gamma):
        raise DomainError("ragged gamma matrix")
    g = degree_bound
    if g is None:
        g = max(sum(row[h] for row in gamma) for h in range(r))
    g = max(1, int(g))

    def local(p: int, exps: tuple[int, ...]) -> Fraction:
        pushed = tuple(sum(row[h] * exps[h] for h in range(r)) for row in gamma)
        return base.local(p, pushed)

    budget = ClassBudget(base.budget.A**g, base.budget.B, base.budget.eps * g)
    eta = base.eta**g if base.eta is not None else None
    return MultiplicativeFunction(f"{base.name}~", r, local, budget, eta)


def minimal_majorant(fn: MultiplicativeFunction,
                     sample_primes=(2, 3, 5), sample_total: int = 6
                     ) -> MultiplicativeFunction:
    """The minimal submultiplicative majorant G of a multiplicative F is F
    itself, provided F is strictly positive on prime powers; vanishing values
    break the identity and are rejected."""
    for p in sample_primes:
        for exps in _exp_grid(fn.arity, sample_total):
            if fn.local(p, exps) <= 0:
                raise DomainError(
                    f"minimal majorant undefined: {fn.name} vanishes at "
                    f"p={p}, exps={exps}"
                )
    return fn


def class_cap(budget: ClassBudget, arity: int) -> MultiplicativeFunction:
    """The capped envelope min(A^s, B p^(eps s)), s = sum of exponents,
    as a class member (B-branch rounded down to keep values rational)."""
    A, B, eps = budget.A, budget.B, budget.eps

    def local(p: int, exps: tuple[int, ...]) -> Fraction:
        s = sum(exps)
        if s == 0:
            return Fraction(1)
        a_branch = A**s
        b_branch = lower_scaled_power(B, p, eps * s)
        return min(a_branch, max(b_branch, Fraction(1)))

    return MultiplicativeFunction(f"cap[A={A},B={B}]", arity, local, budget,
                                  eta=Fraction(1, 2))


@dataclass
class CheckReport:
    name: str
    passed: bool
    checked: int
    first_violation: Optional[tuple] = None

    def __bool__(self):
        return self.passed


def _exp_grid(arity: int, total: int):
    """All exponent tuples with 0 <= sum <= total, lexicographic."""
    def rec(slots, budget):
        if slots == 1:
            for v in range(budget + 1):
                yield (v,)
            return
        for v in range(budget + 1):
            for rest in rec(slots - 1, budget - v):
                yield (v,) + rest

    yield from rec(arity, total)


def check_membership(fn: MultiplicativeFunction, budget: ClassBudget | None = None,
                     prime_bound: int = 97, total: int = 12) -> CheckReport:
    """Verify e(p, v) <= min(A^{sum v}, B p^{eps sum v}) on the grid
    p <= prime_bound, sum v <= total; exact comparisons."""
    budget = budget or fn.budget
    checked = 0
    for p in primes_up_to(prime_bound):
        for exps in _exp_grid(fn.arity, total):
            s = sum(exps)
            if s == 0:
                continue
            v = fn.local(p, exps)
            checked += 1
            if v > budget.A**s or not le_scaled_power(v, budget.B, p, budget.eps * s):
                return CheckReport("membership", False, checked, (p, exps, v))
    return CheckReport("membership", True, checked)


def check_lower(fn: MultiplicativeFunction, eta: Fraction | None = None,
                prime_bound: int = 97, total: int = 12) -> CheckReport:
    """Verify e(p, v) >= eta^{sum v} on the grid; exact comparisons."""
    eta = Fraction(eta) if eta is not None else fn.eta
    if eta is None or not (0 < eta < 1):
        raise DomainError("check_lower needs eta in (0, 1)")
    checked = 0
    for p in primes_up_to(prime_bound):
        for exps in _exp_grid(fn.arity, total):
            s = sum(exps)
            if s == 0:
                continue
            checked += 1
            if fn.local(p, exps) < eta**s:
                return CheckReport("lower", False, checked,
                                   (p, exps, fn.local(p, exps)))
    return CheckReport("lower", True, checked)


# --- builtins -------------------------------------------------------------


def _tau_m_budget(m: int, arity: int) -> ClassBudget:
    # B large enough for the verification grid at eps = 1/4 (worst case p=2)
    eps = Fraction(1, 4)
    best = Fraction(0)
    for exps in _exp_grid(arity, 12):
        s = sum(exps)
        if s == 0:
            continue
        v = Fraction(1)
        for e in exps:
            v *= _binom(e + m - 1, m - 1)
        # v <= B * 2^(eps s)  <=>  B >= v / 2^(s/4); use v as a safe ceiling
        best = max(best, v)
    return ClassBudget(Fraction(max(m, 1)), best.numerator // best.denominator + 1, eps)


def one_function(arity: int = 1) -> MultiplicativeFunction:
    return MultiplicativeFunction(
        "one", arity, lambda p, e: Fraction(1),
        ClassBudget(Fraction(1), Fraction(1), Fraction(1, 4)), eta=Fraction(9, 10))


def tau_m_function(m: int, arity: int = 1) -> MultiplicativeFunction:
    """Product of m-th divisor functions, one per coordinate."""
    if m < 1:
        raise DomainError("tau_m needs m >= 1")

    def local(p: int, exps: tuple[int, ...]) -> Fraction:
        v = 1
        for e in exps:
            v *= _binom(e + m - 1, m - 1)
        return Fraction(v)

    return MultiplicativeFunction(f"tau_{m}", arity, local,
                                  _tau_m_budget(m, arity), eta=Fraction(1, 2))


def tau_function(arity: int = 1) -> MultiplicativeFunction:
    fn = tau_m_function(2, arity)
    fn.name = "tau"
    return fn


def pow_a_function(a, arity: int = 1) -> MultiplicativeFunction:
    """A^Omega capped at its B-branch so it stays inside the class."""
    A = Fraction(a)
    if A < 1:
        raise DomainError("powA needs A >= 1")
    budget = ClassBudget(A, max(A * A, Fraction(2)), Fraction(1, 4))

    def local(p: int, exps: tuple[int, ...]) -> Fraction:
        s = sum(exps)
        if s == 0:
            return Fraction(1)
        cap = lower_scaled_power(budget.B, p, budget.eps * s)
        return min(A**s, max(cap, Fraction(1)))

    return MultiplicativeFunction(f"pow{A}", arity, local, budget, eta=Fraction(1, 2))


def random_class_function(seed: int, arity: int = 1,
                          budget: ClassBudget | None = None,
                          eta: Fraction = Fraction(1, 2)) -> MultiplicativeFunction:
    """Seeded generator of a class member: each prime-power value is drawn
    deterministically (blake2 of seed, p, exponents) from
    [eta^s, min(A^s, B p^{eps s})]."""
    budget = budget or ClassBudget(Fraction(2), Fraction(2), Fraction(1, 4))

    def local(p: int, exps: tuple[int, ...]) -> Fraction:
        s = sum(exps)
        if s == 0:
            return Fraction(1)
        lo = eta**s
        hi = min(budget.A**s,
                 max(lower_scaled_power(budget.B, p, budget.eps * s), Fraction(1)))
        if hi < lo:
            return lo
        h = hashlib.blake2b(
            f"{seed}|{p}|{','.join(map(str, exps))}".encode(), digest_size=8
        ).digest()
        u = Fraction(int.from_bytes(h, "big") % (1 << 30), 1 << 30)
        return lo + (hi - lo) * u

    return MultiplicativeFunction(f"random_{seed}", arity, local, budget, eta=eta)


def parse_function(spec: str, arity: int) -> MultiplicativeFunction:
    """Builtins by config name: one | tau | tau_m:m | powA:A | random:seed."""
    name, _, arg = spec.strip().partition(":")
    name = name.strip().lower()
    if name == "one":
        return one_function(arity)
    if name == "tau":
        return tau_function(arity)
    if name == "tau_m":
        if not arg:
            raise DomainError("tau_m needs an argument, e.g. tau_m:3")
        return tau_m_function(int(arg), arity)
    if name == "powa":
        if not arg:
            raise DomainError("powA needs an argument, e.g. powA:2")
        return pow_a_function(Fraction(arg), arity)
    if name == "random":
        if not arg:
            raise DomainError("random needs a seed, e.g. random:7")
        return random_class_function(int(arg), arity)
    raise DomainError(f"unknown function name {spec!r}")
