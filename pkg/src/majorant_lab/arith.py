"""Elementary arithmetic: certified factorization and multiplicative helpers."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

INFINITY = math.inf

_TRIAL_BOUND = 10_000
# Deterministic Miller-Rabin over these bases is a proven primality test for
# every n < 3.317e24 (Sorenson-Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_CERTIFIED_LIMIT = 3_317_044_064_679_887_385_961_981


def primes_up_to(x) -> list[int]:
    """All primes <= x, by a dense boolean sieve."""
    n = int(x)
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).tolist()


_small_primes = primes_up_to(_TRIAL_BOUND)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, certified below 3.317e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n >= _MR_CERTIFIED_LIMIT:
        raise DomainError(f"primality of {n} exceeds the certified MR range")
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """One nontrivial factor of composite odd n (Brent's cycle variant).

    Deterministic: the (y0, c) starting pairs are swept in a fixed order.
    """
    for c in range(1, 64):
        y, m = 2, 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise DomainError(f"rho failed to split {n}")  # unreachable in practice


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as (prime, exponent) pairs in increasing order."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def value(self) -> int:
        v = 1
        for p, e in self.pairs:
            v *= p**e
        return v

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)


def factor(n: int) -> Factorization:
    """Complete certified factorization of n >= 1.

    Trial division up to 10^4, then Miller-Rabin-guarded Brent rho on what
    remains.  The reassembled product is checked against n.
    """
    if n < 1:
        raise DomainError(f"factor requires n >= 1, got {n}")
    m = n
    exps: dict[int, int] = {}
    for p in _small_primes:
        if p * p > m:
            break
        while m % p == 0:
            exps[p] = exps.get(p, 0) + 1
            m //= p
    stack = [m] if m > 1 else []
    while stack:
        v = stack.pop()
        if is_prime(v):
            exps[v] = exps.get(v, 0) + 1
            continue
        d = _brent_rho(v)
        stack.append(d)
        stack.append(v // d)
    pairs = tuple(sorted(exps.items()))
    result = Factorization(pairs)
    if result.value != n:
        raise DomainError(f"factorization of {n} failed verification")
    return result


def kappa(n: int) -> int:
    """Squarefree kernel: product of the distinct primes dividing n."""
    v = 1
    for p, _ in factor(n):
        v *= p
    return v


def omega_big(n: int) -> int:
    """Number of prime factors counted with multiplicity."""
    return sum(e for _, e in factor(n))


def omega_small(n: int) -> int:
    """Number of distinct prime factors."""
    return len(factor(n))


def phi(n: int) -> int:
    """Euler's totient."""
    v = n
    for p, _ in factor(n):
        v -= v // p
    return v


def p_plus(n: int):
    """Greatest prime factor; 1 for n = 1."""
    f = factor(n)
    return f.pairs[-1][0] if f.pairs else 1


def p_minus(n: int):
    """Least prime factor; infinity for n = 1."""
    f = factor(n)
    return f.pairs[0][0] if f.pairs else INFINITY


def exactly_divides(a: int, b: int) -> bool:
    """a || b: a divides b and gcd(a, b/a) = 1.  Holds vacuously for a = 1."""
    if a < 1 or b < 1:
        raise DomainError("exactly_divides requires positive integers")
    if b % a:
        return False
    return math.gcd(a, b // a) == 1


def lcm_list(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out
