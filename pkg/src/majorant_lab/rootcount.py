"""Root counting of integer polynomials modulo prime powers and the joint
exact-divisibility counts for factored systems.

Three independent routes coexist on purpose:

* a Hensel lifting tree (``rho_pp``) that walks roots level by level,
* exhaustive residue scans (``rho_scan`` / ``rho_hat_scan``), kernel-backed,
* a joint divisibility BFS with inclusion-exclusion (``rho_hat_pp`` above the
  scan threshold).

The scans certify the structured paths wherever both apply.
"""

from __future__ import annotations

import math
from functools import lru_cache

from . import kernels
from .arith import factor
from .errors import DomainError, OracleBoundError
from .kernels import _python as polymod
from .polys import FactoredSystem, IntPoly

#: refusal bound for the brute-force oracles
ORACLE_SCAN_BOUND = 10**7
#: moduli up to this size are counted by scan in production, larger ones by
#: the lifting BFS; both paths must agree on the overlap (tested)
PRODUCTION_SCAN_BOUND = 10**4


def _require_primitive_at(poly: IntPoly, p: int) -> None:
    if poly.is_zero or all(c % p == 0 for c in poly.coeffs):
        raise DomainError(f"not primitive at {p}")


def roots_mod_prime(poly: IntPoly, p: int) -> list[int]:
    """All roots of poly mod p, sorted.

    Scan for small p; for large p, the linear-factor part gcd(X^p - X, f)
    is split into linears by deterministic quadratic-residue splitting.
    """
    _require_primitive_at(poly, p)
    if p < 1000:
        return [n for n in range(p) if poly.evaluate_mod(n, p) == 0]
    f = polymod.make_monic(list(poly.coeffs), p)
    if len(f) - 1 < 1:
        return []
    if len(f) - 1 == 1:
        return [(-f[0]) % p]
    xp = polymod.pow_x_mod(p, f, p)
    g = list(xp) + [0] * max(0, 2 - len(xp))
    g[1] = (g[1] - 1) % p
    g = polymod._trimmed(g)
    lin = polymod.poly_gcd_mod(f, g, p) if g else f
    roots: list[int] = []
    _split_linear_product(lin, p, roots)
    return sorted(roots)


def _split_linear_product(f, p: int, out: list[int]) -> None:
    """Collect the roots of f, a product of distinct monic linears mod p."""
    d = len(f) - 1
    if d == 0:
        return
    if d == 1:
        out.append((-f[0]) % p)
        return
    half = (p - 1) // 2
    for t in range(p):
        # gcd((X+t)^((p-1)/2) - 1, f) separates roots r by chi(r + t)
        w = polymod.poly_pow_mod([t, 1], half, f, p)
        w = list(w) + [0] * max(0, 1 - len(w))
        w[0] = (w[0] - 1) % p
        w = polymod._trimmed(w)
        h = polymod.poly_gcd_mod(f, w, p) if w else f
        if 0 < len(h) - 1 < d:
            _split_linear_product(h, p, out)
            q = _exact_div_mod(f, h, p)
            _split_linear_product(q, p, out)
            return
    raise DomainError(f"failed to split degree-{d} linear product mod {p}")


def _exact_div_mod(f, h, p: int):
    """f / h over F_p, both monic, division known exact."""
    f = list(f)
    dh = len(h) - 1
    out = [0] * (len(f) - dh)
    for k in range(len(out) - 1, -1, -1):
        c = f[k + dh] % p
        out[k] = c
        if c:
            for j in range(dh + 1):
                f[k + j] = (f[k + j] - c * h[j]) % p
    return out


@lru_cache(maxsize=200_000)
def _rho_pp_cached(coeffs: tuple, p: int, nu: int) -> int:
    poly = IntPoly(coeffs)
    if nu == 0:
        return 1
    frontier = roots_mod_prime(poly, p)  # residues mod p^j, starting at j = 1
    deriv = poly.derivative()
    j = 1
    while j < nu and frontier:
        pj = p**j
        pj1 = pj * p
        nxt: list[int] = []
        for r in frontier:
            a = (poly.evaluate_mod(r, pj1) // pj) % p
            b = deriv.evaluate_mod(r, p)
            if b % p:
                t = (-a * pow(b, p - 2, p)) % p
                nxt.append(r + t * pj)
            elif a % p == 0:
                nxt.extend(r + t * pj for t in range(p))
        j += 1
        frontier = nxt
    return len(frontier) if j == nu else 0


def rho_pp(poly: IntPoly, p: int, nu: int) -> int:
    """rho_poly(p^nu): residues n mod p^nu with poly(n) = 0, by Hensel tree.

    A root r mod p^j with poly(r) = p^j a lifts to p^{j+1} with one child when
    poly'(r) is a unit mod p, with p children when poly'(r) = a = 0 mod p,
    and not at all otherwise.  rho(p^0) = 1.
    """
    if nu < 0:
        raise DomainError("negative exponent")
    if nu == 0:
        return 1
    _require_primitive_at(poly, p)
    return _rho_pp_cached(poly.coeffs, p, nu)


def rho(poly: IntPoly, n: int) -> int:
    """rho_poly(n) for any modulus n >= 1, multiplicatively via CRT."""
    if n < 1:
        raise DomainError("modulus must be >= 1")
    out = 1
    for p, e in factor(n):
        out *= rho_pp(poly, p, e)
        if out == 0:
            return 0
    return out


def rho_scan(poly: IntPoly, n: int, bound: int = ORACLE_SCAN_BOUND) -> int:
    """Brute-force oracle: count roots of poly mod n by full residue scan."""
    if n < 1:
        raise DomainError("modulus must be >= 1")
    if n > bound:
        raise OracleBoundError(f"modulus {n} exceeds the scan bound {bound}")
    if n == 1:
        return 1
    return kernels.scan_exact_count([list(poly.coeffs)], [n], [n], [0], n)


# --- joint exact-divisibility counts for factored systems ---


def _system_cache(system: FactoredSystem) -> dict:
    return system._cache


def rho_factor_pp(system: FactoredSystem, h: int, p: int, nu: int) -> int:
    """rho_{R_h}(p^nu) with per-system memoization."""
    return rho_pp(system.factors[h], p, nu)


def _joint_div_count(system: FactoredSystem, p: int, mus: tuple[int, ...]) -> int:
    """#{n mod p^max(mu) : p^{mu_h} | R_h(n) for all h}, by joint lifting.

    Levels j = 0..max(mu); a node r mod p^j branches on the intersection of
    each still-active factor's linear lift condition.  Newton steps keep the
    frontier small; full p-branching happens only at jointly singular nodes.
    """
    m = max(mus)
    if m == 0:
        return 1
    active = [h for h, mu in enumerate(mus) if mu > 0]
    # level 1 directly: intersect the factors' root sets mod p
    roots = set(roots_mod_prime(system.factors[active[0]], p))
    for h in active[1:]:
        roots &= set(roots_mod_prime(system.factors[h], p))
        if not roots:
            return 0
    frontier = sorted(roots)
    level = 1
    derivs = [f.derivative() for f in system.factors]
    while level < m and frontier:
        pj = p**level
        pj1 = pj * p
        nxt: list[int] = []
        for r in frontier:
            tset: set[int] | None = None  # None = unconstrained
            dead = False
            for h in active:
                if mus[h] <= level:
                    continue
                # linear lift: R_h(r + t p^j) = R_h(r) + t p^j R_h'(r) mod p^{j+1}
                a = (system.factors[h].evaluate_mod(r, pj1) // pj) % p
                b = derivs[h].evaluate_mod(r, p)
                if b:
                    t0 = (-a * pow(b, p - 2, p)) % p
                    tset = {t0} if tset is None else tset & {t0}
                    if not tset:
                        dead = True
                        break
                elif a:
                    dead = True
                    break
                # b = a = 0: h accepts every lift, no constraint
            if dead:
                continue
            if tset is None:
                if p > 100_000:
                    raise DomainError(
                        f"jointly singular lift with p={p} is above the branch cap"
                    )
                nxt.extend(r + t * pj for t in range(p))
            else:
                nxt.extend(r + t * pj for t in tset)
        frontier = nxt
        level += 1
    return len(frontier)


def rho_hat_pp(system: FactoredSystem, exps, p: int) -> int:
    """Local exact-divisibility count at p: residues n mod p^{max(nu_h)+1}
    with p^{nu_h} exactly dividing R_h(n) for every h with nu_h >= 1.

    Scan below PRODUCTION_SCAN_BOUND, else inclusion-exclusion over the
    joint divisibility counts from the lifting BFS.
    """
    exps = tuple(int(e) for e in exps)
    if len(exps) != system.r:
        raise DomainError("exponent tuple arity mismatch")
    if any(e < 0 for e in exps):
        raise DomainError("negative exponent")
    if all(e == 0 for e in exps):
        return 1
    cache = _system_cache(system)
    key = ("rho_hat_pp", p, exps)
    if key in cache:
        return cache[key]
    if stable_prime(system, p):
        # away from D* lc(Q*): roots are simple, coordinates cannot share p,
        # and the exact count collapses to rho_h(p) (p - 1) at every level
        active = [h for h, e in enumerate(exps) if e >= 1]
        if len(active) > 1:
            result = 0
        else:
            result = rho_pp(system.factors[active[0]], p, 1) * (p - 1)
    else:
        m_exp = max(e + 1 for e in exps if e >= 1)
        modulus = p**m_exp
        if modulus <= PRODUCTION_SCAN_BOUND:
            result = _rho_hat_scan_local(system, exps, p, modulus)
        else:
            result = _rho_hat_tree_local(system, exps, p, m_exp)
    cache[key] = result
    return result


def _rho_hat_scan_local(system: FactoredSystem, exps, p: int, modulus: int) -> int:
    rows, mods, divs, nondivs = [], [], [], []
    for h, e in enumerate(exps):
        if e == 0:
            continue
        rows.append(list(system.factors[h].coeffs))
        mods.append(p ** (e + 1))
        divs.append(p**e)
        nondivs.append(p ** (e + 1))
    return kernels.scan_exact_count(rows, mods, divs, nondivs, modulus)


def _rho_hat_tree_local(system: FactoredSystem, exps, p: int, m_exp: int) -> int:
    """Inclusion-exclusion over divisibility counts, normalized mod p^m_exp."""
    active = [h for h, e in enumerate(exps) if e >= 1]
    total = 0
    for mask in range(1 << len(active)):
        mus = list(exps)
        sign = 1
        for i, h in enumerate(active):
            if mask >> i & 1:
                mus[h] += 1
                sign = -sign
        cnt = _joint_div_count(system, p, tuple(mus))
        total += sign * cnt * p ** (m_exp - max(mus)) if max(mus) <= m_exp else 0
    return total


def rho_hat(system: FactoredSystem, parts) -> int:
    """The joint count over n mod lcm(n_h kappa(n_h)) of the exact
    divisibility conditions n_h || R_h(n); multiplicative over primes."""
    parts = tuple(int(v) for v in parts)
    if len(parts) != system.r:
        raise DomainError("tuple arity mismatch")
    if any(v < 1 for v in parts):
        raise DomainError("components must be >= 1")
    primes: dict[int, list[int]] = {}
    for h, v in enumerate(parts):
        for p, e in factor(v):
            primes.setdefault(p, [0] * system.r)[h] = e
    out = 1
    for p, exps in sorted(primes.items()):
        out *= rho_hat_pp(system, exps, p)
        if out == 0:
            return 0
    return out


def rho_hat_scan(system: FactoredSystem, parts, bound: int = ORACLE_SCAN_BOUND) -> int:
    """Brute-force oracle for rho_hat over the full joint modulus."""
    parts = tuple(int(v) for v in parts)
    modulus = 1
    for v in parts:
        k = 1
        for p, _ in factor(v):
            k *= p
        modulus = math.lcm(modulus, v * k)
    if modulus > bound:
        raise OracleBoundError(f"modulus {modulus} exceeds the scan bound {bound}")
    count = 0
    for n in range(modulus):
        ok = True
        for h, v in enumerate(parts):
            if v == 1:
                continue
            val = abs(system.factors[h].evaluate(n))
            if val % v or math.gcd(v, val // v) != 1:
                ok = False
                break
        if ok:
            count += 1
    return count


def system_rho_p(system: FactoredSystem, p: int) -> int:
    """rho_Q(p) = rho_{Q*}(p): a residue is a root of Q iff of some factor."""
    return rho_pp(system.qstar, p, 1)


def rho_table(system: FactoredSystem, x: int):
    """rho_Q(p) for all primes p <= x, kernel-backed, cached per system.

    Returns (primes array, counts array).
    """
    import numpy as np

    from .arith import primes_up_to

    cache = _system_cache(system)
    key = ("rho_table", int(x))
    if key in cache:
        return cache[key]
    primes = np.asarray(primes_up_to(x), dtype=np.int64)
    counts = kernels.count_roots_bulk(system.qstar.coeffs, primes)
    cache[key] = (primes, counts)
    return primes, counts


def factor_rho_table(system: FactoredSystem, h: int, x: int):
    """rho_{R_h}(p) for all primes p <= x (cached)."""
    import numpy as np

    from .arith import primes_up_to

    cache = _system_cache(system)
    key = ("factor_rho_table", h, int(x))
    if key in cache:
        return cache[key]
    primes = np.asarray(primes_up_to(x), dtype=np.int64)
    counts = kernels.count_roots_bulk(system.factors[h].coeffs, primes)
    cache[key] = (primes, counts)
    return primes, counts


def stable_prime(system: FactoredSystem, p: int) -> bool:
    """True when p is outside the exceptional set D* lc(Q*): all local root
    structure at p is simple, so rho(p^nu) = rho(p) and coordinates cannot
    share p."""
    return (system.dstar % p != 0) and (system.qstar.lc % p != 0)
