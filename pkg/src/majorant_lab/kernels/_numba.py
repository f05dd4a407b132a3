"""numba @njit implementations of the hot kernels.

All arithmetic is int64.  Callers guarantee: primes are odd, below 2^31, and
do not divide the leading coefficient (so the reduced degree is the true
degree); scan moduli stay below 2^31 so Horner products cannot overflow.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_W = 18  # max supported degree + a little headroom for products


@njit(cache=True)
def _modpow(b, e, p):
    b %= p
    r = 1
    while e:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


@njit(cache=True)
def _mulmod_reduce(a, b, f, d, p, tmp):
    """tmp <- a*b mod (monic f, p); a, b of degree < d. Returns nothing."""
    for i in range(2 * d - 1):
        tmp[i] = 0
    for i in range(d):
        if a[i]:
            ai = a[i]
            for j in range(d):
                tmp[i + j] = (tmp[i + j] + ai * b[j]) % p
    for k in range(2 * d - 2, d - 1, -1):
        c = tmp[k]
        if c:
            for j in range(d):
                tmp[k - d + j] = (tmp[k - d + j] - c * f[j]) % p
            tmp[k] = 0


@njit(cache=True)
def count_roots_many(coeffs_mod, primes):
    """Distinct roots mod p of each row (reduced coefficients, full degree).

    Row layout: coeffs_mod[i, j] holds the X^j coefficient mod primes[i];
    every row has the same degree d = coeffs_mod.shape[1] - 1 >= 2.
    """
    n = primes.shape[0]
    d = coeffs_mod.shape[1] - 1
    out = np.zeros(n, dtype=np.int64)
    f = np.zeros(_W, dtype=np.int64)
    res = np.zeros(_W, dtype=np.int64)
    base = np.zeros(_W, dtype=np.int64)
    tmp = np.zeros(2 * _W, dtype=np.int64)
    A = np.zeros(_W, dtype=np.int64)
    B = np.zeros(_W, dtype=np.int64)
    for row in range(n):
        p = primes[row]
        inv = _modpow(coeffs_mod[row, d], p - 2, p)
        for j in range(d + 1):
            f[j] = coeffs_mod[row, j] * inv % p
        # res <- X^p mod (f, p), right-to-left binary powering
        for j in range(d):
            res[j] = 0
            base[j] = 0
        res[0] = 1
        base[1] = 1
        e = p
        while e:
            if e & 1:
                _mulmod_reduce(res, base, f, d, p, tmp)
                for j in range(d):
                    res[j] = tmp[j]
            e >>= 1
            if e:
                _mulmod_reduce(base, base, f, d, p, tmp)
                for j in range(d):
                    base[j] = tmp[j]
        # gcd(res - X, f): Euclid over F_p, A monic of degree da
        for j in range(d + 1):
            A[j] = f[j]
        da = d
        for j in range(d):
            B[j] = res[j]
        B[1] = (B[1] - 1) % p
        db = d - 1
        while db >= 0 and B[db] == 0:
            db -= 1
        while db >= 0:
            if db == 0:
                da = 0
                break
            lead_inv = _modpow(B[db], p - 2, p)
            for j in range(db + 1):
                B[j] = B[j] * lead_inv % p
            # A <- A mod B (B monic of degree db)
            for k in range(da, db - 1, -1):
                c = A[k]
                if c:
                    for j in range(db):
                        A[k - db + j] = (A[k - db + j] - c * B[j]) % p
                    A[k] = 0
            # swap roles
            for j in range(db + 1):
                t = A[j]
                A[j] = B[j]
                B[j] = t
            da = db
            db = da - 1
            while db >= 0 and B[db] == 0:
                db -= 1
        out[row] = da
    return out


@njit(cache=True)
def scan_exact_count(rows, mods, divs, nondivs, m):
    """Count n in [0, m) with row_i(n) = 0 mod divs[i] for all i and, where
    nondivs[i] > 0, row_i(n) != 0 mod nondivs[i]. Rows evaluated mod mods[i]."""
    nrows = rows.shape[0]
    width = rows.shape[1]
    count = 0
    for n in range(m):
        ok = True
        for i in range(nrows):
            mod = mods[i]
            v = 0
            for j in range(width - 1, -1, -1):
                v = (v * n + rows[i, j]) % mod
            if v % divs[i] != 0:
                ok = False
                break
            if nondivs[i] > 0 and v == 0:
                ok = False
                break
        if ok:
            count += 1
    return count


@njit(cache=True)
def divide_out(values, n0, p, roots, idx_out, exp_out):
    """Strip all powers of p at indices congruent to the given root classes.

    Fills idx_out/exp_out (preallocated to the exact class size) and returns
    the number of entries written.
    """
    size = values.shape[0]
    k = 0
    for t in range(roots.shape[0]):
        i = (roots[t] - n0) % p
        while i < size:
            v = values[i]
            e = 0
            while v % p == 0 and v != 0:
                v //= p
                e += 1
            if e > 0:
                values[i] = v
                idx_out[k] = i
                exp_out[k] = e
                k += 1
            i += p
    return k


@njit(cache=True)
def tau_m_table(n, m):
    """tau_m(j) for 0 <= j <= n via an SPF sieve and multiplicative DP."""
    spf = np.zeros(n + 1, dtype=np.int64)
    for i in range(2, n + 1):
        if spf[i] == 0:
            for j in range(i, n + 1, i):
                if spf[j] == 0:
                    spf[j] = i
    t = np.zeros(n + 1, dtype=np.int64)
    if n >= 1:
        t[1] = 1
    for i in range(2, n + 1):
        p = spf[i]
        j = i
        e = 0
        while j % p == 0:
            j //= p
            e += 1
        # tau_m(p^e) = C(e + m - 1, m - 1)
        num = 1
        den = 1
        for s in range(1, m):
            num *= e + s
            den *= s
        t[i] = t[j] * (num // den)
    return t
