"""Reference implementations of the hot kernels, in plain Python.

These are the semantic ground truth: slow, arbitrary-precision, and simple
enough to audit by eye.  The numba and numpy backends are certified against
them in the test suite; production code also routes the rare cases the fast
backends exclude (p = 2, p | lc, values past int64) through here.

Modular polynomial helpers at the bottom are shared with the explicit
root-finding code in :mod:`majorant_lab.rootcount`.
"""

from __future__ import annotations


def count_roots_one(coeffs, p: int) -> int:
    """Number of distinct roots of the polynomial mod p (any prime p >= 2)."""
    p = int(p)
    c = [int(v) % p for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    if not c:
        raise ValueError("polynomial vanishes identically mod p")
    if len(c) == 1:
        return 0
    if len(c) == 2:
        return 1
    if p < 64:
        return sum(1 for n in range(p) if _horner(c, n, p) == 0)
    f = make_monic(c, p)
    # X^p mod f, then deg gcd(X^p - X, f) counts the distinct roots
    g = list(pow_x_mod(p, f, p))
    if len(g) < 2:
        g += [0] * (2 - len(g))
    g[1] = (g[1] - 1) % p
    g = _trimmed(g)
    if not g:
        return len(f) - 1  # f divides X^p - X: splits into distinct linears
    d = poly_gcd_mod(f, g, p)
    return len(d) - 1


def count_roots_many(coeffs_mod, primes) -> list[int]:
    """Per-prime distinct-root counts; rows of coeffs_mod are pre-reduced."""
    return [count_roots_one(row, int(p)) for row, p in zip(coeffs_mod, primes)]


def scan_exact_count(rows, mods, divs, nondivs, m: int) -> int:
    """Count n in [0, m) with row_i(n) == 0 mod divs[i] for every row, and,
    where nondivs[i] > 0, row_i(n) != 0 mod nondivs[i].

    Each row is evaluated mod mods[i] (a multiple of divs[i] and, when set,
    equal to nondivs[i]).
    """
    count = 0
    for n in range(m):
        ok = True
        for row, mod, dv, nd in zip(rows, mods, divs, nondivs):
            v = _horner(row, n, mod)
            if v % dv:
                ok = False
                break
            if nd > 0 and v == 0:
                ok = False
                break
        if ok:
            count += 1
    return count


def divide_out(values: list, n0: int, p: int, roots) -> list[tuple[int, int]]:
    """Strip every power of p from values[i] for i with n0+i a root class.

    values holds |P(n)| for consecutive n starting at n0, as Python ints;
    mutated in place.  Returns (index, exponent) pairs, exponent >= 1.
    """
    out = []
    size = len(values)
    for r in roots:
        i = (int(r) - n0) % p
        while i < size:
            v = values[i]
            e = 0
            while v % p == 0 and v:
                v //= p
                e += 1
            if e:
                values[i] = v
                out.append((i, e))
            i += p
    return out


def tau_m_table(n: int, m: int) -> list[int]:
    """tau_m(j) for 0 <= j <= n (index 0 unused, set to 0)."""
    t = [1] * (n + 1)
    t[0] = 0
    for _ in range(m - 1):
        out = [0] * (n + 1)
        for a in range(1, n + 1):
            va = t[a]
            if va:
                for j in range(a, n + 1, a):
                    out[j] += va
        t = out
    return t


# --- modular polynomial helpers (monic representative lists, low first) ---


def _horner(coeffs, n: int, m: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = (v * n + c) % m
    return v


def _trimmed(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def make_monic(c, p: int):
    c = [int(v) % p for v in c]
    while c and c[-1] == 0:
        c.pop()
    if not c:
        return c
    inv = pow(c[-1], p - 2, p)
    return [(v * inv) % p for v in c]


def poly_mul_mod(a, b, p: int):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trimmed(out)


def poly_rem_mod(a, f, p: int):
    """a mod f with f monic, coefficients mod p."""
    a = [v % p for v in a]
    d = len(f) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            for j in range(d):
                a[k - d + j] = (a[k - d + j] - c * f[j]) % p
            a[k] = 0
    return _trimmed(a[:d])


def poly_pow_mod(base, e: int, f, p: int):
    """base^e mod (f, p), f monic."""
    res = [1]
    b = poly_rem_mod(base, f, p)
    while e:
        if e & 1:
            res = poly_rem_mod(poly_mul_mod(res, b, p), f, p)
        b = poly_rem_mod(poly_mul_mod(b, b, p), f, p)
        e >>= 1
    return res


def pow_x_mod(e: int, f, p: int):
    """X^e mod (f, p) for monic f of degree >= 1."""
    if len(f) - 1 == 1:
        # X = -f0 in the quotient ring
        return _trimmed([pow(-f[0] % p, e, p)]) if e else [1]
    return poly_pow_mod([0, 1], e, f, p)


def poly_gcd_mod(a, b, p: int):
    """Monic gcd of a, b over F_p (empty list for gcd of zeros)."""
    a = make_monic(a, p)
    b = make_monic(b, p)
    while b:
        if len(b) == 1:
            return [1]
        r = poly_rem_mod(a, b, p)
        a, b = b, make_monic(r, p)
    return a
