"""Vectorized numpy implementations of the hot kernels.

Same contracts as :mod:`._numba`; the prime axis is vectorized instead of
looped.  The Frobenius powering and the polynomial Euclid run on the whole
prime batch at once, with per-row degrees tracked through masks.
"""

from __future__ import annotations

import numpy as np

_SCAN_CHUNK = 1 << 20


def _modpow_vec(base, exps, mods):
    """base**exps mod mods, elementwise, via masked binary powering."""
    b = base % mods
    e = exps.astype(np.int64)
    r = np.ones_like(mods)
    maxbits = int(e.max()).bit_length() if e.size else 0
    for k in range(maxbits):
        bit = ((e >> k) & 1).astype(bool)
        if bit.any():
            r = np.where(bit, r * b % mods, r)
        b = b * b % mods
    return r


def _mul_reduce(a, b, f, p):
    """a*b mod (monic f, p) for row batches a, b of width d = f width - 1."""
    d = a.shape[1]
    t = np.zeros((a.shape[0], 2 * d - 1), dtype=np.int64)
    for i in range(d):
        ai = a[:, i]
        for j in range(d):
            t[:, i + j] = (t[:, i + j] + ai * b[:, j]) % p
    for k in range(2 * d - 2, d - 1, -1):
        c = t[:, k]
        t[:, k - d : k] = (t[:, k - d : k] - c[:, None] * f[:, :d]) % p[:, None]
        t[:, k] = 0
    return t[:, :d]


def count_roots_many(coeffs_mod, primes):
    """Distinct roots mod p of each row; see the numba twin for the contract."""
    P = np.asarray(primes, dtype=np.int64)
    C = np.asarray(coeffs_mod, dtype=np.int64)
    n, w = C.shape
    d = w - 1
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    inv_lc = _modpow_vec(C[:, d], P - 2, P)
    f = C * inv_lc[:, None] % P[:, None]
    # X^p mod (f, p) by right-to-left powering over the whole batch
    res = np.zeros((n, d), dtype=np.int64)
    res[:, 0] = 1
    base = np.zeros((n, d), dtype=np.int64)
    base[:, 1] = 1
    e = P.copy()
    maxbits = int(P.max()).bit_length()
    for k in range(maxbits):
        bit = ((e >> k) & 1).astype(bool)
        if bit.any():
            prod = _mul_reduce(res, base, f, P)
            res = np.where(bit[:, None], prod, res)
        if k + 1 < maxbits:
            base = _mul_reduce(base, base, f, P)
    # Euclid for gcd(res - X, f), batched with per-row degree masks
    A = f.copy()
    dA = np.full(n, d, dtype=np.int64)
    B = np.zeros((n, w), dtype=np.int64)
    B[:, :d] = res
    B[:, 1] = (B[:, 1] - 1) % P
    out = np.full(n, -1, dtype=np.int64)
    alive = np.ones(n, dtype=bool)
    for _ in range(d + 2):
        nz = B != 0
        zeroB = ~nz.any(axis=1)
        done = alive & zeroB
        if done.any():
            out[done] = dA[done]
            alive &= ~zeroB
        if not alive.any():
            break
        dB = w - 1 - np.argmax(nz[:, ::-1], axis=1)
        dB = np.where(alive, dB, 0)
        const = alive & (dB == 0)
        if const.any():
            out[const] = 0
            alive &= ~const
            if not alive.any():
                break
        lead = np.take_along_axis(B, dB[:, None], axis=1)[:, 0]
        lead = np.where(alive, lead, 1)
        inv = _modpow_vec(lead, P - 2, P)
        Bm = B * inv[:, None] % P[:, None]
        R = A.copy()
        for dbv in range(1, d):
            m = alive & (dB == dbv)
            if not m.any():
                continue
            Rm = A.copy()
            for k in range(w - 1, dbv - 1, -1):
                c = Rm[:, k]
                Rm[:, k - dbv : k] = (
                    Rm[:, k - dbv : k] - c[:, None] * Bm[:, :dbv]
                ) % P[:, None]
                Rm[:, k] = 0
            R = np.where(m[:, None], Rm, R)
        A = np.where(alive[:, None], Bm, A)
        B = np.where(alive[:, None], R, B)
        dA = np.where(alive, dB, dA)
    return out


def scan_exact_count(rows, mods, divs, nondivs, m):
    """Chunked vectorized version of the residue scan."""
    rows = np.asarray(rows, dtype=np.int64)
    mods = np.asarray(mods, dtype=np.int64)
    divs = np.asarray(divs, dtype=np.int64)
    nondivs = np.asarray(nondivs, dtype=np.int64)
    total = 0
    for lo in range(0, m, _SCAN_CHUNK):
        hi = min(lo + _SCAN_CHUNK, m)
        ns = np.arange(lo, hi, dtype=np.int64)
        ok = np.ones(hi - lo, dtype=bool)
        for i in range(rows.shape[0]):
            mod = int(mods[i])
            v = np.zeros(hi - lo, dtype=np.int64)
            for j in range(rows.shape[1] - 1, -1, -1):
                v = (v * ns + rows[i, j]) % mod
            ok &= v % int(divs[i]) == 0
            if nondivs[i] > 0:
                ok &= v != 0
            if not ok.any():
                break
        total += int(np.count_nonzero(ok))
    return total


def divide_out(values, n0, p, roots, idx_out, exp_out):
    """Vectorized divide-out over the arithmetic progressions of each root."""
    size = values.shape[0]
    k = 0
    for r in np.asarray(roots, dtype=np.int64):
        start = int((r - n0) % p)
        idx = np.arange(start, size, p, dtype=np.int64)
        if idx.size == 0:
            continue
        sub = values[idx]
        exp = np.zeros(idx.size, dtype=np.int64)
        mask = (sub % p == 0) & (sub != 0)
        while mask.any():
            sub[mask] //= p
            exp[mask] += 1
            mask &= sub % p == 0
        values[idx] = sub
        hit = exp > 0
        cnt = int(np.count_nonzero(hit))
        idx_out[k : k + cnt] = idx[hit]
        exp_out[k : k + cnt] = exp[hit]
        k += cnt
    return k


def tau_m_table(n, m):
    """tau_m table via repeated Dirichlet convolution with 1."""
    t = np.ones(n + 1, dtype=np.int64)
    t[0] = 0
    for _ in range(m - 1):
        out = np.zeros(n + 1, dtype=np.int64)
        for a in range(1, n + 1):
            va = t[a]
            if va:
                out[a::a] += va
        t = out
    return t
