"""Backend dispatch for the hot numeric kernels.

Two interchangeable backends implement the same four kernels:

* ``numba`` -- @njit compiled loops (default whenever numba imports);
* ``numpy`` -- pure-numpy vectorized fallbacks.

Selection: the environment variable ``MAJORANT_LAB_BACKEND`` (``numba`` /
``numpy``), else numba if available.  ``_python.py`` holds the slow
arbitrary-precision reference used for oddball inputs (p = 2, p | lc,
values beyond int64) and as the oracle in the kernel parity tests.

``benchmarks/bench_kernels.py`` times the two backends against each other.
"""

from __future__ import annotations

import os

import numpy as np

from . import _python

_ENV = "MAJORANT_LAB_BACKEND"


def _choose_backend():
    req = os.environ.get(_ENV, "").strip().lower()
    if req == "numpy":
        from . import _numpy as impl

        return "numpy", impl
    if req == "numba":
        from . import _numba as impl

        return "numba", impl
    if req:
        raise RuntimeError(f"{_ENV} must be 'numba' or 'numpy', not {req!r}")
    try:
        from . import _numba as impl

        return "numba", impl
    except ImportError:
        from . import _numpy as impl

        return "numpy", impl


BACKEND_NAME, _impl = _choose_backend()

MAX_SAFE_COEFF = 1 << 62
MAX_KERNEL_PRIME = 1 << 30
MAX_KERNEL_DEGREE = 16


def count_roots_bulk(coeffs, primes) -> np.ndarray:
    """Distinct-root counts of one integer polynomial mod many primes.

    Routes odd primes not dividing the leading coefficient through the
    selected backend; p = 2, p | lc, huge p and high degrees fall back to the
    scalar reference.  ``coeffs`` low-first, any size; ``primes`` ascending.
    """
    P = np.asarray(primes, dtype=np.int64)
    out = np.zeros(len(P), dtype=np.int64)
    if len(P) == 0:
        return out
    coeffs = [int(c) for c in coeffs]
    d = len(coeffs) - 1
    if d < 1:
        return out
    if d == 1:
        # p | lc forces p coprime to the constant term (primitive input)
        lc = coeffs[-1]
        if abs(lc) < MAX_SAFE_COEFF:
            return ((lc % P) != 0).astype(np.int64)
        return np.asarray([1 if lc % int(p) else 0 for p in P], dtype=np.int64)
    if 2 <= d <= MAX_KERNEL_DEGREE and all(abs(c) < MAX_SAFE_COEFF for c in coeffs):
        fast = (P > 2) & (P < MAX_KERNEL_PRIME) & ((coeffs[-1] % P) != 0)
    else:
        fast = np.zeros(len(P), dtype=bool)
    fast_idx = np.flatnonzero(fast)
    if fast_idx.size:
        Pf = P[fast_idx]
        C = np.empty((fast_idx.size, d + 1), dtype=np.int64)
        for j, c in enumerate(coeffs):
            C[:, j] = int(c) % Pf
        out[fast_idx] = _impl.count_roots_many(C, Pf)
    slow_idx = np.flatnonzero(~fast)
    for i in slow_idx:
        out[i] = _python.count_roots_one(list(coeffs), int(P[i]))
    return out


def scan_exact_count(rows, mods, divs, nondivs, m: int) -> int:
    """Residue scan: see :func:`._python.scan_exact_count` for the contract."""
    if m <= 0:
        return 0
    rows = [[int(c) % int(mod) for c in row] for row, mod in zip(rows, mods)]
    if not rows:
        return int(m)
    width = max(len(r) for r in rows)
    rows = [r + [0] * (width - len(r)) for r in rows]
    if int(m) < 512 or max(int(v) for v in mods) >= MAX_KERNEL_PRIME:
        return _python.scan_exact_count(rows, list(map(int, mods)),
                                        list(map(int, divs)),
                                        list(map(int, nondivs)), int(m))
    return int(
        _impl.scan_exact_count(
            np.asarray(rows, dtype=np.int64),
            np.asarray(mods, dtype=np.int64),
            np.asarray(divs, dtype=np.int64),
            np.asarray(nondivs, dtype=np.int64),
            int(m),
        )
    )


def divide_out_int64(values: np.ndarray, n0: int, p: int, roots) -> tuple[np.ndarray, np.ndarray]:
    """Divide all powers of p out of an int64 value table along root classes."""
    roots = np.asarray(sorted(int(r) for r in roots), dtype=np.int64)
    cap = 0
    for r in roots:
        start = int((int(r) - n0) % p)
        if start < values.shape[0]:
            cap += (values.shape[0] - start - 1) // p + 1
    idx = np.empty(cap, dtype=np.int64)
    exp = np.empty(cap, dtype=np.int64)
    k = _impl.divide_out(values, n0, p, roots, idx, exp)
    return idx[:k], exp[:k]


def divisor_power_table(n: int, m: int) -> np.ndarray:
    """tau_m(j) for j <= n as an int64 array (index 0 is 0)."""
    return np.asarray(_impl.tau_m_table(int(n), int(m)), dtype=np.int64)
