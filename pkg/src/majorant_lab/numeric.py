"""Numeric modes: exact rationals and high-precision decimal floats.

Every quantity in this package is either an exact rational or a rational
multiplied by a transcendental factor (log x, exp of a prime sum).  Two
arithmetic modes are supported:

* ``exact``  -- fractions.Fraction end to end; transcendental factors are
  applied once, in 36-digit decimal, at the very end.
* ``float``  -- decimal.Decimal with a 36-digit context (~120-bit mantissa),
  used as the fast path for large x.

decimal is used rather than binary floats because 53 bits are not enough to
keep both modes in 10-significant-digit agreement over ~10^5-factor Euler
products, and because decimal arithmetic is bit-deterministic across
platforms, which the reproducibility guarantees rely on.
"""

from __future__ import annotations

import decimal
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Sequence

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

#: working context for float mode; prec 36 digits ~ 120-bit mantissa
CTX = decimal.Context(prec=36, Emin=-999999, Emax=999999)


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    return mode


def to_decimal(value) -> Decimal:
    """Convert an int / Fraction / Decimal / float to Decimal under CTX."""
    if isinstance(value, Decimal):
        return value
    if isinstance(value, int):
        return CTX.create_decimal(value)
    if isinstance(value, Fraction):
        return CTX.divide(CTX.create_decimal(value.numerator),
                          CTX.create_decimal(value.denominator))
    if isinstance(value, float):
        return CTX.create_decimal(repr(value))
    raise TypeError(f"cannot convert {type(value).__name__} to Decimal")


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    raise TypeError(f"cannot convert {type(value).__name__} to Fraction")


def convert(value, mode: str):
    """Coerce a number into the representation of the given mode."""
    if mode == EXACT:
        return value if isinstance(value, (int, Fraction)) else to_fraction(value)
    return to_decimal(value)


def ratio(num: int, den: int, mode: str):
    """num/den in the requested mode without building a huge Fraction twice."""
    if mode == EXACT:
        return Fraction(num, den)
    return CTX.divide(CTX.create_decimal(num), CTX.create_decimal(den))


def prod_ints(values: Sequence[int]) -> int:
    """Product of integers via a balanced tree (fast for many small factors)."""
    vals = list(values)
    if not vals:
        return 1
    while len(vals) > 1:
        nxt = [vals[i] * vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def sum_exact(values: Iterable[Fraction]) -> Fraction:
    """Pairwise-merge summation of Fractions.

    Chained Fraction addition re-reduces a growing denominator at every step;
    merging pairwise keeps operands of similar size and is near-linear in the
    output size.
    """
    vals = list(values)
    if not vals:
        return Fraction(0)
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


def accumulate_product(factors: Iterable[Fraction], mode: str):
    """Product of rational factors, chunked into raw integer products.

    Works in integer numerator/denominator chunks so that exact mode does one
    gcd at the end instead of one per factor, and float mode loses no
    precision inside a chunk.
    """
    check_mode(mode)
    num_chunk: list[int] = []
    den_chunk: list[int] = []
    acc = Fraction(1) if mode == EXACT else CTX.create_decimal(1)
    nums: list[int] = []
    dens: list[int] = []
    for f in factors:
        num_chunk.append(f.numerator)
        den_chunk.append(f.denominator)
        if len(num_chunk) == 64:
            nums.append(prod_ints(num_chunk))
            dens.append(prod_ints(den_chunk))
            num_chunk, den_chunk = [], []
            if mode == FLOAT and len(nums) == 64:
                acc = CTX.multiply(acc, ratio(prod_ints(nums), prod_ints(dens), FLOAT))
                nums, dens = [], []
    if num_chunk:
        nums.append(prod_ints(num_chunk))
        dens.append(prod_ints(den_chunk))
    if nums:
        if mode == EXACT:
            acc = acc * Fraction(prod_ints(nums), prod_ints(dens))
        else:
            acc = CTX.multiply(acc, ratio(prod_ints(nums), prod_ints(dens), FLOAT))
    return acc


def accumulate_sum(terms: Iterable[Fraction], mode: str):
    """Sum of rational terms in the requested mode.

    Exact mode merges pairwise; float mode converts each term to Decimal
    (each conversion is one correctly-rounded division) and adds under CTX.
    """
    check_mode(mode)
    if mode == EXACT:
        return sum_exact(terms)
    acc = CTX.create_decimal(0)
    for t in terms:
        acc = CTX.add(acc, to_decimal(t))
    return acc


def dec_log(x) -> Decimal:
    return CTX.ln(to_decimal(x))


def dec_exp(x) -> Decimal:
    return CTX.exp(to_decimal(x))


def dec_pow(base, exponent) -> Decimal:
    """base**exponent for positive base via exp(exponent * ln(base))."""
    b = to_decimal(base)
    e = to_decimal(exponent)
    if b <= 0:
        raise ValueError(f"dec_pow requires a positive base, got {base}")
    return CTX.exp(CTX.multiply(e, CTX.ln(b)))


def render(value, mode: str) -> str:
    """Deterministic string form for reports.

    Exact mode: integers plain, Fractions as ``p/q``; decimal-carried values
    (those tainted by a transcendental factor) at 18 significant digits.
    Float mode: 12 significant digits in scientific notation.
    """
    check_mode(mode)
    if isinstance(value, str):
        return value
    if mode == EXACT:
        if isinstance(value, int):
            return str(value)
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return str(value.numerator)
            return f"{value.numerator}/{value.denominator}"
        return format(to_decimal(value), ".17E")
    return format(to_decimal(value), ".11E")


def as_comparable(value) -> Decimal:
    """Decimal view of any mode's value, for threshold checks."""
    return to_decimal(value)
