"""Exact arithmetic on dense integer polynomials and factored systems.

Coefficients are arbitrary-precision ints, stored low degree first with no
trailing zeros; the zero polynomial is the empty tuple.  Resultants are
computed twice over: a subresultant pseudo-remainder sequence is the main
path and a fraction-free Bareiss determinant of the Sylvester matrix is kept
as an independent cross-check oracle.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property

from .errors import DomainError, InvariantError


def _trim(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(int(v) for v in c)


@dataclass(frozen=True)
class IntPoly:
    """Dense univariate polynomial over Z; coeffs[i] multiplies X^i."""

    coeffs: tuple[int, ...]

    @staticmethod
    def from_coeffs(coeffs) -> "IntPoly":
        return IntPoly(_trim(coeffs))

    @staticmethod
    def constant(c: int) -> "IntPoly":
        return IntPoly.from_coeffs([c])

    @staticmethod
    def x() -> "IntPoly":
        return IntPoly((0, 1))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        if self.is_zero:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def evaluate(self, n: int) -> int:
        """P(n) by Horner's rule, exactly."""
        v = 0
        for c in reversed(self.coeffs):
            v = v * n + c
        return v

    def evaluate_mod(self, n: int, m: int) -> int:
        v = 0
        for c in reversed(self.coeffs):
            v = (v * n + c) % m
        return v

    def norm(self) -> int:
        """Sum of the absolute values of the coefficients."""
        return sum(abs(c) for c in self.coeffs)

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    @property
    def is_primitive(self) -> bool:
        return self.content() == 1

    def derivative(self) -> "IntPoly":
        return IntPoly(_trim(i * c for i, c in enumerate(self.coeffs) if i >= 1))

    def primitive_part(self) -> "IntPoly":
        """Content removed, leading coefficient made positive."""
        if self.is_zero:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return IntPoly(tuple(v // c for v in self.coeffs))

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return IntPoly(_trim(out))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            if other == 0:
                return IntPoly(())
            return IntPoly(tuple(other * c for c in self.coeffs))
        if self.is_zero or other.is_zero:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(_trim(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPoly":
        if e < 0:
            raise DomainError("negative polynomial power")
        out = IntPoly((1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift_reduce_mod(self, p: int) -> tuple[int, ...]:
        """Coefficients reduced into [0, p)."""
        return tuple(c % p for c in self.coeffs)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c))
                term = f"{mag}x" + (f"^{i}" if i > 1 else "")
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append(("-" if c < 0 else "+") + term)
        return "".join(parts)


_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)\s*(?P<coef>\d+)?\s*(?P<var>[xX])?\s*(?:\^\s*(?P<exp>\d+))?\s*"
)


def parse_poly(text: str) -> IntPoly:
    """Parse "1,0,1" (coefficients, low to high) or "x^2+1" into an IntPoly."""
    s = text.strip()
    if not s:
        raise DomainError("empty polynomial string")
    if "," in s or s.lstrip("+-").isdigit():
        try:
            return IntPoly.from_coeffs(int(t.strip()) for t in s.split(","))
        except ValueError as exc:
            raise DomainError(f"bad coefficient list {text!r}") from exc
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise DomainError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        coef = m.group("coef")
        var = m.group("var")
        exp = m.group("exp")
        if coef is None and var is None:
            raise DomainError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        c = sign * (int(coef) if coef is not None else 1)
        e = 0
        if var is not None:
            e = int(exp) if exp is not None else 1
        elif exp is not None:
            raise DomainError(f"exponent without variable in {text!r}")
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return IntPoly.from_coeffs(out)


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder: lc(b)^(da-db+1) * a mod b, exact over Z."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    r = list(a)
    for k in range(da, db - 1, -1):
        lead = r[k]
        for i in range(len(r)):
            r[i] *= lb
        if lead:
            for j in range(db + 1):
                r[k - db + j] -= lead * b[j]
    while r and r[-1] == 0:
        r.pop()
    return r


def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """gcd over Z via the primitive pseudo-remainder sequence (positive lc)."""
    if p.is_zero:
        return _abs_lc(q)
    if q.is_zero:
        return _abs_lc(p)
    cont = math.gcd(p.content(), q.content())
    a = list(p.primitive_part().coeffs)
    b = list(q.primitive_part().coeffs)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, list(IntPoly.from_coeffs(r).primitive_part().coeffs)
    return IntPoly.from_coeffs(a).primitive_part() * cont


def _abs_lc(p: IntPoly) -> IntPoly:
    return -p if (not p.is_zero and p.lc < 0) else p


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Res(p, q) via the subresultant PRS (Cohen, Alg. 3.3.7)."""
    if p.is_zero or q.is_zero:
        raise DomainError("resultant of the zero polynomial")
    if p.degree == 0 and q.degree == 0:
        return 1
    if p.degree < q.degree:
        sign = -1 if (p.degree * q.degree) % 2 else 1
        return sign * resultant(q, p)
    if q.degree == 0:
        return q.coeffs[0] ** p.degree
    # contents are stripped with their sign kept on the polynomial
    ca, cb = p.content(), q.content()
    A = [v // ca for v in p.coeffs]
    B = [v // cb for v in q.coeffs]
    s = 1
    t = ca**q.degree * cb**p.degree
    g, h = 1, 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _pseudo_rem(A, B)
        A = B
        divisor = g * h**delta
        B = [v // divisor for v in R]
        g = A[-1]
        if delta >= 1:
            h = g**delta // h ** (delta - 1)
        if not B:
            return 0
        if len(B) == 1:
            dA = len(A) - 1
            # res = s * t * lc(B)^dA / h^(dA-1), exact over Z
            return s * t * (B[0] ** dA // h ** (dA - 1))


def resultant_sylvester(p: IntPoly, q: IntPoly) -> int:
    """Res(p, q) as the Bareiss determinant of the Sylvester matrix.

    Independent oracle for :func:`resultant`; O((m+n)^3) exact arithmetic.
    """
    if p.is_zero or q.is_zero:
        raise DomainError("resultant of the zero polynomial")
    m, n = p.degree, q.degree
    size = m + n
    if size == 0:
        return 1
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([0] * i + pc + [0] * (size - i - m - 1))
    for i in range(m):
        rows.append([0] * i + qc + [0] * (size - i - n - 1))
    # Bareiss fraction-free elimination
    sign = 1
    prev = 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, size):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return sign * rows[size - 1][size - 1]


def discriminant(p: IntPoly) -> int:
    """Disc(p) = (-1)^(d(d-1)/2) Res(p, p') / lc(p); 1 for linear p."""
    d = p.degree
    if d < 1:
        raise DomainError("discriminant requires degree >= 1")
    if d == 1:
        return 1
    r = resultant(p, p.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, p.lc)
    if rem:
        raise DomainError("discriminant division was not exact")
    return q


def squarefree_part(q: IntPoly) -> IntPoly:
    """q / gcd(q, q'), primitive with positive leading coefficient."""
    if q.is_zero:
        raise DomainError("squarefree part of the zero polynomial")
    if not q.is_primitive:
        raise DomainError("squarefree_part requires a primitive polynomial")
    if q.degree == 0:
        return IntPoly((1,))
    g = poly_gcd(q, q.derivative())
    num = list(q.coeffs)
    den = list(g.coeffs)
    out = _exact_poly_div(num, den)
    return IntPoly.from_coeffs(out).primitive_part()


def _exact_poly_div(num: list[int], den: list[int]) -> list[int]:
    """Exact division of polynomials over Q known to be exact over Z up to
    content; returns the primitive integer quotient."""
    from fractions import Fraction

    n = [Fraction(v) for v in num]
    d = [Fraction(v) for v in den]
    out = [Fraction(0)] * (len(n) - len(d) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = n[k + len(d) - 1] / d[-1]
        out[k] = c
        if c:
            for j in range(len(d)):
                n[k + j] -= c * d[j]
    if any(v for v in n):
        raise DomainError("polynomial division was not exact")
    den_lcm = math.lcm(*(f.denominator for f in out)) if out else 1
    ints = [int(f * den_lcm) for f in out]
    return ints


def fixed_prime_divisors(q: IntPoly) -> set[int]:
    """Primes p with p | q(n) for every n; for primitive q these satisfy
    p <= deg q, so a direct residue scan of the small primes suffices."""
    if q.is_zero:
        return set()
    if not q.is_primitive:
        raise DomainError("fixed_prime_divisors requires a primitive polynomial")
    out = set()
    g = q.degree
    p = 2
    while p <= g:
        if all(q.evaluate_mod(n, p) == 0 for n in range(p)):
            out.add(p)
        p = _next_prime(p)
    return out


def _next_prime(p: int) -> int:
    from .arith import is_prime

    n = p + 1
    while not is_prime(n):
        n += 1
    return n


class FactoredSystem:
    """A family (Q_1, ..., Q_k) given by squarefree-coprime factors
    R_1, ..., R_r and a k x r exponent matrix: Q_j = prod_h R_h^{e[j][h]}.

    Validated invariants: every factor primitive of degree >= 1, pairwise
    nonzero resultants, squarefree product (nonzero discriminant), every
    factor actually used.  Instances are immutable by convention and safe to
    share across threads; derived quantities are cached.
    """

    def __init__(self, factors, exponents):
        factors = tuple(_abs_lc(f) for f in factors)
        exponents = tuple(tuple(int(v) for v in row) for row in exponents)
        r = len(factors)
        k = len(exponents)
        if r < 1 or k < 1:
            raise InvariantError("need at least one factor and one polynomial")
        if any(len(row) != r for row in exponents):
            raise InvariantError("exponent matrix shape does not match factors")
        if any(v < 0 for row in exponents for v in row):
            raise InvariantError("negative exponent")
        for h, f in enumerate(factors):
            if f.degree < 1:
                raise InvariantError(f"factor {h} has degree < 1")
            if not f.is_primitive:
                raise InvariantError("Q not primitive")
        for h in range(r):
            if all(row[h] == 0 for row in exponents):
                raise InvariantError(f"factor {h} unused (zero column)")
        for h in range(r):
            for i in range(h + 1, r):
                if resultant(factors[h], factors[i]) == 0:
                    raise InvariantError("pairwise resultant zero")
        self.factors = factors
        self.exponents = exponents
        self.r = r
        self.k = k
        qstar = IntPoly((1,))
        for f in factors:
            qstar = qstar * f
        self.qstar = qstar
        self.dstar = discriminant(qstar)
        if self.dstar == 0:
            raise InvariantError("Q* not squarefree")
        self.polys = tuple(
            _prod_powers(factors, row) for row in exponents
        )
        q = IntPoly((1,))
        for poly in self.polys:
            q = q * poly
        self.q = q
        if not q.is_primitive:
            raise InvariantError("Q not primitive")
        self.g = q.degree
        self.gstar = qstar.degree
        self.disc = discriminant(q) if q.degree >= 1 else 1
        self._cache: dict = {}

    @cached_property
    def fixed_primes(self) -> frozenset[int]:
        return frozenset(fixed_prime_divisors(self.q))

    @cached_property
    def factor_degrees(self) -> tuple[int, ...]:
        return tuple(f.degree for f in self.factors)

    def norm(self) -> int:
        return self.q.norm()

    def __repr__(self) -> str:
        fs = ";".join(str(f) for f in self.factors)
        return f"FactoredSystem([{fs}], k={self.k})"


def _prod_powers(factors, row) -> IntPoly:
    out = IntPoly((1,))
    for f, e in zip(factors, row):
        if e:
            out = out * f**e
    return out


def build_factored_system(factors, exponents=None) -> FactoredSystem:
    """Construct and validate a FactoredSystem.

    ``factors`` may be IntPoly values or parseable strings.  ``exponents``
    defaults to the identity (k = r, Q_j = R_j).
    """
    fs = [f if isinstance(f, IntPoly) else parse_poly(f) for f in factors]
    if exponents is None:
        exponents = [[1 if i == j else 0 for j in range(len(fs))] for i in range(len(fs))]
    return FactoredSystem(fs, exponents)
