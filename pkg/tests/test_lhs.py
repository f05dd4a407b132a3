from fractions import Fraction

import pytest

from majorant_lab import arith
from majorant_lab.errors import DomainError, ZeroValueError
from majorant_lab.lhs import (factor_interval, prime_sum, shifted_pair_sums,
                              short_sum, sieve_count, sieve_rhs)
from majorant_lab.mfunc import one_function, pushforward, tau_function
from majorant_lab.polys import build_factored_system


def test_table_examples():
    sx = build_factored_system(["0,1"])
    t = factor_interval(sx, 10, 5)
    assert (t.lo, t.hi) == (11, 15)
    for n in range(11, 16):
        assert arith.Factorization(
            tuple(sorted(t.factor_value_exps(n, 0).items()))).value == n
    sq = build_factored_system(["1,0,1"])
    t = factor_interval(sq, 6, 2)
    assert t.factor_value_exps(7, 0) == {2: 1, 5: 2}


def test_table_matches_naive_factorization():
    sq = build_factored_system(["1,0,1"])
    t = factor_interval(sq, 1000, 100)
    for n in range(t.lo, t.hi + 1):
        expected = dict(arith.factor(n * n + 1))
        assert t.factor_value_exps(n, 0) == expected


def test_table_exact_beyond_int64():
    big = build_factored_system(["1,0,0,0,1"])  # X^4 + 1
    x = 2**16
    t = factor_interval(big, x, 3, sieve_bound=50)
    for n in range(t.lo, t.hi + 1):
        value = n**4 + 1
        assert value >= (1 << 62)  # exercises the arbitrary-precision path
        prod = 1
        for p, e in t.factor_value_exps(n, 0).items():
            prod *= p**e
        assert prod == value


def test_short_sum_examples():
    sx = build_factored_system(["0,1"])
    tau = tau_function()
    assert short_sum(sx, tau, 0, 10) == 27
    s2 = build_factored_system(["0,1", "2,1"])
    # frozen from direct evaluation: 2 + 6 + 4 + 12 + 4
    direct = sum((len([d for d in range(1, n + 1) if n % d == 0]))
                 * (len([d for d in range(1, n + 3) if (n + 2) % d == 0]))
                 for n in range(1, 6))
    assert direct == 28
    assert short_sum(s2, tau_function(2), 0, 5) == 28
    assert short_sum(sx, one_function(), 10, 5) == 5


def test_short_sum_fractional_endpoints():
    sx = build_factored_system(["0,1"])
    one = one_function()
    assert short_sum(sx, one, Fraction(3, 2), Fraction(7, 2)) == 5 - 1


def test_short_sum_matches_naive_per_n():
    sq = build_factored_system(["1,0,1"])
    tau = tau_function()
    value = short_sum(sq, tau, 1000, 50)
    naive = sum(tau.value1(n * n + 1) for n in range(1001, 1051))
    assert value == naive


def test_pushforward_sum_identity():
    # summing F over Q_j values equals summing Ftilde over factor values
    system = build_factored_system(["0,1", "1,1"], [[2, 1]])
    fn = tau_function(1)
    ft = pushforward(fn, system.exponents, degree_bound=system.g)
    factor_system = build_factored_system(system.factors)
    assert short_sum(system, fn, 5, 40) == short_sum(factor_system, ft, 5, 40)


def test_zero_value_rejected():
    sx = build_factored_system(["0,1"])
    with pytest.raises(ZeroValueError, match="n=0"):
        short_sum(sx, tau_function(), -1, 2)


def test_prime_sum_examples():
    sp = build_factored_system(["1,1"])
    tau = tau_function()
    assert prime_sum(sp, tau, 0, 10) == 13
    # oracle: tau(3) + tau(4) + tau(6) + tau(8)
    assert (2 + 3 + 4 + 4) == 13
    assert prime_sum(sp, tau, 24, 4) == 0
    assert prime_sum(sp, one_function(), 0, 100) == 25  # pi(100)
    with pytest.raises(DomainError):
        prime_sum(build_factored_system(["0,1"]), tau, 10, 5)


def test_sieve_count_walkthrough():
    sx = build_factored_system(["0,1"])
    # frozen via the enumeration oracle below
    expected = 0
    for n in range(1, 21):
        if not (n % 2 == 0 and (n // 2) % 2 == 1):
            continue
        if all(p == 2 or p > 3 for p, _ in arith.factor(n)):
            expected += 1
    assert expected == 3
    assert sieve_count(sx, (2,), 3, 0, 20) == 3


def test_sieve_count_vacuous():
    sx = build_factored_system(["0,1"])
    assert sieve_count(sx, (1,), 1, 0, 20) == 20


def test_sieve_count_empty_pattern():
    s7 = build_factored_system(["0,1", "7,1"])
    assert sieve_count(s7, (3, 3), 5, 0, 200) == 0


def test_sieve_count_matches_enumeration_oracle(quad_system):
    def oracle(system, parts, z, x, y, fixed):
        count = 0
        for n in range(int(x) + 1, int(x + y) + 1):
            vals = [abs(f.evaluate(n)) for f in system.factors]
            if any(v == 0 for v in vals):
                continue
            if not all(arith.exactly_divides(a, v)
                       for a, v in zip(parts, vals)):
                continue
            q = 1
            for v, col in zip(vals, range(system.r)):
                q *= v ** sum(row[col] for row in system.exponents)
            ok = True
            for p, _ in arith.factor(q):
                if p <= z and not any(a % p == 0 for a in parts) \
                        and p not in fixed:
                    ok = False
                    break
            if ok:
                count += 1
        return count

    for parts in [(1,), (2,), (5,)]:
        for z in (3, 10):
            got = sieve_count(quad_system, parts, z, 50, 120)
            want = oracle(quad_system, parts, z, 50, 120,
                          quad_system.fixed_primes)
            assert got == want, (parts, z)


def test_sieve_rhs():
    sx = build_factored_system(["0,1"])
    assert sieve_rhs(sx, (1,), 1, 20) == 20
    # formula recomputation for the walkthrough case
    assert sieve_rhs(sx, (2,), 3, 20) == Fraction(20) * Fraction(1, 4) * Fraction(2, 3)
    sq = build_factored_system(["1,0,1"])
    assert sieve_rhs(sq, (5,), 10, 1000) > 0


def test_shifted_pair_sums_match_short_sum():
    tt = tau_function(2)
    sums = shifted_pair_sums([2, 5, 12], 2, 400)
    for ell in (2, 5, 12):
        system = build_factored_system(["0,1", f"{ell},1"])
        assert sums[ell] == short_sum(system, tt, 0, 400)


def test_shifted_pair_sums_tau3():
    sums = shifted_pair_sums([4], 3, 200)
    system = build_factored_system(["0,1", "4,1"])
    from majorant_lab.mfunc import tau_m_function

    assert sums[4] == short_sum(system, tau_m_function(3, 2), 0, 200)
