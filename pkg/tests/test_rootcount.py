import itertools
import math
import random

import pytest

from majorant_lab import arith, rootcount as rc
from majorant_lab.errors import DomainError, OracleBoundError
from majorant_lab.polys import IntPoly, build_factored_system, parse_poly

QUAD = parse_poly("1,0,1")


def brute_rho(poly, n):
    return sum(1 for r in range(n) if poly.evaluate(r) % n == 0) if n > 1 else 1


def test_rho_pp_examples():
    assert rc.rho_pp(QUAD, 7, 0) == 1
    assert rc.rho_pp(QUAD, 5, 1) == 2
    assert rc.rho_pp(QUAD, 2, 2) == 0
    assert rc.rho_pp(QUAD, 2, 1) == 1
    # oracle recomputation
    assert brute_rho(QUAD, 5) == 2
    assert brute_rho(QUAD, 4) == 0


def test_rho_examples():
    assert rc.rho(QUAD, 1) == 1
    assert rc.rho(QUAD, 65) == 4
    assert brute_rho(QUAD, 65) == 4
    assert rc.rho(parse_poly("0,1"), 10**6) == 1


def test_rho_requires_primitive_at_p():
    with pytest.raises(DomainError):
        rc.rho_pp(parse_poly("3,0,3"), 3, 1)


def test_oracle_refuses_past_bound():
    with pytest.raises(OracleBoundError):
        rc.rho_scan(QUAD, 10**8)


def test_lifting_tree_matches_scan(small_corpus):
    for poly in small_corpus:
        for p in (2, 3, 5, 7, 11, 13):
            if all(c % p == 0 for c in poly.coeffs):
                continue
            for nu in range(0, 5):
                if p**nu > 10**6:
                    continue
                assert rc.rho_pp(poly, p, nu) == rc.rho_scan(poly, p**nu), \
                    (poly, p, nu)


def test_rho_crt_multiplicative(small_corpus):
    rng = random.Random(9)
    for poly in small_corpus[:15]:
        for _ in range(6):
            m = rng.randint(2, 300)
            n = rng.randint(2, 300)
            if math.gcd(m, n) != 1:
                continue
            if any(all(c % p == 0 for c in poly.coeffs)
                   for p, _ in arith.factor(m * n)):
                continue
            assert rc.rho(poly, m * n) == rc.rho(poly, m) * rc.rho(poly, n)
            assert rc.rho(poly, m) == rc.rho_scan(poly, m)


def test_roots_mod_prime_large_p_matches_scan():
    rng = random.Random(2)
    primes = [1009, 2003, 4001, 10007]
    for _ in range(20):
        coeffs = [rng.randint(-9, 9) for _ in range(rng.randint(2, 5))]
        if coeffs[-1] == 0:
            coeffs[-1] = 1
        poly = IntPoly.from_coeffs(coeffs)
        p = rng.choice(primes)
        expected = sorted(n for n in range(p) if poly.evaluate_mod(n, p) == 0)
        assert rc.roots_mod_prime(poly, p) == expected


def test_rho_hat_examples(pair_system):
    assert rc.rho_hat(pair_system, (1, 1)) == 1
    assert rc.rho_hat(pair_system, (2, 1)) == 1
    assert rc.rho_hat_scan(pair_system, (2, 1)) == 1
    s7 = build_factored_system(["0,1", "7,1"])
    for p in (3, 5, 11):
        assert rc.rho_hat(s7, (p, p)) == 0
        assert rc.rho_hat_scan(s7, (p, p)) == 0


def test_rho_hat_pp_examples(quad_system):
    # frozen from the brute-force scan): 10 residues mod 25 have 5 | n^2+1,
    # of which 2 are divisible by 25, leaving 8 with exact valuation 1
    scan = sum(1 for n in range(25) if (n * n + 1) % 5 == 0 and (n * n + 1) % 25)
    assert scan == 8
    assert rc.rho_hat_pp(quad_system, (1,), 5) == 8
    sx = build_factored_system(["0,1"])
    assert rc.rho_hat_pp(sx, (2,), 3) == 2
    assert sorted(n for n in range(27) if n % 9 == 0 and n % 27) == [9, 18]
    assert rc.rho_hat_pp(sx, (0,), 3) == 1


def test_rho_hat_scan_vs_tree(pair_system, quad_system, triple_system):
    for system in (pair_system, quad_system, triple_system):
        for p in (2, 3, 5, 7, 11):
            for exps in itertools.product(range(0, 4), repeat=system.r):
                if not any(exps):
                    continue
                m_exp = max(e + 1 for e in exps if e >= 1)
                if p**m_exp > 10**5:
                    continue
                scan = rc._rho_hat_scan_local(system, exps, p, p**m_exp)
                tree = rc._rho_hat_tree_local(system, exps, p, m_exp)
                assert scan == tree == rc.rho_hat_pp(system, exps, p), \
                    (system, p, exps)


def test_rho_hat_matches_oracle(pair_system, quad_system):
    rng = random.Random(13)
    for system in (pair_system, quad_system):
        for _ in range(80):
            parts = tuple(rng.randint(1, 12) for _ in range(system.r))
            try:
                expected = rc.rho_hat_scan(system, parts, bound=3 * 10**5)
            except OracleBoundError:
                continue
            assert rc.rho_hat(system, parts) == expected, (system, parts)


def test_stability_away_from_discriminant(quad_system):
    # p not dividing D* lc: rho*(p^nu) = rho*(p) for 1 <= nu <= 6
    for p in (3, 5, 7, 11, 13):
        if quad_system.dstar % p == 0:
            continue
        base = rc.rho_pp(quad_system.qstar, p, 1)
        for nu in range(2, 7):
            assert rc.rho_pp(quad_system.qstar, p, nu) == base


def test_power_saving_root_bound_spot(small_corpus):
    from majorant_lab.polys import squarefree_part

    for poly in small_corpus[:20]:
        qs = squarefree_part(poly)
        g = qs.degree
        if g < 1:
            continue
        for p in (2, 3, 5):
            if all(c % p == 0 for c in qs.coeffs):
                continue
            for nu in range(1, 5):
                bound = g * p ** (nu - math.ceil(nu / g))
                assert rc.rho_pp(qs, p, nu) <= bound


def test_coprimality_forced_small():
    # tuples coprime to D* with nonzero joint count must be pairwise coprime
    for ell in (2, 3, 6, 10):
        system = build_factored_system(["0,1", f"{ell},1"])
        dstar = abs(system.dstar)
        for a1 in range(1, 16):
            for a2 in range(1, 16):
                if math.gcd(a1 * a2, dstar) != 1:
                    continue
                if rc.rho_hat(system, (a1, a2)) != 0:
                    assert math.gcd(a1, a2) == 1


def test_rho_bulk_table_matches_pointwise(quad_system):
    primes, counts = rc.rho_table(quad_system, 500)
    for p, c in zip(primes.tolist()[:40], counts.tolist()[:40]):
        assert c == rc.rho_pp(quad_system.qstar, int(p), 1)
