import math
from fractions import Fraction

import pytest

from majorant_lab import arith, numeric, rootcount as rc
from majorant_lab.bounds import (BoundParams, delta_factor_general,
                                 delta_factor_k1, delta_factor_star,
                                 majorant_sum, rhs_cor_disc, rhs_cor_mult,
                                 rhs_holowinsky, rhs_main, rhs_primes,
                                 rhs_shiu, sifted_product, system_pushforward,
                                 validate_params)
from majorant_lab.errors import DomainError, ParamError
from majorant_lab.mfunc import one_function, tau_function
from majorant_lab.polys import build_factored_system, parse_poly

GOOD = dict(alpha=Fraction(2, 3), delta=Fraction(1, 2), A=Fraction(2),
            B=Fraction(512), eps=Fraction(1, 601))


def params(x, y, **overrides):
    kw = dict(GOOD)
    kw.update(overrides)
    return BoundParams(x=Fraction(x), y=Fraction(y), **kw)


def test_validate_params(quad_system):
    tau = tau_function()
    rep = validate_params(quad_system, params(1000, 100), tau)
    assert rep.ok and rep.flags["main_regime"]
    rep = validate_params(quad_system, params(1000, 99), tau)
    assert "y < x^alpha" in rep.errors
    rep = validate_params(quad_system, params(1000, 2000), tau)
    assert "y > x" in rep.errors
    rep = validate_params(quad_system, params(1000, 100, eps=Fraction(1, 100)))
    assert not rep.ok
    rep = validate_params(quad_system, params(1000, 100, c0=Fraction(10**9)))
    assert rep.ok and rep.warnings  # c0-dependent condition warns, not fails


def test_sifted_product_examples(quad_system):
    sx = build_factored_system(["0,1"])
    assert sifted_product(sx, 10) == Fraction(8, 35)
    assert sifted_product(quad_system, 2) == 1  # x <= g: empty product
    value = sifted_product(quad_system, 200)
    assert 0 < value <= 1


def test_sifted_product_factors_positive(quad_system):
    primes, counts = rc.rho_table(quad_system, 300)
    for p, c in zip(primes.tolist(), counts.tolist()):
        if p > quad_system.g:
            assert 0 < Fraction(p - c, p) <= 1


def test_majorant_sum_examples(quad_system):
    sx = build_factored_system(["0,1"])
    tau = tau_function()
    assert majorant_sum(sx, tau, 1) == 1
    assert majorant_sum(sx, tau, 3) == Fraction(35, 18)
    assert majorant_sum(sx, tau, 100) >= majorant_sum(sx, tau, 10)


def brute_majorant(system, fn, x):
    ft = system_pushforward(system, fn)
    total = Fraction(0)

    def rec(h, rem, parts):
        nonlocal total
        if h == system.r:
            hat = rc.rho_hat(system, parts)
            if hat:
                modulus = 1
                for v in parts:
                    modulus = math.lcm(modulus, v * arith.kappa(v))
                total += ft.value(parts) * Fraction(hat, modulus)
            return
        n = 1
        while n <= rem:
            rec(h + 1, rem // n, parts + (n,))
            n += 1

    rec(0, x, ())
    return total


def test_majorant_sum_matches_brute(pair_system, quad_system):
    tau2 = tau_function(2)
    tau = tau_function()
    assert majorant_sum(pair_system, tau2, 40) == brute_majorant(pair_system, tau2, 40)
    assert majorant_sum(quad_system, tau, 60) == brute_majorant(quad_system, tau, 60)
    mixed = build_factored_system(["2,0,1", "0,1"], [[1, 0], [1, 2]])
    tt = tau_function(2)
    assert majorant_sum(mixed, tt, 25) == brute_majorant(mixed, tt, 25)


def test_delta_star(pair_system):
    tau2 = tau_function(2)
    sx = build_factored_system(["0,1"])
    assert delta_factor_star(sx, tau_function()) == 1  # D* = 1
    # (X, X+2): D* = 4; the p = 2 factor from the exact-divisibility counts
    expected = 1 + sum(
        tau2.local(2, exps) * Fraction(rc.rho_hat_pp(pair_system, exps, 2),
                                       2 ** (max(e + 1 for e in exps if e) ))
        for exps in [(0, 1), (1, 0), (1, 1)])
    assert delta_factor_star(pair_system, tau2) == expected
    assert delta_factor_star(pair_system, tau2) >= 1


def test_delta_k1_examples():
    tau = tau_function()
    quad = parse_poly("1,0,1")
    cancel, plain = delta_factor_k1(quad, tau)
    # rho(2^nu) table for X^2+1 is 1, 1, 0, 0: both factors collapse to 2
    assert [rc.rho_pp(quad, 2, nu) for nu in range(4)] == [1, 1, 0, 0]
    assert cancel == 2 and plain == 2
    with pytest.raises(DomainError):
        delta_factor_k1(parse_poly("0,0,1"), tau)  # D = 0
    unit = parse_poly("1,1")
    assert delta_factor_k1(unit, tau) == (1, 1)  # |D| = 1


def test_delta_ordering_corpus():
    tau = tau_function()
    for c in range(1, 40):
        cancel, plain = delta_factor_k1(parse_poly(f"{c},0,1"), tau)
        assert 1 <= cancel <= plain


def test_delta_general(pair_system):
    tau2 = tau_function(2)
    # reproduces the k = 1 cancellation form on squarefree polynomials
    tau = tau_function()
    for ptxt in ("1,0,1", "2,1,1", "3,1", "7,0,0,1"):
        s1 = build_factored_system([ptxt])
        assert delta_factor_general(s1, tau) == delta_factor_k1(s1.q, tau)[0]
    assert delta_factor_general(build_factored_system(["0,1", "1,1"]),
                                tau2) == 1  # |D| = 1
    assert delta_factor_general(pair_system, tau2) >= 1


def test_delta_general_shifted_pair_scan_oracle():
    # ell = 5: single prime 5, all-positive tuple (1,1); count mod 25 by scan
    tau2 = tau_function(2)
    system = build_factored_system(["0,1", "5,1"])
    count = sum(1 for n in range(25)
                if n % 5 == 0 and n % 25 and (n + 5) % 5 == 0 and (n + 5) % 25)
    assert count == 3
    assert delta_factor_general(system, tau2) == 1 + Fraction(4 * count, 25)


def test_rhs_main(quad_system):
    tau = tau_function()
    p = params(1000, 100)
    v = rhs_main(quad_system, tau, p)
    assert v > 0
    # oracle recomputation from the factors
    expected = (Fraction(100) * sifted_product(quad_system, 1000)
                * majorant_sum(quad_system, tau, 1000))
    assert v == expected
    with pytest.raises(ParamError):
        rhs_main(quad_system, tau, params(1000, 10))


def test_rhs_main_f_one_reduction():
    sx = build_factored_system(["0,1"])
    one = one_function()
    p = params(100, 30)
    v = rhs_main(sx, one, p)
    hats = Fraction(0)
    for n in range(1, 101):
        hat = rc.rho_hat(sx, (n,))
        if hat:
            hats += Fraction(hat, n * arith.kappa(n))
    assert v == Fraction(30) * sifted_product(sx, 100) * hats


def test_rhs_cor_variants(quad_system):
    tau = tau_function()
    p = params(400, 60)
    main = rhs_main(quad_system, tau, p)
    disc_v = rhs_cor_disc(quad_system, tau, p)
    mult_v = rhs_cor_mult(quad_system, tau, p)
    assert main > 0 and disc_v > 0 and mult_v > 0
    # x = y = 1: the p-products and tuple sums all collapse
    tiny = params(1, 1)
    assert rhs_cor_mult(quad_system, tau, tiny) == delta_factor_star(
        quad_system, tau) * 1 * 1


def test_rhs_cor_disc_sum_matches_brute(pair_system):
    # the coprime-restricted sum, recomputed by direct tuple enumeration
    tau2 = tau_function(2)
    p = params(60, 16)
    v = rhs_cor_disc(pair_system, tau2, p)
    ft = system_pushforward(pair_system, tau2)
    dstar = abs(pair_system.dstar)
    total = Fraction(0)
    for n1 in range(1, 61):
        for n2 in range(1, 60 // n1 + 1):
            if math.gcd(n1 * n2, dstar) != 1 or math.gcd(n1, n2) != 1:
                continue
            term = ft.value((n1, n2))
            term *= Fraction(rc.rho(pair_system.factors[0], n1), n1)
            term *= Fraction(rc.rho(pair_system.factors[1], n2), n2)
            total += term
    expected = (delta_factor_star(pair_system, tau2) * Fraction(16)
                * sifted_product(pair_system, 60) * total)
    assert v == expected


def test_rhs_shiu(quad_system):
    tau = tau_function()
    one = one_function()
    p = params(500, 80)
    v = Fraction(numeric.as_comparable(rhs_shiu(quad_system, one, p)))
    # f = 1: the exp factor is the Mertens-type partial sum over p not | D
    s = sum(Fraction(1, q) for q in arith.primes_up_to(500) if q != 2)
    delta, _ = delta_factor_k1(quad_system.q, one)
    expected = Fraction(numeric.to_decimal(
        delta * Fraction(80) * Fraction(sifted_product(quad_system, 500)))
        * numeric.dec_exp(s))
    assert abs(v - expected) <= abs(expected) / 10**20
    with pytest.raises(ParamError):
        rhs_shiu(build_factored_system(["0,1", "2,1"]), tau_function(2), p)


def test_rhs_holowinsky():
    tau = tau_function()
    v1 = rhs_holowinsky(1, tau, tau, 1000)
    assert v1 > 0
    s1 = build_factored_system(["0,1", "1,1"])
    assert delta_factor_general(s1, tau_function(2)) == 1
    with pytest.raises(DomainError):
        rhs_holowinsky(0, tau, tau, 1000)


def test_rhs_primes(quad_system):
    tau = tau_function()
    assert rhs_primes(quad_system, tau, params(500, 80)) > 0
    zero_at_origin = build_factored_system(["0,1"])
    with pytest.raises(ParamError):
        rhs_primes(zero_at_origin, tau, params(500, 80))


def test_modes_agree_to_ten_digits(quad_system, pair_system):
    tau = tau_function()
    cases = [
        lambda m: sifted_product(quad_system, 2000, m),
        lambda m: majorant_sum(quad_system, tau, 2000, m),
        lambda m: delta_factor_star(pair_system, tau_function(2), m),
        lambda m: rhs_main(quad_system, tau, params(1000, 100), m),
    ]
    for case in cases:
        exact = Fraction(case("exact"))
        fl = Fraction(numeric.as_comparable(case("float")))
        assert exact > 0
        assert abs(fl - exact) <= exact * Fraction(1, 10**10)


def test_delta_star_upper_envelope(pair_system, quad_system, triple_system):
    # 1 <= Delta* <= prod_{p | D*} (1 + 1/p)^C
    tau_by_k = {1: tau_function(1), 2: tau_function(2), 3: tau_function(3)}
    for system in (pair_system, quad_system, triple_system):
        fn = tau_by_k[system.k]
        gt = system_pushforward(system, fn)
        value = delta_factor_star(system, fn)
        assert value >= 1
        d = abs(system.dstar)
        if d == 1:
            assert value == 1
            continue
        bound = Fraction(1)
        from majorant_lab.bounds import _bounded_tuples
        for p in arith.factor(d).primes:
            c_local = sum(gt.local(p, exps)
                          for exps in _bounded_tuples(system.factor_degrees))
            c_exp = system.g * c_local
            bound *= (1 + Fraction(1, p)) ** math.ceil(c_exp)
        assert value <= bound
