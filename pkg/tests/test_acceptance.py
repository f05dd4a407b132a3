"""Acceptance suite: eleven criteria, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines and
timings.  Exact-arithmetic criteria assert equality/inequality outright;
order-of-magnitude criteria assert the stated ratio windows and spreads.
"""

import math
import time
from fractions import Fraction

from majorant_lab import arith, bounds, lhs, numeric, rootcount as rc
from majorant_lab.harness import power_ceil, sweep_shifted_pairs, emit
from majorant_lab.mfunc import check_lower, tau_function
from majorant_lab.polys import build_factored_system, squarefree_part

PRIMES_13 = (2, 3, 5, 7, 11, 13)


class _Timer:
    def __init__(self, label, limit):
        self.label = label
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        status = "PASS" if exc_type is None else "FAIL"
        print(f"{status} {self.label} [t={elapsed:.1f}s, limit {self.limit}s]")
        if exc_type is None:
            assert elapsed < self.limit, \
                f"{self.label} exceeded its runtime budget ({elapsed:.1f}s)"
        return False


def test_a01_root_count_oracle_equivalence(corpus):
    with _Timer("A1 lifting tree == exhaustive scan "
                "(200 polynomials, p <= 13, nu <= 5)", 30):
        assert len(corpus) == 200
        for poly in corpus:
            for p in PRIMES_13:
                for nu in range(0, 6):
                    assert rc.rho_pp(poly, p, nu) == rc.rho_scan(poly, p**nu), \
                        (poly, p, nu)


def test_a02_classical_bound_suite(corpus, pair_system, quad_system,
                                   triple_system):
    with _Timer("A2 root-count bound suite on the corpus", 30):
        for poly in corpus:
            g = poly.degree
            qstar = squarefree_part(poly)
            gs = qstar.degree
            from majorant_lab.polys import discriminant

            dstar = discriminant(qstar) if gs >= 1 else 1
            for p in PRIMES_13:
                assert rc.rho_pp(poly, p, 1) <= g
                if gs < 1:
                    continue
                base = rc.rho_pp(qstar, p, 1)
                stable = dstar % p != 0
                for nu in range(1, 6):
                    value = rc.rho_pp(qstar, p, nu)
                    assert value <= gs * p ** (nu - 1)
                    assert value <= gs * p ** (nu - math.ceil(Fraction(nu, gs)))
                    assert value <= g * p ** (nu - math.ceil(Fraction(nu, g)))
                if stable:
                    for nu in range(1, 7):
                        assert rc.rho_pp(qstar, p, nu) == base
                    assert base <= gs
        # per-factor power-saving bound on the named systems
        for system in (pair_system, quad_system, triple_system):
            for factor_poly in system.factors:
                mu = factor_poly.degree
                for p in PRIMES_13:
                    for nu in range(1, 6):
                        bound = mu * p ** (nu - math.ceil(Fraction(nu, mu)))
                        assert rc.rho_pp(factor_poly, p, nu) <= bound


def test_a03_joint_count_bound(pair_system, quad_system, triple_system):
    with _Timer("A3 exact-count/lcm <= rho*(prod)/prod on all tuples <= 30",
                60):
        for system in (pair_system, triple_system, quad_system):
            qstar = system.qstar

            def check(parts):
                hat = rc.rho_hat(system, parts)
                if hat == 0:
                    return
                modulus = 1
                for v in parts:
                    if v > 1:
                        modulus = math.lcm(modulus, v * arith.kappa(v))
                prod = math.prod(parts)
                assert Fraction(hat, modulus) <= \
                    Fraction(rc.rho(qstar, prod), prod), (system, parts)

            def rec(h, parts):
                if h == system.r:
                    check(parts)
                    return
                for v in range(1, 31):
                    rec(h + 1, parts + (v,))

            rec(0, ())


def test_a04_delta_ordering_quadratics():
    with _Timer("A4 delta ordering and star envelope on X^2+c, c <= 100", 30):
        tau = tau_function()
        for c in range(1, 101):
            system = build_factored_system([f"{c},0,1"])
            cancel, plain = bounds.delta_factor_k1(system.q, tau)
            assert 1 <= cancel <= plain
            star = bounds.delta_factor_star(system, tau)
            assert star >= 1
            gt = bounds.system_pushforward(system, tau)
            envelope = Fraction(1)
            for p in arith.factor(abs(system.dstar)).primes:
                c_local = system.g * sum(
                    gt.local(p, exps)
                    for exps in bounds._bounded_tuples(system.factor_degrees))
                assert c_local.denominator == 1
                envelope *= (1 + Fraction(1, p)) ** int(c_local)
            assert star <= envelope


def test_a05_coprimality_invariant():
    with _Timer("A5 nonzero joint count forces pairwise coprimality "
                "(ell <= 50, components <= 50)", 60):
        for ell in range(1, 51):
            system = build_factored_system(["0,1", f"{ell},1"])
            dstar = abs(system.dstar)
            for a1 in range(1, 51):
                if math.gcd(a1, dstar) != 1:
                    continue
                for a2 in range(1, 51):
                    if math.gcd(a2, dstar) != 1:
                        continue
                    if rc.rho_hat(system, (a1, a2)) != 0:
                        assert math.gcd(a1, a2) == 1, (ell, a1, a2)


#: computed inside criterion 6's timed run, reused by criterion 9
_MAIN_RATIO_GRID: dict = {}


def test_a06_main_bound_ratio_stability(quad_system):
    with _Timer("A6 short sum / majorant stable over x in {1e4,1e5,1e6} "
                "(spread < 10)", 300):
        tau = tau_function()
        for x in (10**4, 10**5, 10**6):
            y = power_ceil(x, Fraction(2, 3))
            left = lhs.short_sum(quad_system, tau, x, y)
            sift = bounds.sifted_product(quad_system, x, "float")
            msum = bounds.majorant_sum(quad_system, tau, x, "float")
            right = numeric.to_decimal(Fraction(y)) * sift * msum
            _MAIN_RATIO_GRID[x] = numeric.to_decimal(left) / right
        ratios = [float(v) for v in _MAIN_RATIO_GRID.values()]
        assert all(r > 0 and math.isfinite(r) for r in ratios)
        assert max(ratios) / min(ratios) < 10


def test_a07_discriminant_uniformity():
    with _Timer("A7 shifted-pair spread < 20 at x = 1e5 and "
                "mean local factor over ell <= 1000 in [0.5, 2]", 300):
        ells = sorted(set(range(1, 101))
                      | {2**a * 3**b for a in range(14) for b in range(9)
                         if 2**a * 3**b <= 10**4})
        sweep = sweep_shifted_pairs(10**5, ells, m=2, mode="exact")
        ratios = [float(numeric.as_comparable(r.ratio)) for r in sweep.rows]
        assert len(ratios) >= 140
        assert min(ratios) > 0
        assert max(ratios) / min(ratios) < 20
        from majorant_lab.harness import delta_factor_mean

        mean = delta_factor_mean(range(1, 1001), 2)
        assert Fraction(1, 2) <= mean <= 2


def test_a08_sieve_two_sided(quad_system):
    with _Timer("A8 sifted count vs formula in [0.1, 10] on the grid", 180):
        x = 10**6
        y = power_ceil(x, Fraction(7, 10))
        table = lhs.factor_interval(quad_system, x, y)
        for a in (1, 2, 5, 13):
            for z in (10, 50):
                rhs_val = lhs.sieve_rhs(quad_system, (a,), z, y)
                if rhs_val <= 0:
                    continue
                count = lhs.sieve_count(quad_system, (a,), z, x, y, table=table)
                ratio = Fraction(count) / Fraction(rhs_val)
                assert Fraction(1, 10) <= ratio <= 10, (a, z, float(ratio))


def test_a09_two_sidedness():
    with _Timer("A9 ratios inside [0.01, 100] at every grid point", 300):
        assert _MAIN_RATIO_GRID, "criterion 6 computes the shared grid"
        assert check_lower(tau_function(), Fraction(1, 2)).passed
        for x, ratio in _MAIN_RATIO_GRID.items():
            assert Fraction(1, 100) <= Fraction(ratio) <= 100, (x, float(ratio))


def test_a10_smooth_contains_bounded(pair_system):
    with _Timer("A10 smooth-support sum >= product-bounded sum "
                "(exact, z in {1e2,1e3,1e4})", 60):
        tt = tau_function(2)
        ftilde = bounds.system_pushforward(pair_system, tt)
        for z in (100, 1000, 10000):
            plain = bounds.majorant_sum(pair_system, tt, z, "exact")
            smooth = bounds.smooth_tuple_product(pair_system, ftilde, z, "exact")
            assert Fraction(smooth) >= Fraction(plain), z


def test_a11_deterministic_reports(tmp_path):
    with _Timer("A11 byte-identical exact-mode CSV for the headline sweep",
                300):
        ells = sorted(set(range(1, 101))
                      | {2**a * 3**b for a in range(14) for b in range(9)
                         if 2**a * 3**b <= 10**4})
        paths = []
        for i in (1, 2):
            report = sweep_shifted_pairs(10**5, ells, m=2, mode="exact")
            path = tmp_path / f"run{i}.csv"
            emit(report, path, "csv")
            paths.append(path)
        assert paths[0].read_bytes() == paths[1].read_bytes()
