"""majorant-lab: root densities of integer polynomials modulo prime powers,
discriminant-uniform majorants for short sums of multiplicative functions
over polynomial values, and a ratio-experiment harness that verifies the
bounds empirically at desk scale."""

from .arith import (Factorization, exactly_divides, factor, kappa, omega_big,
                    omega_small, p_minus, p_plus, phi, primes_up_to)
from .bounds import (BoundParams, delta_factor_general, delta_factor_k1,
                     delta_factor_star, majorant_sum, rhs_cor_disc,
                     rhs_cor_mult, rhs_holowinsky, rhs_main, rhs_primes,
                     rhs_shiu, shifted_pair_system, sifted_product,
                     validate_params)
from .errors import (DomainError, InvariantError, OracleBoundError,
                     ParamError, ZeroValueError)
from .harness import (ExperimentConfig, RatioReport, emit, run_lemma_checks,
                      run_ratio_experiment, sweep_shifted_pairs)
from .lhs import (factor_interval, prime_sum, short_sum, sieve_count,
                  sieve_rhs, shifted_pair_sums)
from .mfunc import (ClassBudget, MultiplicativeFunction, check_lower,
                    check_membership, class_cap, minimal_majorant,
                    parse_function, pushforward, tau_function,
                    tau_m_function)
from .polys import (FactoredSystem, IntPoly, build_factored_system,
                    discriminant, fixed_prime_divisors, parse_poly, poly_gcd,
                    resultant, resultant_sylvester, squarefree_part)
from .rootcount import (rho, rho_hat, rho_hat_pp, rho_hat_scan, rho_pp,
                        rho_scan, roots_mod_prime)

__version__ = "0.1.0"
