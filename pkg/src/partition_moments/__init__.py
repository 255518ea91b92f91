"""Exact and asymptotic moments of the number of parts in weighted partitions.

Sequences are Lambda = {lambda_j} with multiplicities; the moments are
t^k(n) = sum_m m^k p(n, m), where p(n, m) counts partitions of n into m parts.
"""
__version__ = "0.1.0"

from .errors import (DomainError, InvalidArgument, InvalidSequence, NumericalFailure,
                     PartitionMomentsError, PoleError, TailBoundError, Unsupported,
                     UnsupportedFamily)
from .sequences import (SequenceFamily, ThetaExpansion, WeightedSequence, enumerate_sequence,
                        epstein_multiplicities, load_custom, parse_family, theta, theta_expansion)
from .combinatorics import (barnes_degeneracy, barnes_polynomial, bell_sum, bernoulli_numbers,
                            c_coeffs, compositions, norlund_numbers, stirling2)
from .zeta import (EULER_GAMMA, SpectralData, barnes_finite_part, barnes_zeta, epstein_zeta,
                   finite_part_at_pole, gen_bernoulli, hurwitz_zeta, hurwitz_zeta_prime,
                   riemann_zeta, riemann_zeta_prime, spectral_data, zeta_lambda, zeta_prime_zero)
from .exact import (ExactMomentTable, exact_moments, expected_summands_exact,
                    first_moment_crosscheck, partition_table)
from .saddle import (AlphaExpansion, SaddleResult, alpha_expansion, alpha_series, n_of_alpha,
                     saddle_for_family, saddle_sum, solve_saddle)
from .asymptotics import (COROLLARIES, LogValue, MomentEstimate, corollary_eval,
                          expected_summands_asymptotic, mu0_case, t0_asymptotic, theta_s_direct,
                          theta_s_leading, tk_asymptotic)
