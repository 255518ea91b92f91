"""Partitions into eigenvalues of lattice spectra.

Barnes families count lambda = 1, 2, ... with multiplicity binom(lambda+d-1, d-1);
Epstein families use lambda = |m|^2 for m in N_0^d. This walks through the
spectral constants, the saddle point alpha(n) and the quality of the t^k
asymptotics for each of them.
"""
import math

from partition_moments import (SequenceFamily, alpha_series, enumerate_sequence, exact_moments,
                               saddle_for_family, spectral_data, tk_asymptotic)

families = {
    "barnes2": SequenceFamily.barnes(2),
    "barnes3": SequenceFamily.barnes(3),
    "epstein2": SequenceFamily.epstein(2),
    "epstein3": SequenceFamily.epstein(3),
}

for name, fam in families.items():
    sd = spectral_data(fam)
    print(f"== {name}")
    print("  poles:", ", ".join(f"{mu:g} (res {r:.6g})" for mu, r in sd.poles))
    print(f"  zeta(0) = {sd.A0:.10f}   zeta'(0) = {sd.zeta_prime_0:.10f}")
    if sd.error_estimates:
        print("  cross-check errors:", {k: f"{v:.1e}" for k, v in sd.error_estimates.items()})

    # numeric root of n = sum g lambda / (e^{alpha lambda} - 1) against the series
    for n in (1e3, 1e6):
        num = saddle_for_family(fam, n)
        ser = alpha_series(fam, n)
        print(f"  n={n:.0e}: alpha {num.alpha:.10e} (cutoff {num.cutoff}), "
              f"series off by {abs(ser.alpha - num.alpha) / num.alpha:.1e}")

    N = 600
    table = exact_moments(enumerate_sequence(fam, N), N, k_max=2)
    for k in range(3):
        est = tk_asymptotic(fam, N, k)
        ratio = math.exp(math.log(table.moment(N, k)) - est.log_value)
        print(f"  t^{k}({N}) exact/asymptotic = {ratio:.5f}")
    print()
