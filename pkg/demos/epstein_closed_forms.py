"""Closed forms for the Epstein families versus the general formula.

The printed two-dimensional closed form for log t^k(n) disagrees with the
general saddle-point result in the n^{1/4} coefficient and in the constant;
the three-dimensional t^k form has the power of its last factor off by 6/20.
Exact counts decide which one is right.
"""
import math

from partition_moments import (SequenceFamily, corollary_eval, enumerate_sequence, exact_moments,
                               t0_asymptotic, tk_asymptotic)

e2 = SequenceFamily.epstein(2)
N = 1600
table = exact_moments(enumerate_sequence(e2, N), N, k_max=1)

print("log t^0(n) for the two-dimensional Epstein family")
print(f"{'n':>6} {'exact':>12} {'general':>12} {'printed':>12} {'corrected':>12}")
for n in (100, 400, 1600):
    exact = math.log(table.moment(n, 0))
    general = t0_asymptotic(e2, n).log_value
    printed = corollary_eval("epstein2_t0", n).log_value
    fixed = corollary_eval("epstein2_t0", n, corrected=True).log_value
    print(f"{n:>6} {exact:12.4f} {general:12.4f} {printed:12.4f} {fixed:12.4f}")

print()
e3 = SequenceFamily.epstein(3)
print("log t^k(n) for the three-dimensional Epstein family at n = 1e5")
for k in (1, 2, 3):
    general = tk_asymptotic(e3, 1e5, k).log_value
    printed = corollary_eval("epstein3_tk", 1e5, k).log_value
    fixed = corollary_eval("epstein3_tk", 1e5, k, corrected=True).log_value
    print(f"  k={k}: general {general:.6f}  printed {printed:.6f}  corrected {fixed:.6f}")
