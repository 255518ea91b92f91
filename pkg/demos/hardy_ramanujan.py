"""Ordinary partitions: exact moments next to their asymptotics.

Run with ``python3 demos/hardy_ramanujan.py``. Prints the ratio of exact to
asymptotic values for t^0, t^1, t^2 and the expected number of parts, which
creep towards 1 as n grows.
"""
import math

from partition_moments import (SequenceFamily, enumerate_sequence, exact_moments,
                               expected_summands_asymptotic, expected_summands_exact,
                               t0_asymptotic, tk_asymptotic)

fam = SequenceFamily.naturals()
N = 2000
seq = enumerate_sequence(fam, N)
table = exact_moments(seq, N, k_max=2)

print("p(100) =", table.moment(100, 0))
print()
print(f"{'n':>6} {'t0 ratio':>10} {'t1 ratio':>10} {'t2 ratio':>10}")
for n in (50, 200, 500, 1000, 2000):
    ratios = []
    for k in range(3):
        est = t0_asymptotic(fam, n) if k == 0 else tk_asymptotic(fam, n, k)
        ratios.append(math.exp(math.log(table.moment(n, k)) - est.log_value))
    print(f"{n:>6} " + " ".join(f"{r:>10.5f}" for r in ratios))

# the mean number of parts grows like sqrt(n) log n
print()
for n in (100, 400, 1600):
    exact = float(expected_summands_exact(seq, n))
    approx = expected_summands_asymptotic(fam, n).real
    print(f"n={n:>5}  mean parts exact {exact:9.3f}  asymptotic {approx:9.3f}")
