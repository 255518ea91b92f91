"""Exact partition counts and moments by big-integer dynamic programming.

Both modes use the logarithmic derivative of the generating function
G(x, z) = prod_lambda (1 - z x^lambda)^{-g(lambda)}:

    n [x^n] G = sum_{j=1}^{n} sigma_j(z) [x^{n-j}] G,
    sigma_j(z) = sum_{lambda l = j} g(lambda) lambda z^l.

The table mode keeps full polynomials in z and returns p(n, m). The fold mode
substitutes z = 1 + w and keeps only w^0..w^K, whose coefficients are the
factorial moments; raw moments follow through Stirling numbers. Every
division by n is exact and is checked.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .combinatorics import stirling2
from .errors import InvalidArgument, NumericalFailure
from .sequences import WeightedSequence

__all__ = [
    "ExactMomentTable",
    "partition_table",
    "exact_moments",
    "expected_summands_exact",
    "first_moment_crosscheck",
    "TABLE_CEILING",
]

TABLE_CEILING = 400  # default largest n for the full p(n, m) matrix


def _usable(seq: WeightedSequence, n_max: int):
    k = int(np.searchsorted(seq.values, n_max, side="right"))
    lams = np.asarray(seq.lambdas[:k], dtype=np.int64)
    weights = np.array([g * l for l, g in zip(seq.lambdas[:k], seq.mults[:k])], dtype=object)
    return lams, weights


def _exact_div(acc, n):
    q = acc // n
    if any(q * n != acc):
        raise NumericalFailure(f"non-integral coefficient at n = {n}; the recurrence is broken")
    return q


def partition_table(seq: WeightedSequence, n_max: int) -> np.ndarray:
    """Object array P with P[n, m] = p(n, m) for 0 <= m <= n <= n_max.

    Parts of value lambda come in g(lambda) distinguishable colours. P[0, 0] = 1
    is the empty partition.
    """
    if n_max < 1:
        raise InvalidArgument("n_max must be >= 1")
    lams, w = _usable(seq, n_max)
    P = np.zeros((n_max + 1, n_max + 1), dtype=object)
    P[0, 0] = 1
    for n in range(1, n_max + 1):
        acc = np.zeros(n + 1, dtype=object)
        for i in range(1, n + 1):
            # terms with z^i come from lambda * i = j, i.e. lambda <= n // i
            k = int(np.searchsorted(lams, n // i, side="right"))
            if k == 0:
                break
            rows = n - i * lams[:k]
            acc[i:] += w[:k].dot(P[rows, : n + 1 - i])
        P[n, : n + 1] = _exact_div(acc, n)
    return P


def _fold_factorial_moments(seq: WeightedSequence, n_max: int, k_max: int) -> np.ndarray:
    """F[n, i] = sum_m m(m-1)...(m-i+1) p(n, m), including the empty partition at n = 0."""
    K = k_max
    lams, _ = _usable(seq, n_max)
    sigma = np.zeros((n_max + 1, K + 1), dtype=object)
    for lam, g in zip(seq.lambdas, seq.mults):
        if lam > n_max:
            break
        for l in range(1, n_max // lam + 1):
            row = sigma[lam * l]
            for a in range(min(l, K) + 1):
                row[a] += g * lam * math.comb(l, a)
    G = np.zeros((n_max + 1, K + 1), dtype=object)
    G[0, 0] = 1
    for n in range(1, n_max + 1):
        # M[a, b] = sum_j sigma[j, a] G[n - j, b]
        M = sigma[1 : n + 1].T.dot(G[n - 1 :: -1])
        acc = np.array([sum(M[a, c - a] for a in range(c + 1)) for c in range(K + 1)], dtype=object)
        G[n] = _exact_div(acc, n)
    fact = np.array([math.factorial(i) for i in range(K + 1)], dtype=object)
    return G * fact


@dataclass(frozen=True)
class ExactMomentTable:
    """values[n] = (t^0(n), ..., t^K(n)) for n = 1..n_max, as Python ints."""

    n_max: int
    k_max: int
    values: dict

    def __getitem__(self, n: int) -> tuple[int, ...]:
        return self.values[n]

    def moment(self, n: int, k: int) -> int:
        return self.values[n][k]

    def column(self, k: int) -> list[int]:
        return [self.values[n][k] for n in range(1, self.n_max + 1)]

    def to_csv(self, target=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n"] + [f"t{k}" for k in range(self.k_max + 1)])
        for n in range(1, self.n_max + 1):
            w.writerow([n] + [str(v) for v in self.values[n]])
        text = buf.getvalue()
        if target is not None:
            if hasattr(target, "write"):
                target.write(text)
            else:
                Path(target).write_text(text)
        return text

    @classmethod
    def from_csv(cls, source) -> "ExactMomentTable":
        if hasattr(source, "read"):
            text = source.read()
        elif isinstance(source, str) and "\n" in source:
            text = source
        else:
            text = Path(source).read_text()
        rows = list(csv.reader(io.StringIO(text)))
        header, body = rows[0], rows[1:]
        if header[0] != "n" or not body:
            raise InvalidArgument("not an exact moment table")
        values = {int(r[0]): tuple(int(v) for v in r[1:]) for r in body}
        return cls(max(values), len(header) - 2, values)


def exact_moments(seq: WeightedSequence, n_max: int, k_max: int = 2,
                  method: str = "auto") -> ExactMomentTable:
    """t^k(n) = sum_{m >= 1} m^k p(n, m) for n = 1..n_max and k = 0..k_max.

    ``method`` is "table" (full p(n, m) matrix), "fold" (moments only, much
    cheaper for large n) or "auto" (fold).
    """
    if n_max < 1:
        raise InvalidArgument("n_max must be >= 1")
    if k_max < 0:
        raise InvalidArgument("k_max must be >= 0")
    if method not in ("auto", "table", "fold"):
        raise InvalidArgument(f"unknown method {method!r}")
    values = {}
    if method == "table":
        P = partition_table(seq, n_max)
        m = np.arange(n_max + 1, dtype=object)
        powers = [m ** k for k in range(k_max + 1)]
        for n in range(1, n_max + 1):
            row = P[n]
            values[n] = tuple(int(row[1:].dot(pk[1:])) for pk in powers)
    else:
        F = _fold_factorial_moments(seq, n_max, k_max)
        for n in range(1, n_max + 1):
            f = F[n]
            t = [int(f[0])]
            for k in range(1, k_max + 1):
                t.append(int(sum(stirling2(k, i) * f[i] for i in range(1, k + 1))))
            values[n] = tuple(t)
    return ExactMomentTable(n_max, k_max, values)


def expected_summands_exact(seq: WeightedSequence, n: int) -> Fraction:
    """Mean number of parts t^1(n) / t^0(n) as an exact fraction."""
    tab = exact_moments(seq, n, 1)
    t0, t1 = tab[n]
    return Fraction(t1, t0)


def first_moment_crosscheck(seq: WeightedSequence, n_max: int) -> bool:
    """Check t^1 = (sum_n t^0(n) x^n) * S(x) coefficientwise, S = sum g x^lambda/(1 - x^lambda).

    t^0 and t^1 come from the full p(n, m) table; the product side uses only
    t^0 and the divisor sums of the multiplicities.
    """
    P = partition_table(seq, n_max)
    t0 = [int(sum(P[n])) for n in range(n_max + 1)]  # t0[0] = 1 from the empty partition
    t1 = [int(sum(m * P[n, m] for m in range(1, n + 1))) for n in range(n_max + 1)]
    s = [0] * (n_max + 1)
    for lam, g in zip(seq.lambdas, seq.mults):
        for j in range(lam, n_max + 1, lam):
            s[j] += g
    for n in range(1, n_max + 1):
        if t1[n] != sum(t0[n - j] * s[j] for j in range(1, n + 1)):
            return False
    return True
