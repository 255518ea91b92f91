"""Exact integer and rational coefficient machinery.

Everything here works on Python ints and :class:`fractions.Fraction`; floats
only appear when the caller hands :func:`bell_sum` real arguments.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import InvalidArgument

__all__ = [
    "bernoulli_numbers",
    "norlund_numbers",
    "c_coeffs",
    "c_table",
    "barnes_degeneracy",
    "barnes_polynomial",
    "compositions",
    "bell_sum",
    "stirling2",
]


@lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """B_0..B_n with the convention B_1 = -1/2."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        acc = sum(math.comb(m + 1, k) * B[k] for k in range(m))
        B.append(-acc / (m + 1))
    return tuple(B)


def _series_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if ai:
            for j, bj in enumerate(b[: order + 1 - i]):
                out[i + j] += ai * bj
    return out


@lru_cache(maxsize=None)
def norlund_numbers(d: int, order: int) -> tuple[Fraction, ...]:
    """B_n^{(d)}(0) for n = 0..order, from (u/(e^u - 1))^d = sum B_n^{(d)} u^n/n!."""
    if d < 0:
        raise InvalidArgument("order d of the generalised Bernoulli numbers must be >= 0")
    B = bernoulli_numbers(order)
    base = [B[n] / math.factorial(n) for n in range(order + 1)]
    acc = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(d):
        acc = _series_mul(acc, base, order)
    return tuple(acc[n] * math.factorial(n) for n in range(order + 1))


@lru_cache(maxsize=None)
def c_table(s_max: int) -> tuple[tuple[int, ...], ...]:
    """Rows c^{(1)}, ..., c^{(s_max)}; row s holds (c_1^{(s)}, ..., c_s^{(s)})."""
    if s_max < 1:
        raise InvalidArgument("s must be >= 1")
    rows = [(1,)]
    if s_max >= 2:
        rows.append((1, 0))
    for s in range(2, s_max):
        prev = (0,) + rows[-1]  # prev[j] = c_j^{(s)}, with c_0 = 0
        nxt = [j * prev[j] + (s - j + 1) * prev[j - 1] for j in range(1, s + 1)]
        nxt.append(0)
        rows.append(tuple(nxt))
    return tuple(rows)


def c_coeffs(s: int) -> list[int]:
    """Coefficients c_1^{(s)}, ..., c_s^{(s)} expressing the (s-1)-th z-derivative
    of S as a combination of sum_lambda x^{j lambda} / (1 - x^lambda)^s."""
    return list(c_table(s)[s - 1])


def barnes_degeneracy(l: int, d: int) -> int:
    """Number of points m in N_0^d with m_1 + ... + m_d = l."""
    if l < 0 or d < 1:
        raise InvalidArgument("need l >= 0 and d >= 1")
    return math.comb(l + d - 1, d - 1)


@lru_cache(maxsize=None)
def barnes_polynomial(d: int) -> tuple[Fraction, ...]:
    """Coefficients a_j with C(l + d - 1, d - 1) = sum_j a_j l^j."""
    poly = [Fraction(1)]
    for i in range(1, d):
        # multiply by (l + i)
        nxt = [Fraction(0)] * (len(poly) + 1)
        for j, c in enumerate(poly):
            nxt[j] += i * c
            nxt[j + 1] += c
        poly = nxt
    f = math.factorial(d - 1)
    return tuple(c / f for c in poly)


@lru_cache(maxsize=None)
def compositions(k: int) -> tuple[tuple[int, ...], ...]:
    """All (b_1, ..., b_k) in N_0^k with b_1 + 2 b_2 + ... + k b_k = k."""
    if k < 1:
        raise InvalidArgument("k must be >= 1")
    out = []

    def rec(part, remaining, vec):
        if part == 0:
            if remaining == 0:
                out.append(tuple(vec))
            return
        for b in range(remaining // part, -1, -1):
            vec[part - 1] = b
            rec(part - 1, remaining - b * part, vec)
        vec[part - 1] = 0

    rec(k, k, [0] * k)
    return tuple(out)


@lru_cache(maxsize=None)
def _bell_weights(k: int) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    fk = math.factorial(k)
    weights = []
    for b in compositions(k):
        den = 1
        for j, bj in enumerate(b, start=1):
            den *= math.factorial(bj) * math.factorial(j) ** bj
        weights.append((b, Fraction(fk, den)))
    return tuple(weights)


def bell_sum(k: int, x: Sequence):
    """sum over b_1 + 2b_2 + ... + k b_k = k of k!/(prod b_j!) prod_j (x_{j-1}/j!)^{b_j}.

    Exact (a Fraction) when every x is an int or Fraction, a float otherwise.
    """
    if len(x) != k:
        raise InvalidArgument(f"bell_sum needs exactly k={k} arguments, got {len(x)}")
    exact = all(isinstance(v, (int, Fraction)) for v in x)
    total = Fraction(0) if exact else 0.0
    for b, w in _bell_weights(k):
        term = w if exact else float(w)
        for j, bj in enumerate(b):
            if bj:
                term *= x[j] ** bj
        total += term
    return total


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)
