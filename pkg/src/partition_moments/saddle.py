"""Saddle point of the partition generating function.

The saddle alpha solves n = sum_lambda g(lambda) lambda / (e^{alpha lambda} - 1).
Besides the numeric root this module provides the closed-form large-n
expansions of alpha and a generic expansion built from the theta
coefficients alone:

    n = sum_i zeta_R(mu_i + 1) mu_i A_{-mu_i} alpha^{-mu_i - 1} + A_0 / alpha + ...

Writing alpha = delta (1 + u) with delta = (a_0 / n)^{1/(mu_0 + 1)} turns this
into a fixed-point problem for u as a generalised power series in delta.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .errors import InvalidArgument, NumericalFailure, TailBoundError, Unsupported, UnsupportedFamily
from .sequences import SequenceFamily, WeightedSequence, enumerate_sequence, theta_expansion
from .zeta import riemann_zeta

__all__ = [
    "SaddleResult",
    "AlphaExpansion",
    "solve_saddle",
    "saddle_for_family",
    "alpha_series",
    "alpha_expansion",
    "n_of_alpha",
    "saddle_sum",
    "SADDLE_TOL",
]

SADDLE_TOL = 1e-10
_TAIL_TOL = 1e-12


@dataclass(frozen=True)
class SaddleResult:
    """alpha for a given n.

    ``residual`` is (n(alpha) - n)/n with the exact lambda-sum for numeric
    roots, and with the truncated pole sum for series values. ``terms``
    lists (label, value) contributions of a series.
    """

    n: float
    alpha: float
    residual: float
    method: str
    series_order: int = 0
    cutoff: int | None = None
    tail_bound: float | None = None
    terms: tuple = field(default=())


def saddle_sum(seq: WeightedSequence, alpha: float) -> tuple[float, float]:
    """(sum g lambda/(e^{alpha lambda} - 1), its alpha-derivative) over the truncation."""
    lam, w = seq.values, seq.weights
    x = alpha * lam
    keep = x < 300.0  # e^{-300} is far below double precision relative to n >= 1
    lam, w, x = lam[keep], w[keep], x[keep]
    e = np.expm1(x)
    s = float(np.sum(w * lam / e))
    ds = -float(np.sum(w * lam * lam * (e + 1.0) / (e * e)))
    return s, ds


def _tail_bound(seq: WeightedSequence, alpha: float) -> float:
    """Bound on the part of the saddle sum beyond the cutoff.

    Multiplicities beyond the cutoff are taken as twice the largest one in
    the last tenth of the truncation; the remaining sum over lambda > L of
    lambda e^{-alpha lambda}/(1 - e^{-alpha lambda}) is geometric.
    """
    L = seq.cutoff
    lam = np.asarray(seq.lambdas)
    window = np.asarray(seq.mults)[lam >= 0.9 * L]
    gmax = 2.0 * float(window.max() if window.size else seq.mults[-1])
    q = math.exp(-alpha)
    if q >= 1.0:
        return math.inf
    qL = math.exp(-alpha * (L + 1))
    return gmax * qL * ((L + 1) / (1 - q) + q / (1 - q) ** 2) / (1 - qL)


def solve_saddle(seq: WeightedSequence, n: float, tol: float = SADDLE_TOL,
                 complete: bool = False) -> SaddleResult:
    """Numeric root of the saddle equation: bisection in log alpha, then Newton.

    ``complete`` declares the sequence finite (nothing beyond the cutoff), so
    no tail check is made.
    """
    n = float(n)
    if not n > 0:
        raise InvalidArgument("n must be positive")
    lo, hi = 1e-12, 50.0
    if saddle_sum(seq, lo)[0] < n:
        raise NumericalFailure("saddle equation has no root in the search range")
    while hi / lo > 1.001:
        mid = math.sqrt(lo * hi)
        if saddle_sum(seq, mid)[0] > n:
            lo = mid
        else:
            hi = mid
    alpha = math.sqrt(lo * hi)
    for _ in range(60):
        s, ds = saddle_sum(seq, alpha)
        step = (s - n) / ds
        new = alpha - step
        if not lo * 0.5 < new < hi * 2:
            new = 0.5 * (alpha + (lo if step > 0 else hi))
        done = abs(new - alpha) <= 1e-15 * alpha
        alpha = new
        if done:
            break
    s, _ = saddle_sum(seq, alpha)
    residual = (s - n) / n
    if abs(residual) > tol:
        raise NumericalFailure(f"saddle solver stalled with relative residual {residual:.3g}")
    tail = 0.0 if complete else _tail_bound(seq, alpha)
    if tail > _TAIL_TOL * n:
        L = seq.cutoff
        extra = math.log(tail / (_TAIL_TOL * n)) / alpha
        suggested = int(math.ceil(1.1 * (L + extra))) + 1
        raise TailBoundError(
            f"cutoff {L} too small at n = {n:g}: tail bound {tail:.3g} exceeds {_TAIL_TOL:g}*n",
            suggested_cutoff=suggested,
        )
    return SaddleResult(n, alpha, residual, "numeric", 0, seq.cutoff, tail)


@lru_cache(maxsize=16)
def _cached_sequence(family: SequenceFamily, cutoff: int) -> WeightedSequence:
    return enumerate_sequence(family, cutoff)


def _initial_cutoff(family: SequenceFamily, n: float) -> int:
    try:
        a = alpha_expansion(family).leading(n)
    except Unsupported:
        return max(64, int(4 * n))
    return max(64, int(math.ceil(40.0 / a)))


def saddle_for_family(family: SequenceFamily, n: float, cutoff: int | None = None,
                      tol: float = SADDLE_TOL) -> SaddleResult:
    """Numeric saddle point for a family, enlarging the truncation as needed.

    Families known only through their theta expansion use the truncated pole
    sum n_of_alpha in place of the lambda-sum.
    """
    n = float(n)
    if not family.has_sequence:
        guess = alpha_expansion(family).leading(n)
        f = lambda a: n_of_alpha(family, a) - n
        lo, hi = guess / 4, guess * 4
        while f(lo) < 0:
            lo /= 2
        while f(hi) > 0:
            hi *= 2
        a = brentq(f, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=500)
        return SaddleResult(n, a, f(a) / n, "numeric")
    complete = False
    if family.kind == "custom":
        last = family.table[-1][0]
        if cutoff is None or cutoff >= last:
            cutoff, complete = last, True
    if cutoff is not None:
        return solve_saddle(_cached_sequence(family, cutoff), n, tol, complete)
    cutoff = _initial_cutoff(family, n)
    for _ in range(8):
        try:
            return solve_saddle(_cached_sequence(family, cutoff), n, tol)
        except TailBoundError as exc:
            cutoff = max(exc.suggested_cutoff, 2 * cutoff)
    raise NumericalFailure(f"could not find an adequate cutoff for n = {n:g}")


def _pole_coefficients(family: SequenceFamily):
    if family.kind == "custom":
        raise UnsupportedFamily("custom sequences have no theta expansion")
    exp = theta_expansion(family)
    return [(mu, riemann_zeta(mu + 1) * mu * A) for mu, A in exp.poles], exp.A0


def n_of_alpha(family: SequenceFamily, alpha):
    """Truncated pole sum sum_i zeta_R(mu_i+1) mu_i A_{-mu_i} alpha^{-mu_i-1} + A_0/alpha."""
    poles, A0 = _pole_coefficients(family)
    alpha = np.asarray(alpha, dtype=float) if not np.isscalar(alpha) else float(alpha)
    out = A0 / alpha
    for mu, a in poles:
        out = out + a * alpha ** (-mu - 1)
    return out


# --- generalised power series in delta ---------------------------------------

def _key(e: float) -> float:
    return round(e, 12)


def _gs_mul(a: dict, b: dict, cap: float) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = _key(ea + eb)
            if e <= cap + 1e-9:
                out[e] = out.get(e, 0.0) + ca * cb
    return out


def _gs_one_plus_pow(x: dict, p: float, cap: float) -> dict:
    """(1 + x)^p where every exponent of x is positive."""
    out = {0.0: 1.0}
    if not x:
        return out
    xk = {0.0: 1.0}
    coef = 1.0
    for k in range(1, 200):
        xk = _gs_mul(xk, x, cap)
        if not xk:
            break
        coef *= (p - k + 1) / k
        for e, c in xk.items():
            out[e] = out.get(e, 0.0) + coef * c
    return out


@dataclass(frozen=True)
class AlphaExpansion:
    """alpha = delta (1 + sum_e c_e delta^e), delta = (a0/n)^{1/(mu0+1)}.

    Terms are kept up to e = mu0, i.e. up to the 1/n term of alpha.
    """

    mu0: float
    a0: float
    u_terms: tuple[tuple[float, float], ...]

    def delta(self, n: float) -> float:
        return (self.a0 / n) ** (1.0 / (self.mu0 + 1))

    def leading(self, n: float) -> float:
        return self.delta(n)

    def alpha(self, n: float) -> float:
        d = self.delta(n)
        return d * (1.0 + math.fsum(c * d ** e for e, c in self.u_terms))

    def terms(self, n: float) -> list[tuple[float, float]]:
        """(power of n, contribution) for each term of alpha."""
        d = self.delta(n)
        p = -1.0 / (self.mu0 + 1)
        out = [(p, d)]
        out.extend((p * (1 + e), c * d ** (1 + e)) for e, c in self.u_terms)
        return out

    def next_order(self) -> float:
        """Power of n of the first neglected term (exponent of the 1/n term plus the smallest gap)."""
        gaps = sorted({e for e, _ in self.u_terms} | {self.mu0})
        return -1.0 - gaps[0] / (self.mu0 + 1)

    def v_series(self) -> dict:
        v = {0.0: 1.0}
        for e, c in self.u_terms:
            v[e] = c
        return v


@lru_cache(maxsize=None)
def alpha_expansion(family: SequenceFamily) -> AlphaExpansion:
    poles, A0 = _pole_coefficients(family)
    mu0, a0 = poles[0]
    # 1 = v^{-(mu0+1)} + sum_i r_i delta^{mu0-mu_i} v^{-(mu_i+1)} + r_A delta^{mu0} v^{-1}
    forcing = [(_key(mu0 - mu), a / a0, -(mu + 1)) for mu, a in poles[1:]]
    if A0:
        forcing.append((_key(mu0), A0 / a0, -1.0))
    cap = mu0
    u: dict = {}
    for _ in range(64):
        R: dict = {}
        for e, r, p in forcing:
            if e > cap + 1e-9:
                continue
            vp = _gs_one_plus_pow(u, p, cap - e)
            for ev, cv in vp.items():
                k = _key(e + ev)
                R[k] = R.get(k, 0.0) + r * cv
        neg = {e: -c for e, c in R.items()}
        v = _gs_one_plus_pow(neg, -1.0 / (mu0 + 1), cap)
        new_u = {e: c for e, c in v.items() if e != 0.0}
        if new_u.keys() == u.keys() and all(abs(new_u[e] - u[e]) <= 1e-15 * abs(new_u[e]) for e in u):
            u = new_u
            break
        u = new_u
    else:
        raise NumericalFailure("alpha expansion did not converge")
    terms = tuple(sorted((e, c) for e, c in u.items() if c != 0.0))
    return AlphaExpansion(mu0, a0, terms)


# --- printed expansions --------------------------------------------------------

def _printed_terms(family: SequenceFamily, n: float) -> list[tuple[str, float]]:
    z = riemann_zeta
    pi = math.pi
    if family.kind == "naturals":
        return [("n^-1/2", pi / math.sqrt(6 * n)), ("n^-1", -1 / (4 * n))]
    if family.kind == "barnes" and family.d == 2:
        return [
            ("n^-1/3", (2 * z(3) / n) ** (1 / 3)),
            ("n^-2/3", z(2) / (3 * (2 * z(3)) ** (1 / 3)) * n ** (-2 / 3)),
            ("n^-1", -7 / (36 * n)),
        ]
    if family.kind == "barnes" and family.d == 3:
        return [
            ("n^-1/4", (3 * z(4)) ** 0.25 * n ** -0.25),
            ("n^-1/2", math.sqrt(3) * z(3) / (4 * math.sqrt(z(4))) * n ** -0.5),
            ("n^-3/4", (8 * z(2) * z(4) - 3 * z(3) ** 2) / (3 ** 0.25 * 32 * z(4) ** 1.25) * n ** -0.75),
            ("n^-1", -5 / (32 * n)),
        ]
    if family.kind == "epstein" and family.d == 2:
        return [
            ("n^-1/2", math.sqrt(pi * z(2) / 4) * n ** -0.5),
            ("n^-3/4", pi ** 0.25 * z(1.5) / (4 * math.sqrt(2) * z(2) ** 0.25) * n ** -0.75),
            ("n^-1", -3 / (8 * n)),
        ]
    if family.kind == "epstein" and family.d == 3:
        return [
            ("n^-2/5", (3 * pi ** 1.5 * z(2.5) / 16) ** 0.4 * n ** -0.4),
            ("n^-3/5", 3 ** 0.6 * z(2) / 5 * (pi / (2 * z(2.5))) ** 0.4 * n ** -0.6),
            ("n^-4/5", 3 ** 0.8 * pi ** 0.2 / (2 ** 0.2 * 100 * z(2.5) ** 1.2)
             * (5 * z(1.5) * z(2.5) - 2 * z(2) ** 2) * n ** -0.8),
            ("n^-1", -7 / (20 * n)),
        ]
    if family.kind == "one_singularity":
        exp = family.expansion
        mu, A = exp.poles[0]
        return [
            (f"n^-1/{mu + 1:g}", (z(mu + 1) * mu * A / n) ** (1 / (mu + 1))),
            ("n^-1", exp.A0 / ((mu + 1) * n)),
        ]
    raise UnsupportedFamily(f"no closed-form alpha expansion for {family.name}")


def alpha_series(family: SequenceFamily, n: float) -> SaddleResult:
    """alpha from the closed-form large-n expansion of the family."""
    n = float(n)
    if not n > 0:
        raise InvalidArgument("n must be positive")
    terms = _printed_terms(family, n)
    alpha = math.fsum(v for _, v in terms)
    residual = float(n_of_alpha(family, alpha)) / n - 1.0
    return SaddleResult(n, alpha, residual, "series", len(terms), terms=tuple(terms))
