"""Large-n moment asymptotics in log space.

The general formulas need only the family's spectral data and a saddle
point alpha:

    log t^0 = -1/2 log(2 pi mu0 (mu0+1) zeta_R(mu0+1) A_{-mu0}) + (mu0/2 + 1 - A_0) log alpha
              + sum_i (mu_i + 1) zeta_R(mu_i + 1) A_{-mu_i} alpha^{-mu_i} + A_0 + zeta_Lambda'(0)

and t^k = t^0 * F_k with F_k depending on whether mu0 is below, at or above 1.

``alpha_source="numeric"`` uses the root of the saddle equation.
``alpha_source="series"`` substitutes the large-n expansion of alpha: power
and logarithm factors use its leading term delta, the exponential sum is
expanded in delta and truncated after the constant term. That reproduces the
closed forms of the corollaries in :func:`corollary_eval`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import special

from .combinatorics import bell_sum, c_coeffs
from .errors import InvalidArgument, Unsupported, UnsupportedFamily
from .saddle import (SaddleResult, _gs_one_plus_pow, _key, alpha_expansion, alpha_series,
                     saddle_for_family)
from .sequences import SequenceFamily, WeightedSequence, theta_expansion
from .zeta import (EULER_GAMMA, barnes_finite_part, barnes_zeta, finite_part_at_pole,
                   riemann_zeta, riemann_zeta_prime, spectral_data, zeta_lambda, zeta_prime_zero)

__all__ = [
    "LogValue",
    "MomentEstimate",
    "mu0_case",
    "t0_asymptotic",
    "tk_asymptotic",
    "expected_summands_asymptotic",
    "theta_s_leading",
    "theta_s_direct",
    "exponent_expansion",
    "corollary_eval",
    "COROLLARIES",
    "EPSTEIN3_PRINTED_EXPONENT",
    "EPSTEIN3_DERIVED_EXPONENT",
    "PRINTED_DISCREPANCIES",
    "K_MAX",
]

K_MAX = 12


@dataclass(frozen=True)
class LogValue:
    """sign * exp(log_magnitude); zero has sign 0 and log_magnitude -inf."""

    log_magnitude: float
    sign: int = 1

    @classmethod
    def from_float(cls, x: float) -> "LogValue":
        if x == 0:
            return cls(-math.inf, 0)
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(-math.inf, 0)

    def __mul__(self, other):
        if not isinstance(other, LogValue):
            other = LogValue.from_float(other)
        if self.sign == 0 or other.sign == 0:
            return LogValue.zero()
        return LogValue(self.log_magnitude + other.log_magnitude, self.sign * other.sign)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, LogValue):
            other = LogValue.from_float(other)
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero LogValue")
        if self.sign == 0:
            return LogValue.zero()
        return LogValue(self.log_magnitude - other.log_magnitude, self.sign * other.sign)

    def __neg__(self):
        return LogValue(self.log_magnitude, -self.sign)

    def __add__(self, other):
        if not isinstance(other, LogValue):
            other = LogValue.from_float(other)
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        big, small = (self, other) if self.log_magnitude >= other.log_magnitude else (other, self)
        r = math.exp(small.log_magnitude - big.log_magnitude)
        if big.sign == small.sign:
            return LogValue(big.log_magnitude + math.log1p(r), big.sign)
        if r == 1.0:
            return LogValue.zero()
        return LogValue(big.log_magnitude + math.log1p(-r), big.sign)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, LogValue):
            other = LogValue.from_float(other)
        return self + (-other)

    def __pow__(self, k: int):
        if self.sign == 0:
            return LogValue.zero() if k > 0 else LogValue(0.0, 1)
        return LogValue(self.log_magnitude * k, self.sign ** int(k))

    @property
    def log10(self) -> float:
        return self.log_magnitude / math.log(10)

    def to_float(self) -> float:
        """Plain float; raises OverflowError when the magnitude is not representable."""
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)

    def representable(self, limit: float = 300.0) -> bool:
        return self.sign == 0 or self.log10 < limit

    def decimal(self, digits: int = 15) -> str:
        """Scientific notation with ``digits`` significant digits, valid for any magnitude."""
        if self.sign == 0:
            return "0"
        l10 = self.log10
        e = math.floor(l10)
        mant = 10 ** (l10 - e)
        if round(mant, digits - 1) >= 10:
            mant, e = mant / 10, e + 1
        s = f"{mant:.{digits - 1}f}e{e:+d}"
        return ("-" if self.sign < 0 else "") + s


@dataclass(frozen=True)
class MomentEstimate:
    """One asymptotic value with the factors it was assembled from.

    ``quantity`` is "t" for moments t^k(n) and "m" for the expected number
    of summands. ``order_tag`` names the size of the first neglected
    correction; it is descriptive, not a bound.
    """

    family: SequenceFamily
    n: float
    k: int
    value: LogValue
    alpha_used: SaddleResult | None
    mu0_case: str
    terms: tuple = field(default=())
    quantity: str = "t"
    order_tag: str = "1+o(1)"
    source: str = "general"

    @property
    def log_value(self) -> float:
        return self.value.log_magnitude

    @property
    def real(self) -> float | None:
        return self.value.to_float() if self.value.representable() else None

    def term(self, label: str) -> float:
        for name, v in self.terms:
            if name == label:
                return v
        raise KeyError(label)


def mu0_case(family_or_mu0) -> str:
    mu0 = family_or_mu0 if isinstance(family_or_mu0, (int, float)) else \
        theta_expansion(family_or_mu0).mu0
    if abs(mu0 - 1.0) < 1e-12:
        return "eq1"
    return "gt1" if mu0 > 1 else "lt1"


@lru_cache(maxsize=None)
def exponent_expansion(family: SequenceFamily) -> tuple[tuple[float, float], ...]:
    """(e, c) with sum_i b_i alpha^{-mu_i} = sum_e c delta^e + o(1), e <= 0.

    b_i = (mu_i + 1) zeta_R(mu_i + 1) A_{-mu_i} and alpha = delta v(delta) is
    the generic saddle expansion.
    """
    exp = theta_expansion(family)
    v = alpha_expansion(family).v_series()
    u = {e: c for e, c in v.items() if e != 0.0}
    out: dict = {}
    for mu, A in exp.poles:
        b = (mu + 1) * riemann_zeta(mu + 1) * A
        for e, c in _gs_one_plus_pow(u, -mu, mu).items():
            k = _key(e - mu)
            out[k] = out.get(k, 0.0) + b * c
    return tuple(sorted((e, c) for e, c in out.items() if e <= 1e-9))


def _order_tag(family: SequenceFamily) -> str:
    exp = theta_expansion(family)
    mu0 = exp.mu0
    gaps = [mu0 - mu for mu, _ in exp.poles[1:]] + [mu0]
    p = min(gaps) / (mu0 + 1)
    return f"1+O(n^-{p:.4g})"


class _AlphaContext:
    """Everything about alpha that the formulas consume."""

    def __init__(self, family: SequenceFamily, n: float, source: str, cutoff=None):
        if source not in ("numeric", "series"):
            raise InvalidArgument(f"alpha_source must be 'numeric' or 'series', not {source!r}")
        self.source = source
        exp = theta_expansion(family)
        if source == "numeric":
            self.result = saddle_for_family(family, n, cutoff)
            a = self.result.alpha
            self.log_alpha = math.log(a)
            self.alpha = a
            self.exponent = math.fsum((mu + 1) * riemann_zeta(mu + 1) * A * a ** -mu
                                      for mu, A in exp.poles)
        else:
            ae = alpha_expansion(family)
            try:
                self.result = alpha_series(family, n)
            except UnsupportedFamily:
                terms = tuple((f"n^{p:.4g}", v) for p, v in ae.terms(n))
                self.result = SaddleResult(n, ae.alpha(n), 0.0, "series", len(terms), terms=terms)
            d = ae.delta(n)
            self.alpha = d
            self.log_alpha = math.log(d)
            self.exponent = math.fsum(c * d ** e for e, c in exponent_expansion(family))


def _check_family(family: SequenceFamily):
    if family.kind == "custom":
        raise UnsupportedFamily("custom sequences have no theta expansion; only exact values exist")


def _log_t0_parts(family, sd, ctx) -> list[tuple[str, float]]:
    mu0, A = sd.mu0, sd.theta_coefficient(sd.mu0)
    if sd.zeta_prime_0 is None:
        raise Unsupported(f"zeta'(0) is not available for {family.name}")
    pre = -0.5 * math.log(2 * math.pi * mu0 * (mu0 + 1) * riemann_zeta(mu0 + 1) * A)
    return [
        ("prefactor", pre),
        ("alpha_power", (mu0 / 2 + 1 - sd.A0) * ctx.log_alpha),
        ("exponent", ctx.exponent),
        ("A0", sd.A0),
        ("zeta_prime_0", sd.zeta_prime_0),
    ]


def _bell_args(sd, first: float, k: int) -> list[float]:
    args = [first]
    for s in range(2, k + 1):
        val = sd.zeta_at.get(s)
        if val is None:
            raise Unsupported(f"zeta_Lambda({s}) is not available for {sd.family.name}")
        args.append(math.factorial(s - 1) * val)
    return args


def _log_factor(sd, k: int, log_alpha: float) -> LogValue:
    """F_k with t^k = t^0 F_k."""
    case = mu0_case(sd.mu0)
    if case == "gt1":
        mu0 = sd.mu0
        one = math.log(sd.theta_coefficient(mu0) * riemann_zeta(mu0)) - mu0 * log_alpha
        return LogValue(k * one, 1)
    if case == "eq1":
        if sd.fp_at_pole is None:
            raise Unsupported(f"the finite part at 1 is not available for {sd.family.name}")
        first = sd.fp_at_pole - sd.theta_coefficient(1.0) * log_alpha
    else:
        first = sd.zeta_at.get(1)
        if first is None:
            raise Unsupported(f"zeta_Lambda(1) is not available for {sd.family.name}")
    b = bell_sum(k, _bell_args(sd, first, k))
    return LogValue(-k * log_alpha) * LogValue.from_float(b)


def t0_asymptotic(family: SequenceFamily, n: float, alpha_source: str = "numeric",
                  cutoff: int | None = None) -> MomentEstimate:
    return tk_asymptotic(family, n, 0, alpha_source, cutoff)


def tk_asymptotic(family: SequenceFamily, n: float, k: int, alpha_source: str = "numeric",
                  cutoff: int | None = None) -> MomentEstimate:
    _check_family(family)
    if not 0 <= k <= K_MAX:
        raise InvalidArgument(f"k must be in 0..{K_MAX}")
    sd = spectral_data(family, max(k, 3))
    ctx = _AlphaContext(family, float(n), alpha_source, cutoff)
    parts = _log_t0_parts(family, sd, ctx)
    value = LogValue(math.fsum(v for _, v in parts), 1)
    if k:
        F = _log_factor(sd, k, ctx.log_alpha)
        parts.append(("log_moment_factor", F.log_magnitude))
        value = value * F
    return MomentEstimate(family, float(n), k, value, ctx.result, mu0_case(sd.mu0),
                          tuple(parts), "t", _order_tag(family), alpha_source)


def expected_summands_asymptotic(family: SequenceFamily, n: float, alpha_source: str = "numeric",
                                 cutoff: int | None = None) -> MomentEstimate:
    """Mean number of parts: S_Lambda(e^{-alpha}) to leading order."""
    _check_family(family)
    sd = spectral_data(family, 3)
    ctx = _AlphaContext(family, float(n), alpha_source, cutoff)
    case = mu0_case(sd.mu0)
    la = ctx.log_alpha
    if case == "lt1":
        z1 = sd.zeta_at.get(1)
        if z1 is None:
            raise Unsupported(f"zeta_Lambda(1) is not available for {family.name}")
        value = LogValue.from_float(z1) * LogValue(-la)
    elif case == "eq1":
        value = LogValue.from_float(sd.fp_at_pole - sd.theta_coefficient(1.0) * la) * LogValue(-la)
    else:
        mu0 = sd.mu0
        value = LogValue(math.log(riemann_zeta(mu0) * sd.theta_coefficient(mu0)) - mu0 * la)
    return MomentEstimate(family, float(n), 1, value, ctx.result, case,
                          (("log_alpha", la),), "m", _order_tag(family), alpha_source)


# --- the theta-derivatives of S ------------------------------------------------

def theta_s_leading(family: SequenceFamily, s: int, alpha: float) -> float:
    """Leading small-alpha term of theta^{s-1} S_Lambda(e^{-alpha}), theta = x d/dx.

    Three regimes: s below, at or above mu0. The s = mu0 branch involves the
    finite parts of zeta_Lambda and of the Barnes-Hurwitz zeta at s.
    """
    if s < 1:
        raise InvalidArgument("s must be >= 1")
    sd = spectral_data(family, max(s, 3))
    mu0 = sd.mu0
    A = sd.theta_coefficient(mu0)
    la = math.log(alpha)
    if s == 1:
        case = mu0_case(mu0)
        if case == "gt1":
            return riemann_zeta(mu0) * A * alpha ** -mu0
        if case == "eq1":
            return (sd.fp_at_pole - A * la) / alpha
        return sd.zeta_at[1] / alpha
    c = c_coeffs(s)
    if s < mu0:
        return alpha ** -mu0 * A * math.fsum(cj * barnes_zeta(s, mu0, j)
                                             for j, cj in enumerate(c, start=1) if cj)
    if s == mu0:
        fp = finite_part_at_pole(family, float(s))
        fpb = math.fsum(cj * barnes_finite_part(s, s, j) for j, cj in enumerate(c, start=1) if cj)
        return alpha ** -s * (math.factorial(s - 1) * fp + A * (float(special.digamma(s)) - la)
                              + A * fpb)
    return math.factorial(s - 1) * alpha ** -s * zeta_lambda(family, float(s))


def theta_s_direct(seq: WeightedSequence, s: int, alpha: float) -> float:
    """theta^{s-1} S_Lambda(e^{-alpha}) summed over a truncated sequence."""
    c = c_coeffs(s)
    lam, w = seq.values, seq.weights
    q = np.exp(-alpha * lam)
    num = sum(cj * q ** j for j, cj in enumerate(c, start=1) if cj)
    return float(np.sum(w * num / (-np.expm1(-alpha * lam)) ** s))


# --- closed forms of the corollaries -------------------------------------------

EPSTEIN3_PRINTED_EXPONENT = (27, 12, 20)  # (a, b, c) in ((a - b k)/c), as printed
EPSTEIN3_DERIVED_EXPONENT = (21, 12, 20)  # what (mu0/2 + 1 - A_0) log alpha gives

# Printed constants that disagree with the general theorem (and with exact
# counts). corollary_eval(..., corrected=True) swaps in the derived values.
PRINTED_DISCREPANCIES = {
    "epstein2_t0": "n^(1/4) coefficient and constant of the exponent",
    "epstein2_tk": "n^(1/4) coefficient and constant of the exponent",
    "epstein3_tk": "power (27 - 12k)/20 of 3 pi^(3/2) zeta_R(5/2)/(16n); derived (21 - 12k)/20",
}


def _bell_log(k, args) -> float:
    b = bell_sum(k, args)
    if b <= 0:
        raise Unsupported("the Bell sum is not positive at this n")
    return math.log(b)


def _zeta_list(family, k):
    return [math.factorial(s - 1) * zeta_lambda(family, float(s)) for s in range(2, k + 1)]


def _hr(n, k, which):
    z, pi = riemann_zeta, math.pi
    L = math.log(math.sqrt(6 * n) / pi)
    expo = pi * math.sqrt(2 * n / 3)
    if which == "t0":
        return [("prefactor", -math.log(4 * math.sqrt(3) * n)), ("exponent", expo)]
    if which == "t1":
        return [("prefactor", math.log(math.sqrt(2) / (4 * pi * math.sqrt(n)))), ("exponent", expo),
                ("log_moment_factor", math.log(EULER_GAMMA + L))]
    if which == "tk":
        args = [EULER_GAMMA + L] + [math.factorial(s - 1) * z(s) for s in range(2, k + 1)]
        return [("prefactor", -math.log(4 * math.sqrt(3) * n)), ("exponent", expo),
                ("log_moment_factor", k * L + _bell_log(k, args))]
    return [("m", L + math.log(EULER_GAMMA + L))]


def _one(family, n, k, which):
    if family is None or family.kind != "one_singularity":
        raise InvalidArgument("one-singularity corollaries need a one_singularity family")
    z = riemann_zeta
    exp = family.expansion
    mu, A = exp.poles[0]
    A0 = exp.A0
    zm1 = z(mu + 1)
    case = mu0_case(mu)
    if which == "m":
        if case == "lt1":
            return [("m", math.log(zeta_lambda(family, 1.0)) + math.log(n / (zm1 * mu * A)) / (mu + 1))]
        if case == "eq1":
            x = finite_part_at_pole(family) - A / 2 * math.log(math.pi ** 2 * A / (6 * n))
            return [("m", 0.5 * math.log(6 * n / (math.pi ** 2 * A)) + math.log(x))]
        return [("m", math.log(z(mu)) + math.log(A) / (mu + 1) + mu / (mu + 1) * math.log(n / (zm1 * mu)))]
    parts = [
        ("prefactor", -0.5 * math.log(2 * math.pi * (mu + 1))
         + (1 - 2 * A0) / (2 * (mu + 1)) * math.log(mu * zm1 * A)
         + (2 * A0 - 2 - mu) / (2 * (mu + 1)) * math.log(n)),
        ("exponent", (n / mu) ** (mu / (mu + 1)) * (mu + 1) * (zm1 * A) ** (1 / (mu + 1))
         + zeta_prime_zero(family)),
    ]
    if which == "t0" or k == 0:
        return parts
    if case == "gt1":
        f = (mu * k / (mu + 1)) * math.log(n / (mu * zm1)) + k / (mu + 1) * math.log(A) + k * math.log(z(mu))
    elif case == "eq1":
        x = finite_part_at_pole(family) - A / 2 * math.log(math.pi ** 2 * A / (6 * n))
        f = k / 2 * math.log(n) - k / 2 * math.log(math.pi ** 2 * A / 6) + _bell_log(k, [x] + _zeta_list(family, k))
    else:
        f = (k / (mu + 1)) * math.log(n) - k / (mu + 1) * math.log(zm1 * mu * A) \
            + _bell_log(k, [zeta_lambda(family, 1.0)] + _zeta_list(family, k))
    parts.append(("log_moment_factor", f))
    return parts


def _barnes2(n, k, which):
    z, zp, pi = riemann_zeta, riemann_zeta_prime, math.pi
    if which == "m":
        return [("m", math.log(z(2)) + 2 / 3 * math.log(n / (2 * z(3))))]
    expo = (3 * z(3) ** (1 / 3) / 2 ** (2 / 3) * n ** (2 / 3)
            + z(2) / (2 ** (1 / 3) * z(3) ** (1 / 3)) * n ** (1 / 3)
            - z(2) ** 2 / (12 * z(3)) + zp(-1))
    return [("prefactor", -0.5 * math.log(6 * z(3)) - math.log(2 * pi) + k * math.log(z(2))
             + (31 - 24 * k) / 36 * math.log(2 * z(3) / n)), ("exponent", expo)]


def _barnes3(n, k, which):
    z, zp, pi = riemann_zeta, riemann_zeta_prime, math.pi
    N = n / (3 * z(4))
    if which == "m":
        return [("m", math.log(z(3)) + 0.75 * math.log(N))]
    C = z(3) ** 3 / (8 * z(4) ** 2) - z(2) * z(3) / (4 * z(4)) + 1.5 * zp(-1) + 0.5 * zp(-2)
    expo = (4 * z(4) * N ** 0.75 + 1.5 * z(3) * N ** 0.5
            + (z(2) - 3 * z(3) ** 2 / (8 * z(4))) * N ** 0.25 + C)
    return [("prefactor", -0.5 * math.log(3 * z(4)) - math.log(4 * pi) + k * math.log(z(3))
             + (25 - 24 * k) / 32 * math.log(3 * z(4) / n)), ("exponent", expo)]


def _epstein2(n, k, which, corrected=False):
    z, pi = riemann_zeta, math.pi
    fam = SequenceFamily.epstein(2)
    X = pi * z(2) / (4 * n)
    first = finite_part_at_pole(fam) - pi / 8 * math.log(X)
    if which == "m":
        return [("m", 0.5 * math.log(4 * n / (pi * z(2))) + math.log(first))]
    c1 = pi ** 0.25 * z(1.5) / (4 * math.sqrt(2) * z(2) ** 0.25)
    c0 = z(1.5) ** 2 / (32 * z(2))
    if corrected:
        c1, c0 = 4 * c1, -2 * c0
    expo = math.sqrt(pi * z(2) * n) + c1 * n ** 0.25 + c0 + zeta_prime_zero(fam)
    parts = [("prefactor", -0.5 * math.log(pi ** 2 * z(2)) + (9 - 4 * k) / 8 * math.log(X)),
             ("exponent", expo)]
    if k:
        parts.append(("log_moment_factor", _bell_log(k, [first] + _zeta_list(fam, k))))
    return parts


def _epstein3(n, k, which, exponent=EPSTEIN3_PRINTED_EXPONENT):
    z, pi = riemann_zeta, math.pi
    fam = SequenceFamily.epstein(3)
    if which == "m":
        return [("m", math.log(pi ** 1.5 * z(1.5) / 8)
                 + 0.6 * math.log(16 * n / (3 * pi ** 1.5 * z(2.5))))]
    a, b, c = exponent
    Y = 3 * pi ** 1.5 * z(2.5) / (16 * n)
    z52 = z(2.5)
    expo = (5 * pi ** 0.6 * z52 ** 0.4 / (6 ** 0.6 * 2) * n ** 0.6
            + 3 ** 0.6 * z(2) / 2 * (pi / (2 * z52)) ** 0.4 * n ** 0.4
            + 3 ** 0.8 * pi ** 0.2 / (2 ** 0.2 * 20 * z52 ** 1.2) * (5 * z(1.5) * z52 - 2 * z(2) ** 2) * n ** 0.2
            + z(2) ** 3 / (10 * z52 ** 2) - 3 * z(1.5) * z(2) / (20 * z52) + zeta_prime_zero(fam))
    return [("prefactor", -0.5 * math.log(15 / 16 * pi ** 2.5 * z52) + (a - b * k) / c * math.log(Y)
             + k * math.log(pi ** 1.5 / 8 * z(1.5))), ("exponent", expo)]


# name -> (family key, evaluated quantity)
COROLLARIES = {
    "hr_t0": ("naturals", "t0"),
    "hr_t1": ("naturals", "t1"),
    "hr_tk": ("naturals", "tk"),
    "hr_m": ("naturals", "m"),
    "one_t0": ("one_singularity", "t0"),
    "one_tk": ("one_singularity", "tk"),
    "one_m": ("one_singularity", "m"),
    "barnes2_t0": ("barnes2", "t0"),
    "barnes2_tk": ("barnes2", "tk"),
    "barnes2_m": ("barnes2", "m"),
    "barnes3_tk": ("barnes3", "tk"),
    "barnes3_m": ("barnes3", "m"),
    "epstein2_t0": ("epstein2", "t0"),
    "epstein2_tk": ("epstein2", "tk"),
    "epstein2_m": ("epstein2", "m"),
    "epstein3_tk": ("epstein3", "tk"),
    "epstein3_m": ("epstein3", "m"),
}

_FAMILIES = {
    "naturals": SequenceFamily.naturals,
    "barnes2": lambda: SequenceFamily.barnes(2),
    "barnes3": lambda: SequenceFamily.barnes(3),
    "epstein2": lambda: SequenceFamily.epstein(2),
    "epstein3": lambda: SequenceFamily.epstein(3),
}


def corollary_eval(name: str, n: float, k: int = 0, family: SequenceFamily | None = None,
                   corrected: bool = False) -> MomentEstimate:
    """Evaluate one of the closed-form corollaries exactly as printed.

    ``family`` is required for the one-singularity corollaries. The
    ``*_m`` corollaries give the expected number of summands (k is ignored).
    With ``corrected`` the constants listed in PRINTED_DISCREPANCIES are
    replaced by the values that follow from the general theorem.
    """
    if name not in COROLLARIES:
        raise InvalidArgument(f"unknown corollary {name!r}; choose from {sorted(COROLLARIES)}")
    fam_key, which = COROLLARIES[name]
    n = float(n)
    if n <= 0:
        raise InvalidArgument("n must be positive")
    if which in ("t0", "m"):
        k = 0 if which == "t0" else 1
    elif which == "t1":
        k = 1
    elif not 0 <= k <= K_MAX:
        raise InvalidArgument(f"k must be in 0..{K_MAX}")
    if name.startswith("hr_") and which == "tk" and k == 0:
        which = "t0"
    fam = family if fam_key == "one_singularity" else _FAMILIES[fam_key]()
    if fam_key == "naturals":
        parts = _hr(n, k, which)
    elif fam_key == "one_singularity":
        parts = _one(family, n, k, which)
    elif fam_key == "barnes2":
        parts = _barnes2(n, k, which)
    elif fam_key == "barnes3":
        parts = _barnes3(n, k, which)
    elif fam_key == "epstein2":
        parts = _epstein2(n, k, which, corrected)
    else:
        exponent = EPSTEIN3_DERIVED_EXPONENT if corrected else EPSTEIN3_PRINTED_EXPONENT
        parts = _epstein3(n, k, which, exponent)
    value = LogValue(math.fsum(v for _, v in parts), 1)
    quantity = "m" if which == "m" else "t"
    return MomentEstimate(fam, n, k, value, alpha_series(fam, n), mu0_case(fam), tuple(parts),
                          quantity, _order_tag(fam), f"corollary:{name}" + (":corrected" if corrected else ""))
