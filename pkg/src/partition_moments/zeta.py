"""Real-axis zeta functions and the spectral constants the asymptotic theorems need.

Riemann and Hurwitz zeta use Euler-Maclaurin summation (with the functional
equation for Riemann at s < 0). Barnes zeta functions at r = 1 reduce to
finite combinations of those. Epstein zeta functions over the positive
orthant are continued through the split of Gamma(s) zeta(s) = int t^{s-1}
Theta(t) dt at t = 1, with the small-t part of Theta resummed by Poisson
summation so the remainder is exponentially small.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate, special

from .combinatorics import barnes_polynomial, bernoulli_numbers, norlund_numbers
from .errors import DomainError, InvalidArgument, PoleError, Unsupported, UnsupportedFamily
from .sequences import SequenceFamily, epstein_multiplicities, theta_expansion

__all__ = [
    "EULER_GAMMA",
    "riemann_zeta",
    "riemann_zeta_prime",
    "hurwitz_zeta",
    "hurwitz_zeta_prime",
    "gen_bernoulli",
    "barnes_zeta",
    "barnes_finite_part",
    "epstein_zeta",
    "zeta_lambda",
    "finite_part_at_pole",
    "zeta_prime_zero",
    "numeric_residue",
    "SpectralData",
    "spectral_data",
]

EULER_GAMMA = 0.57721566490153286061
_LOG_2PI = math.log(2 * math.pi)


@lru_cache(maxsize=None)
def _em_coeffs(m: int) -> tuple[float, ...]:
    """B_{2j}/(2j)! for j = 1..m."""
    B = bernoulli_numbers(2 * m)
    return tuple(float(B[2 * j] / math.factorial(2 * j)) for j in range(1, m + 1))


def _is_int(x: float) -> bool:
    return float(x).is_integer()


def _euler_maclaurin(s: float, a: float, want_derivative: bool = False):
    """sum_{k>=0} (k+a)^{-s} and optionally its s-derivative.

    The direct part is summed up to N, the rest replaced by the integral,
    the boundary half-term and Bernoulli corrections. For s a non-positive
    integer the correction series terminates, so the result is exact up to
    rounding.
    """
    # Large N for s < 0 would cause cancellation between the direct sum and
    # the integral; a modest N keeps both parts O(1).
    N = 12 + int(abs(s)) if s > 0 else 6 + int(abs(s)) // 2
    x = N + a
    ks = np.arange(N, dtype=float) + a
    direct = math.fsum((ks ** -s).tolist())
    logx = math.log(x)
    xs = x ** -s
    val = [direct, x * xs / (s - 1), xs / 2]
    if want_derivative:
        dlog = np.log(ks)
        ddirect = -math.fsum((dlog * ks ** -s).tolist())
        # d/ds [x^{1-s}/(s-1)] and d/ds [x^{-s}/2]
        dval = [ddirect, -x * xs * (logx / (s - 1) + 1 / (s - 1) ** 2), -xs * logx / 2]
    coeffs = _em_coeffs(40)
    P, dP = s, 1.0
    xp = xs / x
    for j, b in enumerate(coeffs, start=1):
        term = b * P * xp
        val.append(term)
        small = abs(term) < 1e-18 * abs(sum(val))
        if want_derivative:
            dterm = b * (dP - P * logx) * xp
            dval.append(dterm)
            small = small and abs(dterm) < 1e-18 * abs(sum(dval))
            if P == 0.0 and dP == 0.0:
                break
        elif P == 0.0:
            break
        if j >= 2 and small:
            break
        q = (s + 2 * j - 1) * (s + 2 * j)
        dq = 2 * s + 4 * j - 1
        P, dP = P * q, dP * q + P * dq
        xp /= x * x
    if want_derivative:
        return math.fsum(val), math.fsum(dval)
    return math.fsum(val)


def _euler_maclaurin_wide(s: float, a: float, want_derivative: bool = False):
    """_euler_maclaurin for s < 0 carried out in 40-digit decimal arithmetic.

    Left of 0 the direct sum and the integral grow like (N + a)^{1-s} and
    cancel to a much smaller result; double precision loses up to ~10
    digits there.
    """
    with localcontext() as ctx:
        ctx.prec = 40
        S, A = Decimal(s), Decimal(a)
        N = 20 + int(abs(s))
        x = N + A
        logx = x.ln()
        ks = [k + A for k in range(N)]
        pows = [k ** -S for k in ks]
        xs = x ** -S
        val = sum(pows) + x * xs / (S - 1) + xs / 2
        dval = None
        if want_derivative:
            dval = (-sum(k.ln() * p for k, p in zip(ks, pows))
                    - x * xs * (logx / (S - 1) + 1 / (S - 1) ** 2) - xs * logx / 2)
        B = bernoulli_numbers(80)
        P, dP = S, Decimal(1)
        xp = xs / x
        eps = Decimal(10) ** -32
        for j in range(1, 41):
            b = Decimal(B[2 * j].numerator) / Decimal(B[2 * j].denominator) / math.factorial(2 * j)
            term = b * P * xp
            val += term
            small = abs(term) <= eps * abs(val)
            if want_derivative:
                dterm = b * (dP - P * logx) * xp
                dval += dterm
                small = small and abs(dterm) <= eps * abs(dval)
            if j >= 2 and small:
                break
            q = (S + 2 * j - 1) * (S + 2 * j)
            dq = 2 * S + 4 * j - 1
            P, dP = P * q, dP * q + P * dq
            xp /= x * x
        if want_derivative:
            return float(val), float(dval)
        return float(val)


def riemann_zeta(s: float) -> float:
    s = float(s)
    if s == 1.0:
        raise PoleError("riemann_zeta has a pole at s = 1")
    if s == 0.0:
        return -0.5
    if s < 0:
        if _is_int(s) and int(s) % 2 == 0:
            return 0.0
        if _is_int(s):
            n = int(-s)
            return float(-bernoulli_numbers(n + 1)[n + 1] / (n + 1))
        if s > -1.0:
            # the reflection would evaluate zeta near its pole; EM is fine here
            return _euler_maclaurin(s, 1.0)
        return (2.0 ** s * math.pi ** (s - 1) * math.sin(math.pi * s / 2)
                * math.gamma(1 - s) * riemann_zeta(1 - s))
    if s > 60:
        return 1.0 + 2.0 ** -s + 3.0 ** -s
    return _euler_maclaurin(s, 1.0)


def riemann_zeta_prime(s: float) -> float:
    """zeta_R'(s) for s in {0, -1, -2}."""
    if s == 0:
        return -0.5 * _LOG_2PI
    if s == -1:
        return _riemann_prime_m1()
    if s == -2:
        return -riemann_zeta(3.0) / (4 * math.pi ** 2)
    raise Unsupported("riemann_zeta_prime is only available at s = 0, -1, -2")


@lru_cache(maxsize=None)
def _riemann_prime_m1() -> float:
    return _euler_maclaurin(-1.0, 1.0, want_derivative=True)[1]


def hurwitz_zeta(s: float, c: float) -> float:
    s, c = float(s), float(c)
    if c <= 0:
        raise DomainError("hurwitz_zeta needs c > 0")
    if s == 1.0:
        raise PoleError("hurwitz_zeta has a pole at s = 1")
    if s <= 0 and _is_int(s):
        # zeta(-n, c) = -B_{n+1}(c)/(n+1), exact in rationals
        n = int(-s)
        return float(-_gen_bernoulli_exact(1, n + 1, Fraction(c)) / (n + 1))
    if s < 0:
        return _euler_maclaurin_wide(s, c)
    return _euler_maclaurin(s, c)


def hurwitz_zeta_prime(s: float, c: float) -> float:
    """Derivative in s of hurwitz_zeta."""
    s, c = float(s), float(c)
    if c <= 0:
        raise DomainError("hurwitz_zeta needs c > 0")
    if s == 1.0:
        raise PoleError("hurwitz_zeta has a pole at s = 1")
    if s < 0:
        return _euler_maclaurin_wide(s, c, want_derivative=True)[1]
    return _euler_maclaurin(s, c, want_derivative=True)[1]


def _gen_bernoulli_exact(d: int, n: int, c: Fraction) -> Fraction:
    B = norlund_numbers(d, n)
    return sum((math.comb(n, m) * B[m] * c ** (n - m) for m in range(n + 1)), Fraction(0))


def gen_bernoulli(d: int, n: int, c: float) -> float:
    """B_n^{(d)}(c), defined by t^d e^{-ct}/(1-e^{-t})^d = sum (-1)^n B_n^{(d)}(c) t^n/n!."""
    if d < 1 or n < 0:
        raise InvalidArgument("need d >= 1 and n >= 0")
    if n > 30:
        raise InvalidArgument("gen_bernoulli supports n <= 30")
    return float(_gen_bernoulli_exact(d, n, Fraction(c)))


def barnes_zeta(d: int, s: float, c: float = 0.0) -> float:
    """sum over m in N_0^d (excluding 0 when c = 0) of (c + m_1 + ... + m_d)^{-s}."""
    s, c = float(s), float(c)
    if c < 0:
        raise DomainError("barnes_zeta needs c >= 0")
    if not 1 <= d <= 5:
        raise InvalidArgument("barnes_zeta supports 1 <= d <= 5")
    if c == 0:
        coeffs = barnes_polynomial(d)
        for j, a in enumerate(coeffs):
            if a and s - j == 1:
                raise PoleError(f"barnes_zeta(d={d}, c=0) has a pole at s = {s:g}")
        return math.fsum(float(a) * riemann_zeta(s - j) for j, a in enumerate(coeffs) if a)
    if _is_int(s) and 1 <= s <= d:
        raise PoleError(f"barnes_zeta(d={d}) has a pole at s = {s:g}")
    total = []
    for k in range(1, d + 1):
        w = (-1) ** (k + d) / (math.factorial(k - 1) * math.factorial(d - k))
        total.append(w * gen_bernoulli(d, d - k, c) * hurwitz_zeta(s + 1 - k, c))
    return math.fsum(total)


def barnes_finite_part(d: int, p: int, c: float) -> float:
    """Constant term of barnes_zeta(d, s, c) at its pole s = p, for c > 0 and 1 <= p <= d.

    Only the Hurwitz term zeta_H(s + 1 - p, c) is singular there; its finite
    part at argument 1 is -psi(c).
    """
    c = float(c)
    if c <= 0 or not 1 <= p <= d or not 1 <= d <= 5:
        raise InvalidArgument("need c > 0 and 1 <= p <= d <= 5")
    total = []
    for k in range(1, d + 1):
        w = (-1) ** (k + d) / (math.factorial(k - 1) * math.factorial(d - k))
        if p + 1 - k == 1:
            h = -float(special.digamma(c))
        else:
            h = hurwitz_zeta(p + 1 - k, c)
        total.append(w * gen_bernoulli(d, d - k, c) * h)
    return math.fsum(total)


# --- Epstein zeta over N_0^d minus the origin, r = (1, ..., 1) ---------------

_THETA_CUT = 60  # lambda range kept in the large-t part; e^{-60} is negligible


def _jacobi_excess(u: float) -> float:
    """phi(u) - 1 with phi(u) = sum_{l in Z} e^{-u l^2}."""
    return 2 * math.fsum(math.exp(-u * l * l) for l in range(1, 6))


def _epstein_remainder(d: int, t: float) -> float:
    """Theta(t) minus its polynomial small-t expansion, for 0 < t <= 1."""
    r = 0.5 * math.sqrt(math.pi / t)
    b = 0.5 + r
    delta = r * _jacobi_excess(math.pi ** 2 / t)
    if delta == 0.0:
        return 0.0
    return math.fsum(math.comb(d, j) * b ** (d - j) * delta ** j for j in range(1, d + 1))


def _upper_gamma(s: float, x: float) -> float:
    """Gamma(s, x) for real s and x > 0."""
    if s > 0:
        return float(special.gammaincc(s, x) * special.gamma(s))
    if s == 0:
        return float(special.exp1(x))
    return (_upper_gamma(s + 1, x) - x ** s * math.exp(-x)) / s


@lru_cache(maxsize=None)
def _epstein_lattice(d: int):
    counts = epstein_multiplicities(d, _THETA_CUT)
    lam = np.nonzero(counts)[0]
    return tuple(int(l) for l in lam), tuple(int(counts[l]) for l in lam)


def _epstein_bracket(d: int, s: float, skip_pole: float | None = None) -> float:
    """Gamma(s) zeta_E(s), written as pole terms + int_0^1 + int_1^inf.

    With ``skip_pole`` the pole term at that point is left out, which gives
    the regular part at that pole.
    """
    poles = _epstein_poles(d)
    parts = []
    for mu, A in poles + [(0.0, 2.0 ** -d - 1)]:
        if skip_pole is not None and mu == skip_pole:
            continue
        parts.append(A / (s - mu))
    inner, _ = integrate.quad(lambda t: t ** (s - 1) * _epstein_remainder(d, t), 0.0, 1.0,
                              epsabs=1e-17, epsrel=1e-13, limit=200)
    parts.append(inner)
    lam, g = _epstein_lattice(d)
    parts.extend(gi * li ** -s * _upper_gamma(s, li) for li, gi in zip(lam, g))
    return math.fsum(parts)


def _epstein_poles(d: int) -> list[tuple[float, float]]:
    return [(n / 2, math.comb(d, n) * math.pi ** (n / 2) / 2 ** d) for n in range(d, 0, -1)]


def _epstein_direct(d: int, s: float) -> float:
    """Lattice sum up to Q <= L plus the Weyl-law tail of the counting function."""
    L = 40000 if d == 2 else 20000
    counts = epstein_multiplicities(d, L)
    q = np.nonzero(counts)[0]
    head = math.fsum((counts[q] * q.astype(float) ** -s).tolist())
    # N(x) ~ sum_n A_{-n/2} x^{n/2} / Gamma(n/2 + 1), so dN = sum A x^{n/2-1}/Gamma(n/2) dx
    tail = math.fsum(A / math.gamma(mu) * (L + 0.5) ** (mu - s) / (s - mu)
                     for mu, A in _epstein_poles(d))
    return head + tail


def epstein_zeta(d: int, s: float, method: str = "auto") -> float:
    """sum over m in N_0^d, m != 0, of (m_1^2 + ... + m_d^2)^{-s}."""
    s = float(s)
    if d not in (2, 3):
        raise InvalidArgument("epstein_zeta supports d in {2, 3}")
    if any(s == mu for mu, _ in _epstein_poles(d)):
        raise PoleError(f"epstein_zeta(d={d}) has a pole at s = {s:g}")
    if method not in ("auto", "direct", "theta"):
        raise InvalidArgument(f"unknown method {method!r}")
    if method == "direct" or (method == "auto" and s > d / 2 + 1):
        if s <= d / 2:
            raise DomainError("the lattice sum diverges for s <= d/2")
        return _epstein_direct(d, s)
    if s <= 0 and _is_int(s):
        # Gamma(s) has a pole; zeta(-n) = (-1)^n n! A_n and A_n = 0 for n >= 1
        return 2.0 ** -d - 1 if s == 0 else 0.0
    return _epstein_bracket(d, s) / math.gamma(s)


# --- Family-level dispatch ---------------------------------------------------

def zeta_lambda(family: SequenceFamily, s: float) -> float:
    """zeta_Lambda(s) = sum over the sequence of g(lambda) lambda^{-s}, continued."""
    if family.kind == "naturals":
        return riemann_zeta(s)
    if family.kind == "barnes":
        return barnes_zeta(family.d, s, 0.0)
    if family.kind == "epstein":
        return epstein_zeta(family.d, s)
    if family.kind == "one_singularity":
        values = dict(family.zeta_values)
        if _is_int(s) and int(s) in values:
            return values[int(s)]
        raise Unsupported(f"no zeta value attached to {family.name} at s = {s:g}")
    raise UnsupportedFamily("custom sequences have no zeta continuation")


def _poles(family: SequenceFamily) -> list[tuple[float, float]]:
    return theta_expansion(family).poles


def finite_part_at_pole(family: SequenceFamily, mu: float | None = None) -> float:
    """Constant term of the Laurent expansion of zeta_Lambda at the pole mu (default mu_0)."""
    if family.kind == "custom":
        raise UnsupportedFamily("custom sequences have no zeta continuation")
    poles = _poles(family)
    if mu is None:
        mu = poles[0][0]
    mu = float(mu)
    pole_map = {m: A for m, A in poles}
    if mu not in pole_map:
        raise InvalidArgument(f"{family.name} has no pole at s = {mu:g}")
    if family.kind == "naturals":
        return EULER_GAMMA
    if family.kind == "barnes":
        out = []
        for j, a in enumerate(barnes_polynomial(family.d)):
            if a:
                out.append(float(a) * (EULER_GAMMA if mu - j == 1 else riemann_zeta(mu - j)))
        return math.fsum(out)
    if family.kind == "epstein":
        return _epstein_finite_part(family.d, mu)
    if family.finite_part is None or mu != 1.0:
        raise Unsupported(f"no finite part attached to {family.name} at s = {mu:g}")
    return family.finite_part


@lru_cache(maxsize=None)
def _epstein_finite_part(d: int, mu: float) -> float:
    A = dict(_epstein_poles(d))[mu]
    regular = _epstein_bracket(d, mu, skip_pole=mu)
    return (regular - A * float(special.digamma(mu))) / math.gamma(mu)


def zeta_prime_zero(family: SequenceFamily) -> float:
    if family.kind == "naturals":
        return -0.5 * _LOG_2PI
    if family.kind == "barnes":
        return math.fsum(float(a) * riemann_zeta_prime(-j)
                         for j, a in enumerate(barnes_polynomial(family.d)) if a)
    if family.kind == "epstein":
        return _epstein_zeta_prime_zero(family.d)
    if family.kind == "one_singularity":
        if family.zeta_prime_0 is None:
            raise Unsupported(f"no zeta'(0) attached to {family.name}")
        return family.zeta_prime_0
    raise UnsupportedFamily("custom sequences have no zeta continuation")


@lru_cache(maxsize=None)
def _epstein_zeta_prime_zero(d: int) -> float:
    # 1/Gamma(s) = s + gamma s^2 + ..., and the bracket is A_0/s + H(s)
    A0 = 2.0 ** -d - 1
    return EULER_GAMMA * A0 + _epstein_bracket(d, 0.0, skip_pole=0.0)


def _epstein_zeta_prime_zero_fd(d: int, h: float = 1e-3) -> float:
    """Richardson-extrapolated central difference, an independent check."""
    def D(step):
        return (epstein_zeta(d, step) - epstein_zeta(d, -step)) / (2 * step)
    return (4 * D(h / 2) - D(h)) / 3


def numeric_residue(f, mu: float, h: float = 1e-3) -> float:
    """Residue of f at the simple pole mu from symmetric samples, Richardson-extrapolated."""
    def r(step):
        return 0.5 * step * (f(mu + step) - f(mu - step))
    return (4 * r(h / 2) - r(h)) / 3


@dataclass(frozen=True)
class SpectralData:
    """Per-family constants feeding the asymptotic formulas.

    ``poles`` holds (mu_i, residue) largest mu first; ``zeta_at[s]`` is the
    value at integer s, or the finite part when s is a pole. ``error_estimates``
    records the size of cross-check discrepancies for numerically computed
    constants (Epstein families); it is empty for closed forms.
    """

    family: SequenceFamily
    poles: tuple[tuple[float, float], ...]
    A0: float
    zeta_at: dict = field(hash=False, compare=False)
    fp_at_pole: float | None
    zeta_prime_0: float | None
    error_estimates: dict = field(default_factory=dict, hash=False, compare=False)

    @property
    def mu0(self) -> float:
        return self.poles[0][0]

    def theta_coefficient(self, mu: float) -> float:
        """A_{-mu} recovered from the residue."""
        for m, res in self.poles:
            if m == mu:
                return res * math.gamma(m)
        return 0.0


def _maybe(fn, *args):
    try:
        return fn(*args)
    except Unsupported:
        return None


@lru_cache(maxsize=64)
def spectral_data(family: SequenceFamily, k_max: int = 3) -> SpectralData:
    if family.kind == "custom":
        raise UnsupportedFamily("custom sequences have no theta expansion or zeta continuation")
    if k_max < 1:
        raise InvalidArgument("k_max must be >= 1")
    exp = theta_expansion(family)
    poles = tuple((mu, A / math.gamma(mu)) for mu, A in exp.poles)
    pole_set = {mu for mu, _ in poles}
    zeta_at = {}
    for s in range(1, k_max + 1):
        if float(s) in pole_set:
            zeta_at[s] = _maybe(finite_part_at_pole, family, float(s))
        else:
            zeta_at[s] = _maybe(zeta_lambda, family, float(s))
    fp = _maybe(finite_part_at_pole, family, 1.0) if 1.0 in pole_set else None
    zp = _maybe(zeta_prime_zero, family)
    errors = {}
    if family.kind == "epstein":
        errors["zeta_prime_0"] = abs(zp - _epstein_zeta_prime_zero_fd(family.d))
        if fp is not None:
            A = dict(exp.poles)[1.0]
            f = lambda s: epstein_zeta(family.d, s) - A / (s - 1)
            errors["fp_at_pole"] = abs(fp - 0.5 * (f(1 + 1e-4) + f(1 - 1e-4)))
    return SpectralData(family, poles, exp.A0, zeta_at, fp, zp, errors)
