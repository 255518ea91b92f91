import math

import mpmath as mp
import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from partition_moments import (DomainError, InvalidArgument, PoleError, SequenceFamily, Unsupported,
                               UnsupportedFamily, theta_expansion)
from partition_moments.zeta import (EULER_GAMMA, _epstein_zeta_prime_zero_fd, barnes_finite_part,
                                    barnes_zeta, epstein_zeta, finite_part_at_pole, gen_bernoulli,
                                    hurwitz_zeta, hurwitz_zeta_prime, numeric_residue, riemann_zeta,
                                    riemann_zeta_prime, spectral_data, zeta_lambda, zeta_prime_zero)

mp.mp.dps = 30
BETA = [0, 1, 0, -1]  # Dirichlet character mod 4


def e2_oracle(s):
    """Epstein(2) over N_0^2 minus 0: zeta(s) beta(s) + zeta(2s)."""
    s = mp.mpf(s)
    return mp.zeta(s) * mp.dirichlet(s, BETA) + mp.zeta(2 * s)


def rel(a, b):
    return abs(a - b) / abs(b)


def test_riemann_examples():
    assert riemann_zeta(2) == pytest.approx(math.pi ** 2 / 6, rel=1e-14)
    assert riemann_zeta(0) == -0.5
    assert riemann_zeta(1.5) == pytest.approx(2.612375348685488, rel=1e-13)
    with pytest.raises(PoleError):
        riemann_zeta(1)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=-12, max_value=40).filter(lambda s: abs(s - 1) > 1e-3))
def test_riemann_against_mpmath(s):
    want = float(mp.zeta(s))
    assert abs(riemann_zeta(s) - want) <= 1e-12 * max(abs(want), 1e-3)


def test_riemann_prime():
    z3 = float(mp.zeta(3))
    assert riemann_zeta_prime(-2) == pytest.approx(-z3 / (4 * math.pi ** 2), rel=1e-12)
    assert riemann_zeta_prime(-1) == pytest.approx(-0.16542114370045092, rel=1e-12)
    assert riemann_zeta_prime(0) == pytest.approx(-0.5 * math.log(2 * math.pi), rel=1e-14)
    h = 1e-3
    D = lambda k: (riemann_zeta(-2 + k) - riemann_zeta(-2 - k)) / (2 * k)
    fd = (4 * D(h / 2) - D(h)) / 3
    assert abs(fd - riemann_zeta_prime(-2)) < 1e-8
    with pytest.raises(Unsupported):
        riemann_zeta_prime(3)


def test_hurwitz_examples():
    for s in (2, 3, 0.5):
        assert hurwitz_zeta(s, 1) == pytest.approx(riemann_zeta(s), rel=1e-12)
    assert hurwitz_zeta(2, 0.5) == pytest.approx(math.pi ** 2 / 2, rel=1e-12)
    c = 0.7
    assert hurwitz_zeta(-1, c) == pytest.approx(-0.5 * (c * c - c + 1 / 6), rel=1e-12)
    with pytest.raises(PoleError):
        hurwitz_zeta(1, 0.3)
    with pytest.raises(DomainError):
        hurwitz_zeta(2, 0.0)


@settings(max_examples=150, deadline=None)
@given(st.floats(min_value=-12, max_value=12).filter(lambda s: abs(s - 1) > 1e-3 and (s == 0 or abs(s) > 1e-12)),
       st.floats(min_value=0.05, max_value=8))
def test_hurwitz_against_mpmath(s, c):
    want = float(mp.zeta(s, c))
    assert abs(hurwitz_zeta(s, c) - want) <= 1e-11 * abs(want) + 1e-15
    dwant = float(mp.zeta(s, c, 1))
    assert abs(hurwitz_zeta_prime(s, c) - dwant) <= 1e-10 * abs(dwant) + 1e-15


def test_gen_bernoulli_examples():
    assert gen_bernoulli(2, 0, 0.3) == 1.0
    assert gen_bernoulli(1, 1, 2.0) == 1.5
    with pytest.raises(InvalidArgument):
        gen_bernoulli(2, 31, 0.0)


@pytest.mark.parametrize("d,c", [(1, 0.0), (2, 0.0), (2, 0.3), (3, 1.0), (4, 0.25)])
def test_gen_bernoulli_series_oracle(d, c):
    """Coefficients of t^d e^{-ct}/(1 - e^{-t})^d are (-1)^n B_n^{(d)}(c)/n!."""
    t = sp.symbols("t")
    cc = sp.nsimplify(c)
    ser = sp.series(t ** d * sp.exp(-cc * t) / (1 - sp.exp(-t)) ** d, t, 0, 7).removeO()
    for n in range(7):
        want = float((-1) ** n * ser.coeff(t, n) * sp.factorial(n))
        assert gen_bernoulli(d, n, c) == pytest.approx(want, rel=1e-13, abs=1e-15)


def test_barnes_closed_forms():
    z = riemann_zeta
    assert barnes_zeta(2, 4, 0) == pytest.approx(z(3) + z(4), rel=1e-13)
    assert barnes_zeta(2, 4, 0) == pytest.approx(2.2843801, abs=1e-7)
    assert barnes_zeta(3, 5, 0) == pytest.approx(0.5 * (z(3) + 3 * z(4) + 2 * z(5)), rel=1e-13)
    with pytest.raises(PoleError):
        barnes_zeta(2, 2, 0)
    with pytest.raises(PoleError):
        barnes_zeta(3, 3, 0.5)


def _lattice_tail_sum(d, s, c, L):
    """sum over N_0^d with m_1+..+m_d = l <= L, plus a tail integral."""
    from math import comb
    head = math.fsum(comb(l + d - 1, d - 1) * (c + l) ** -s for l in range(0 if c else 1, L + 1))
    # e_l ~ l^{d-1}/(d-1)!, tail integral from L + 1/2
    tail = (L + 0.5 + c) ** (d - s) / ((s - d) * math.factorial(d - 1))
    return head + tail


def test_barnes_c_positive_vs_lattice():
    L = 3000
    m = np.arange(0, L + 1, dtype=float)
    l = m[:, None] + m[None, :]
    head = ((1 + l[l <= L]) ** -4.0).sum()
    tail = 0.5 * (L + 1.5) ** -2  # sum_{l > L} (l+1)^{-3} by the midpoint integral
    assert abs(barnes_zeta(2, 4, 1.0) - (head + tail)) < 1e-8
    for d, s, c in [(2, 3.5, 0.4), (3, 5, 1.0), (4, 6.5, 2.5)]:
        assert rel(barnes_zeta(d, s, c), _lattice_tail_sum(d, s, c, 20000)) < 1e-8


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), st.floats(min_value=-3.5, max_value=0.9), st.floats(min_value=0.2, max_value=3))
def test_barnes_continuation_matches_mpmath_hurwitz_combination(d, s, c):
    """Barnes zeta as a polynomial in the shift: sum_l C(l+d-1, d-1)(l + c)^{-s}."""
    x = sp.symbols("x")
    poly = sp.Poly(sp.expand(sp.binomial(x - c + d - 1, d - 1).expand(func=True)), x)
    want = sum(float(a) * float(mp.zeta(s - j, c)) for (j,), a in poly.terms())
    assert abs(barnes_zeta(d, s, c) - want) <= 1e-9 * max(1.0, abs(want))


def test_barnes_finite_part():
    f = lambda s: barnes_zeta(2, s, 0.5)
    res = numeric_residue(f, 2.0)
    h = 1e-5
    fp = 0.5 * ((f(2 + h) - res / h) + (f(2 - h) + res / h))
    assert barnes_finite_part(2, 2, 0.5) == pytest.approx(fp, abs=1e-6)


def test_epstein_two_paths():
    assert rel(epstein_zeta(2, 3, "direct"), epstein_zeta(2, 3, "theta")) < 1e-9
    assert rel(epstein_zeta(3, 3, "direct"), epstein_zeta(3, 3, "theta")) < 1e-9
    with pytest.raises(PoleError):
        epstein_zeta(2, 1.0)
    with pytest.raises(PoleError):
        epstein_zeta(3, 1.5)


def test_epstein2_quadrant_lattice():
    L = 3000
    m = np.arange(0, L + 1, dtype=float)
    q = m[:, None] ** 2 + m[None, :] ** 2
    q[0, 0] = np.inf
    inside = q <= L * L
    head = (q[inside] ** -2.0).sum()
    # quarter annulus outside radius L: (pi/2) int r^{-3} dr
    tail = math.pi / 4 * L ** -2
    assert abs(epstein_zeta(2, 2) - (head + tail)) < 1e-6
    assert rel(epstein_zeta(2, 2), float(mp.zeta(2) * mp.catalan + mp.zeta(4))) < 1e-12


@pytest.mark.parametrize("s", [-2.5, -1.5, -0.5, 0.25, 0.75, 1.3, 1.75, 2.5, 4.0])
def test_epstein2_continuation_against_beta_oracle(s):
    assert abs(epstein_zeta(2, s) - float(e2_oracle(s))) <= 1e-9 * max(1.0, abs(float(e2_oracle(s))))


def test_epstein_nonpositive_integers():
    assert epstein_zeta(2, 0) == -0.75
    assert epstein_zeta(3, 0) == -0.875
    assert epstein_zeta(2, -1) == 0.0
    assert abs(float(e2_oracle(-1))) < 1e-20


def test_epstein2_derived_constants():
    fam = SequenceFamily.epstein(2)
    want_zp = float(mp.diff(e2_oracle, 0))
    assert zeta_prime_zero(fam) == pytest.approx(want_zp, abs=1e-10)
    beta1 = mp.dirichlet(1, BETA)
    want_fp = float(mp.euler * beta1 + mp.diff(lambda s: mp.dirichlet(s, BETA), 1) + mp.zeta(2))
    assert finite_part_at_pole(fam) == pytest.approx(want_fp, abs=1e-9)
    # zeta(2s) = (1/2)/(s - 1/2) + gamma + O(s - 1/2)
    want_half = float(mp.zeta(0.5) * mp.dirichlet(0.5, BETA) + mp.euler)
    assert finite_part_at_pole(fam, 0.5) == pytest.approx(want_half, abs=1e-8)


def test_epstein3_zeta_prime_zero_two_ways():
    assert abs(zeta_prime_zero(SequenceFamily.epstein(3)) - _epstein_zeta_prime_zero_fd(3)) < 1e-8


def test_family_dispatch():
    nat = SequenceFamily.naturals()
    assert zeta_lambda(nat, 3.0) == riemann_zeta(3.0)
    assert finite_part_at_pole(nat) == pytest.approx(0.5772156649, abs=1e-10)
    assert finite_part_at_pole(nat) == EULER_GAMMA
    assert zeta_prime_zero(nat) == pytest.approx(-0.5 * math.log(2 * math.pi))
    b2, b3 = SequenceFamily.barnes(2), SequenceFamily.barnes(3)
    l2p = 0.5 * math.log(2 * math.pi)
    assert zeta_prime_zero(b2) == pytest.approx(-l2p + riemann_zeta_prime(-1), rel=1e-13)
    assert zeta_prime_zero(b3) == pytest.approx(
        -l2p + 1.5 * riemann_zeta_prime(-1) + 0.5 * riemann_zeta_prime(-2), rel=1e-13)
    custom = SequenceFamily.custom({1: 1, 2: 3})
    with pytest.raises(UnsupportedFamily):
        zeta_lambda(custom, 2.0)
    with pytest.raises(UnsupportedFamily):
        spectral_data(custom)


def test_spectral_data_poles():
    flat = lambda sd: [x for pole in sd.poles for x in pole]
    assert flat(spectral_data(SequenceFamily.barnes(2), 3)) == pytest.approx([2, 1, 1, 1])
    sd3 = spectral_data(SequenceFamily.barnes(3), 3)
    assert flat(sd3) == pytest.approx([3, 0.5, 2, 1.5, 1, 1])
    e2 = spectral_data(SequenceFamily.epstein(2), 3)
    assert flat(e2) == pytest.approx([1, math.pi / 4, 0.5, 0.5])
    assert e2.theta_coefficient(0.5) == pytest.approx(math.sqrt(math.pi) / 2)
    assert e2.error_estimates["zeta_prime_0"] < 1e-8
    assert e2.error_estimates["fp_at_pole"] < 1e-6
    for sd in (sd3, e2):
        exp = theta_expansion(sd.family)
        for (mu, res), (mu2, A) in zip(sd.poles, exp.poles):
            assert mu == mu2 and abs(res - A / math.gamma(mu)) < 1e-10


@pytest.mark.parametrize("name", ["naturals", "barnes2", "barnes3"])
def test_values_at_negative_integers(name):
    from conftest import FAMILIES
    fam = FAMILIES[name]
    exp = theta_expansion(fam, order=3)
    for n in (1, 2, 3):
        want = (-1) ** n * math.factorial(n) * exp.coefficient(float(n))
        assert abs(zeta_lambda(fam, -n) - want) < 1e-8


def test_residues_numeric(family):
    for mu, res in spectral_data(family).poles:
        got = numeric_residue(lambda s: zeta_lambda(family, s), mu)
        assert abs(got - res) < 1e-7
