import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from partition_moments import InvalidArgument
from partition_moments.combinatorics import (barnes_degeneracy, barnes_polynomial, bell_sum,
                                             bernoulli_numbers, c_coeffs, c_table, compositions,
                                             norlund_numbers, stirling2)


def test_c_coeffs_examples():
    assert c_coeffs(1) == [1]
    assert c_coeffs(2) == [1, 0]
    assert c_coeffs(3) == [1, 1, 0]
    assert sum(c_coeffs(10)) == 362880


def test_c_table_invariants():
    for s, row in enumerate(c_table(20), start=1):
        assert len(row) == s
        assert sum(row) == math.factorial(s - 1)
        if s >= 2:
            assert row[-1] == 0


@pytest.mark.parametrize("s", range(1, 8))
def test_c_coeffs_match_symbolic_derivative(s):
    """(y d/dy)^{s-1} y/(1-y) = sum_j c_j y^j / (1-y)^s."""
    y = sp.symbols("y")
    f = y / (1 - y)
    for _ in range(s - 1):
        f = y * sp.diff(f, y)
    rhs = sum(c * y ** j for j, c in enumerate(c_coeffs(s), start=1)) / (1 - y) ** s
    assert sp.simplify(f - rhs) == 0


def test_barnes_degeneracy():
    assert barnes_degeneracy(0, 3) == 1
    assert barnes_degeneracy(4, 2) == 5
    brute = sum(1 for a in range(4) for b in range(4) for c in range(4) if a + b + c == 3)
    assert barnes_degeneracy(3, 3) == brute == 10


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_barnes_polynomial(d):
    poly = barnes_polynomial(d)
    for l in range(12):
        assert sum(c * l ** j for j, c in enumerate(poly)) == barnes_degeneracy(l, d)


def test_compositions_count_partitions():
    for k in range(1, 16):
        sols = compositions(k)
        assert len(sols) == int(sp.partition(k))
        assert all(sum((j + 1) * b for j, b in enumerate(v)) == k for v in sols)


def test_bell_sum_small_cases():
    a, b, c = 1.7, -0.4, 2.3
    assert bell_sum(1, [a]) == pytest.approx(a)
    assert bell_sum(2, [a, b]) == pytest.approx(a * a + b)
    assert bell_sum(3, [a, b, c]) == pytest.approx(a ** 3 + 3 * a * b + c)
    assert bell_sum(3, [Fraction(1), Fraction(2), Fraction(3)]) == 1 + 6 + 3
    with pytest.raises(InvalidArgument):
        bell_sum(3, [1.0, 2.0])


def test_bell_sum_cycle_index():
    """With x_{j-1} = (j-1)! z^j the sums are k! [t^k] exp(sum z^j t^j / j)."""
    z, t = sp.symbols("z t")
    gen = sp.series(sp.exp(sum(z ** j * t ** j / j for j in range(1, 9))), t, 0, 9).removeO()
    for k in range(1, 9):
        x = [math.factorial(j) * z ** (j + 1) for j in range(k)]
        assert sp.expand(bell_sum(k, x) - sp.factorial(k) * gen.coeff(t, k)) == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=20), min_size=1, max_size=7))
def test_bell_sum_matches_sympy_bell_polynomials(x):
    """Our normalisation is the complete Bell polynomial in y_j = x_{j-1}."""
    k = len(x)
    ys = [sp.Rational(v.numerator, v.denominator) for v in x]
    expected = sum(sp.bell(k, m, ys[: k - m + 1]) for m in range(1, k + 1))
    assert bell_sum(k, x) == Fraction(int(sp.numer(expected)), int(sp.denom(expected)))


def test_stirling2():
    for n in range(12):
        for k in range(n + 1):
            assert stirling2(n, k) == sp.functions.combinatorial.numbers.stirling(n, k)


def test_bernoulli_and_norlund():
    B = bernoulli_numbers(12)
    assert B[1] == Fraction(-1, 2)
    assert [B[n] for n in (2, 4, 12)] == [Fraction(1, 6), Fraction(-1, 30), Fraction(-691, 2730)]
    u = sp.symbols("u")
    for d in (1, 2, 3):
        ser = sp.series((u / (sp.exp(u) - 1)) ** d, u, 0, 8).removeO()
        got = norlund_numbers(d, 7)
        for n in range(8):
            want = ser.coeff(u, n) * sp.factorial(n)
            assert got[n] == Fraction(int(sp.numer(want)), int(sp.denom(want)))
