import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from likeiper.combinatorics import (
    PowerSeries,
    bell_complete,
    bell_complete_all,
    bell_forward,
    bell_invert,
    bell_partial,
    bell_scale,
    binomial,
    log_polynomial,
    series_exp,
    series_log,
    stirling2,
)
from likeiper.precision import DomainError
from oracles import (
    bell_complete_by_set_partitions,
    bell_complete_def,
    bell_partial_def,
    count_partitions_into,
    pascal_row,
)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)


def rational_lists(n):
    return st.lists(rationals, min_size=n, max_size=n)


# -- binomial ---------------------------------------------------------------

@pytest.mark.parametrize("n,k,expected", [(4, 2, 6), (10, 0, 1), (10, 5, 252)])
def test_binomial_examples(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_matches_pascal_triangle():
    for n in range(25):
        row = pascal_row(n)
        assert [binomial(n, k) for k in range(n + 1)] == row
        assert binomial(n, -1) == 0 and binomial(n, n + 1) == 0


def test_binomial_rejects_negative_n():
    with pytest.raises(DomainError):
        binomial(-1, 0)


# -- stirling2 --------------------------------------------------------------

def test_stirling2_examples():
    assert stirling2(1, 1) == 1
    assert stirling2(3, 2) == 3
    assert stirling2(2, 5) == 0
    assert stirling2(0, 0) == 1


def test_stirling2_counts_set_partitions():
    for l in range(8):
        for k in range(l + 2):
            assert stirling2(l, k) == count_partitions_into(l, k)


def test_alternating_power_sum_sign_follows_k():
    # sum_j C(k,j) (-1)^j j^l = (-1)^k k! S(l,k); the sign tracks k, not l.
    for l in range(9):
        for k in range(9):
            lhs = sum(math.comb(k, j) * (-1) ** j * j ** l for j in range(k + 1))
            assert lhs == (-1) ** k * math.factorial(k) * stirling2(l, k)
    # l = 2, k = 1 is where a (-1)^l sign would go wrong.
    assert sum(math.comb(1, j) * (-1) ** j * j ** 2 for j in range(2)) == -1
    assert (-1) ** 2 * stirling2(2, 1) * 1 == 1


def test_log_of_exp_minus_one_kills_higher_stirling_sums():
    for l in range(1, 12):
        s = sum((-1) ** (k - 1) * math.factorial(k - 1) * stirling2(l, k) for k in range(1, l + 1))
        assert s == (1 if l == 1 else 0)


# -- partial Bell -----------------------------------------------------------

def test_bell_partial_small_cases():
    x1, x2, x3 = Fraction(2), Fraction(3), Fraction(7)
    assert bell_partial(2, 1, [x1, x2]) == x2
    assert bell_partial(2, 2, [x1]) == x1 ** 2
    assert bell_partial(3, 2, [x1, x2]) == 3 * x1 * x2
    assert bell_partial(3, 1, [x1, x2, x3]) == x3
    assert bell_partial(3, 3, [x1]) == x1 ** 3


def test_bell_partial_above_diagonal_is_zero():
    assert bell_partial(2, 3, [1, 1]) == 0


def test_bell_partial_homogeneity_example():
    xs = [1, 1, 1]
    assert bell_partial(4, 2, [3 * x for x in xs]) == 9 * bell_partial(4, 2, xs)


@settings(max_examples=40, deadline=None)
@given(rational_lists(8))
def test_bell_partial_matches_definition(xs):
    for n in range(1, 9):
        for k in range(1, n + 1):
            assert bell_partial(n, k, xs) == bell_partial_def(n, k, xs)


# -- complete Bell ----------------------------------------------------------

def test_bell_complete_examples():
    x1, x2 = Fraction(5, 3), Fraction(-2)
    assert bell_complete(2, [x1, x2]) == x1 ** 2 + x2
    assert bell_complete(3, [1, 1, 1]) == 5
    xs = [2, 1, 4]
    flipped = [-2, 1, -4]
    assert bell_complete(3, flipped) == -bell_complete(3, xs)


def test_bell_complete_low_orders_match_table():
    x = [Fraction(v) for v in (3, -1, 2, 5, -7)]
    x1, x2, x3, x4, x5 = x
    Y = bell_complete_all(5, x)
    assert Y[0] == 1
    assert Y[3] == x1 ** 3 + 3 * x1 * x2 + x3
    assert Y[4] == x1 ** 4 + 6 * x1 ** 2 * x2 + 4 * x1 * x3 + 3 * x2 ** 2 + x4
    assert Y[5] == (x1 ** 5 + 10 * x1 ** 3 * x2 + 10 * x1 ** 2 * x3 + 15 * x1 * x2 ** 2
                    + 5 * x1 * x4 + 10 * x2 * x3 + x5)


def test_bell_numbers():
    ones = [1] * 10
    assert bell_complete_all(10, ones) == [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]


@settings(max_examples=40, deadline=None)
@given(rational_lists(8))
def test_recurrence_equals_definition(xs):
    Y = bell_complete_all(8, xs)
    for n in range(9):
        assert Y[n] == bell_complete_def(n, xs)
    assert Y[6] == bell_complete_by_set_partitions(6, xs)


@settings(max_examples=40, deadline=None)
@given(rational_lists(8), rationals)
def test_scaling_law(xs, a):
    for n in range(9):
        scaled = [a ** (j + 1) * x for j, x in enumerate(xs)]
        assert bell_complete(n, scaled) == a ** n * bell_complete(n, xs)


@settings(max_examples=40, deadline=None)
@given(rational_lists(8))
def test_sign_flip_law(xs):
    for n in range(9):
        flipped = [(-1) ** (j + 1) * x for j, x in enumerate(xs)]
        assert bell_complete(n, flipped) == (-1) ** n * bell_complete(n, xs)


@settings(max_examples=30, deadline=None)
@given(rational_lists(6), rational_lists(6))
def test_binomial_convolution(xs, ys):
    sums = [x + y for x, y in zip(xs, ys)]
    Yx, Yy, Ys = bell_complete_all(6, xs), bell_complete_all(6, ys), bell_complete_all(6, sums)
    for n in range(7):
        assert Ys[n] == sum(math.comb(n, k) * Yx[n - k] * Yy[k] for k in range(n + 1))


# -- bell_scale -------------------------------------------------------------

def test_bell_scale_examples():
    xs = [Fraction(1, 2), Fraction(3), Fraction(-1, 4)]
    assert bell_scale(3, 1, xs) == bell_complete(3, xs)
    assert bell_scale(3, 0, xs) == 0
    assert bell_scale(2, 2, [1, 1]) == 6 == bell_complete(2, [2, 2])


@settings(max_examples=40, deadline=None)
@given(rational_lists(7), rationals)
def test_alpha_expansion(xs, alpha):
    for n in range(1, 8):
        assert bell_scale(n, alpha, xs) == bell_complete(n, [alpha * x for x in xs])


# -- inversion / log polynomials ------------------------------------------

def test_bell_invert_examples():
    assert bell_invert([0, 0, 0]) == [0, 0, 0]
    assert bell_forward([1, 0, 0]) == [1, 1, 1]
    assert bell_invert([1, 1, 1]) == [1, 0, 0]


@settings(max_examples=40, deadline=None)
@given(rational_lists(8))
def test_inversion_is_two_sided(xs):
    assert bell_invert(bell_forward(xs)) == xs
    assert bell_forward(bell_invert(xs)) == xs


def test_log_polynomial_examples():
    g1, g2 = Fraction(3, 7), Fraction(-2, 5)
    assert log_polynomial(0, []) == 0
    assert log_polynomial(1, [g1]) == g1
    assert log_polynomial(2, [g1, g2]) == g2 - g1 ** 2


@settings(max_examples=30, deadline=None)
@given(rational_lists(7))
def test_log_polynomial_inverts_exponential(ls):
    # log of sum_n Y_n(ls) s^n/n! is sum_n ls_n s^n/n!
    gs = bell_complete_all(7, ls)[1:]
    assert [log_polynomial(n, gs) for n in range(1, 8)] == ls


# -- series exp / log ------------------------------------------------------

def test_series_exp_exponential():
    s = series_exp(0, [1] + [0] * 9, 10)
    assert s.coeffs == [Fraction(1, math.factorial(r)) for r in range(11)]
    assert s.order == 10


def test_series_exp_geometric():
    s = series_exp(0, [1] * 12, 12)
    assert s.coeffs == [1] * 13


def test_series_exp_second_coefficient_is_bell():
    mp.prec = 128
    b0, b1, b2 = mpf("0.3"), mpf("-1.25"), mpf("0.75")
    s = series_exp(b0, [b1, b2], 2)
    expect = mpmath.exp(b0) * bell_complete(2, [b1, 1 * b2]) / 2
    assert abs(s[2] - expect) < mpf(2) ** -120


@settings(max_examples=30, deadline=None)
@given(rational_lists(8), st.fractions(min_value=-2, max_value=2, max_denominator=9))
def test_series_exp_matches_bell_form_exactly(bs, b0):
    s = series_exp(0, bs, 8)
    weighted = [math.factorial(j) * b for j, b in enumerate(bs)]
    Y = bell_complete_all(8, weighted)
    for n in range(9):
        assert s[n] == Y[n] / math.factorial(n)


def test_series_log_examples():
    b0, bs = series_log([1, 0, 0, 0], 3)
    assert b0 == 0 and bs == [0, 0, 0]
    b0, bs = series_log([1] * 9, 8)
    assert b0 == 0 and bs == [1] * 8


def test_series_log_rejects_nonpositive_constant():
    with pytest.raises(DomainError):
        series_log([0, 1, 2], 2)
    with pytest.raises(DomainError):
        series_log([mpf(-1), 1], 1)


@settings(max_examples=30, deadline=None)
@given(rational_lists(8))
def test_series_log_exp_exact_round_trip(bs):
    s = series_exp(0, bs, 8)
    b0, back = series_log(s.coeffs, 8)
    assert b0 == 0 and back == bs


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(min_value=-3, max_value=3), min_size=12, max_size=12),
       st.floats(min_value=0.05, max_value=20))
def test_series_log_round_trip_floating(tail, a0):
    P = 160
    mp.prec = P
    coeffs = [mpf(a0)] + [mpf(t) for t in tail]
    b0, bs = series_log(coeffs, 12)
    back = series_exp(b0, bs, 12).coeffs
    scale = max(abs(c) for c in coeffs)
    # growth of the recurrence for badly scaled a0 is bounded by (scale/a0)^12
    allowance = (1 + scale / mpf(a0)) ** 12
    for c, d in zip(coeffs, back):
        assert abs(c - d) <= mpf(2) ** -(P - 8) * allowance * scale


def test_power_series_evaluation():
    s = PowerSeries(1, [Fraction(1), Fraction(2), Fraction(3)])
    assert s(2) == 6
    with pytest.raises(ValueError):
        PowerSeries(0, [])
