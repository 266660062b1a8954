import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf

from likeiper.precision import ConvergenceError, DomainError, PrecisionContext
from likeiper.xi import keiper_beta, keiper_betas, theta_omega, xi_deriv1, xi_taylor

CTX = PrecisionContext(192)


def xi_oracle(n, dps=60):
    """xi^(n)(1) by numerical differentiation of the completed zeta function."""
    with mp.workdps(dps):
        f = lambda s: s * (s - 1) / 2 * mp.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s)
        return mpmath.diff(f, 1, n, method="quad", radius=mpf(1) / 2)


@pytest.fixture(scope="module")
def xi12():
    return xi_deriv1(12, CTX)


def test_omega_one_full_sum():
    w = theta_omega(1, CTX)
    # direct summation oracle: five terms at 60 digits
    with mp.workdps(60):
        ref = mpmath.fsum(mpmath.exp(-mp.pi * k * k) for k in range(1, 6))
    assert abs(w.value - ref) < mpf(10) ** -34
    assert mpmath.nstr(w.value, 9) == "0.0432174056"
    assert w.value > 0


def test_omega_large_x_first_term_domination():
    w = theta_omega(10, CTX)
    with mp.workprec(192):
        assert w.value < mpmath.exp(-10 * mp.pi) * mpf("1.01")


def test_omega_monotone():
    assert theta_omega(1, CTX).value > theta_omega(2, CTX).value


@settings(max_examples=20, deadline=None)
@given(st.fractions(min_value=0.05, max_value=20))
def test_omega_against_jacobi_theta(q):
    ctx = PrecisionContext(128)
    with mp.workprec(200):
        x = mpf(q.numerator) / q.denominator
        ref = (mpmath.jtheta(3, 0, mpmath.exp(-mp.pi * x)) - 1) / 2
    w = theta_omega(x, ctx)
    assert abs(w.value - ref) <= ctx.target_abs_err + w.err
    assert w.k_used >= 1


def test_omega_domain():
    with pytest.raises(DomainError):
        theta_omega(0, CTX)


def test_beta_values():
    with mp.workprec(192):
        ref0 = 1 + mp.euler / 2 - mpmath.log(2 * mpmath.sqrt(mp.pi))
    assert abs(keiper_beta(0, CTX) - ref0) < mpf(2) ** -180
    assert mpmath.nstr(keiper_beta(0, CTX), 6) == "0.0230957"
    assert keiper_beta(-1, CTX) == 0
    with pytest.raises(DomainError):
        keiper_beta(-2, CTX)
    betas, errs = keiper_betas(10, CTX)
    assert all(b > e for b, e in zip(betas[1:], errs[1:]))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_xi_derivatives_against_numerical_differentiation(xi12, n):
    assert abs(xi12.xi1[n] - xi_oracle(n)) < mpf(10) ** -45


def test_xi_first_derivative_is_half_lambda1(xi12):
    mp.prec = 256
    lam1 = mp.euler / 2 - mpmath.log(mp.pi) / 2 + 1 - mpmath.log(2)
    assert abs(xi12.xi1[1] - lam1 / 2) <= xi12.err_est[1] + mpf(2) ** -180
    assert mpmath.nstr(xi12.xi1[1], 6) == "0.0115479"


def test_alpha_beta_structure(xi12):
    mp.prec = 256
    assert xi12.alpha[0] == 1
    assert xi12.beta_at(-1) == 0
    for n in range(1, xi12.n_max + 1):
        assert abs(xi12.alpha[n] - (xi12.beta_at(n - 2) + xi12.beta_at(n - 1))) <= mpf(2) ** -200
        assert abs(xi12.xi1[n] - xi12.alpha[n] * math.factorial(n) / 2) <= mpf(2) ** -170 * xi12.xi1[n]
    assert abs(xi12.alpha[3] - (xi12.beta[1] + xi12.beta[2])) <= mpf(2) ** -200


def test_routes_agree(xi12):
    mp.prec = 256
    for n in range(2, xi12.n_max + 1):
        direct = xi12.xi1_direct[n]
        assert abs(direct - xi12.xi1[n]) <= 4 * 2 * xi12.err_est[n] + mpf(2) ** -150


def test_positivity_and_paired_inequalities(xi12):
    mp.prec = 256
    x, e = xi12.xi1, xi12.err_est
    for n in range(1, xi12.n_max + 1):
        assert x[n] > e[n]
    assert x[2] - 2 * x[1] > e[2] + 2 * e[1]
    for m in range(1, 6):
        assert x[2 * m + 2] - x[2 * m + 1] > e[2 * m + 2] + e[2 * m + 1]
    assert x[2] - x[3] > e[2] + e[3]


def test_taylor_series(xi12):
    ser = xi_taylor(6, CTX)
    assert ser.center == 1
    assert ser[0] == 1
    with mp.workprec(192):
        assert abs(ser[1] - (1 + mp.euler / 2 - mpmath.log(2 * mpmath.sqrt(mp.pi)))) < mpf(2) ** -170
    # 2 xi(s) near s = 1 from the series against the oracle at s = 1.2
    with mp.workdps(40):
        s = mpf("1.2")
        ref = s * (s - 1) * mp.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s)
    full = xi_taylor(12, CTX)
    assert abs(full(s) - ref) < mpf(10) ** -12
    assert xi_taylor(0, CTX).coeffs == [1]


def test_precision_ladder(xi12):
    mp.prec = 256
    hi = xi_deriv1(12, CTX.laddered())
    for n in range(1, 13):
        assert abs(hi.xi1[n] - xi12.xi1[n]) <= xi12.err_est[n]


def test_route_disagreement_is_a_hard_error():
    with pytest.raises(ConvergenceError):
        xi_deriv1(4, PrecisionContext(96), agree_factor=0)


def test_errors():
    with pytest.raises(DomainError):
        xi_deriv1(0, CTX)
    with pytest.raises(DomainError):
        keiper_betas(-1, CTX)
