import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf

from likeiper.precision import DomainError, PrecisionContext, PrecisionShortfall
from likeiper.sequences import (
    ConstSeq,
    MissingInputError,
    RouteTag,
    binomial_transform,
    eta_from_gamma,
    eta_from_sigma,
    lambda_closed_forms,
    lehmer_b,
    li_lambda,
    maslanka_decompose,
    s1,
    s2,
    sigma,
)
from likeiper.xi import xi_deriv1
from likeiper.zeta import stieltjes, zeta_derivs0, zeta_int

CTX = PrecisionContext(192)

# Oracle values from contour differentiation of log xi(s) and log((s-1) zeta(s))
# at s = 1 with mpmath at 50 digits; independent of every route below.
LAMBDA_ORACLE = {
    1: "0.02309570896612103381431024790649529162",
    2: "0.09234573522804667038572848619206788677",
    3: "0.2076389205543248037914920466178032070",
    5: "0.5755427144611774524311064054928638336",
    10: "2.279339363193157743693034057368445338",
}
ETA_ORACLE = {
    0: "-0.5772156649015328606065120900824024310",
    1: "0.1875462328403652245972033846054415884",
    2: "-0.05168863203319289380200822308360416345",
    5: "0.001446795204525183140216980422296918530",
    10: "-0.000005666050921040475372307519090024004",
}


@pytest.fixture(scope="module")
def fam():
    N = 30
    zd = zeta_derivs0(N + 1, CTX)
    b = lehmer_b(N, zd, CTX)
    sg = sigma(N + 1, b, CTX)
    g = stieltjes(N + 1, CTX)
    return {
        "zd": zd,
        "b": b,
        "sigma": sg,
        "gamma": g,
        "eta_g": eta_from_gamma(N + 1, g, CTX),
        "eta_s": eta_from_sigma(N + 1, sg, CTX),
        "xi": xi_deriv1(N, CTX),
    }


@pytest.fixture(scope="module")
def lambdas(fam):
    kw = dict(sigmas=fam["sigma"], bs=fam["b"], etas=fam["eta_g"], xi=fam["xi"], ctx=CTX)
    return {r: li_lambda(30, r, **kw) for r in "ABCD"}


# -- ConstSeq and route tags ---------------------------------------------------------

def test_route_tags_closed_set():
    assert len(RouteTag) == 8
    assert RouteTag.from_letter("A") is RouteTag.SIGMA_BINOMIAL
    assert RouteTag.from_letter("d").letter == "D"
    assert RouteTag.ETA_SIGMA.letter is None
    with pytest.raises(ValueError):
        RouteTag.from_letter("E")


def test_constseq_invariants():
    seq = ConstSeq("eta", 0, [1, 2], [0, 0], RouteTag.ETA_SIGMA)
    assert seq.indices == range(0, 2) and seq.end_index == 1 and seq.covers(0, 1)
    with pytest.raises(ValueError):
        ConstSeq("eta", 0, [1, 2], [0], RouteTag.ETA_SIGMA)
    with pytest.raises(ValueError):
        ConstSeq("eta", 0, [1], [-1], RouteTag.ETA_SIGMA)
    with pytest.raises(ValueError):
        ConstSeq("nonsense", 0, [1], [0], RouteTag.ETA_SIGMA)


# -- eta --------------------------------------------------------------------

@pytest.mark.parametrize("k", sorted(ETA_ORACLE))
def test_eta_against_oracle(fam, k):
    mp.prec = 256
    for key in ("eta_g", "eta_s"):
        e = fam[key]
        assert abs(e.at(k) - mpf(ETA_ORACLE[k])) <= e.err_at(k) + mpf(10) ** -36


def test_eta_literature_values(fam):
    mp.prec = 256
    e = fam["eta_s"]
    assert abs(e.at(0) + mp.euler) <= e.err_at(0)
    assert abs(e.at(1) - mpf("0.187546")) < mpf("5e-7")
    for k, ref in ((10, "-5.66605e-6"), (20, "-9.56012e-11"), (30, "-1.61898e-15")):
        assert abs(e.at(k) / mpf(ref) - 1) < mpf("1e-5")


def test_eta_routes_agree(fam):
    mp.prec = 256
    eg, es = fam["eta_g"], fam["eta_s"]
    assert eg.route is RouteTag.GAMMA_LOG_SERIES and es.route is RouteTag.ETA_SIGMA
    for k in range(0, 31):
        assert abs(eg.at(k) - es.at(k)) <= eg.err_at(k) + es.err_at(k)


def test_eta_counts_and_missing_inputs(fam):
    e = eta_from_sigma(5, fam["sigma"], CTX)
    assert list(e.indices) == [0, 1, 2, 3, 4]
    short = ConstSeq("sigma", 1, fam["sigma"].values[:3], fam["sigma"].err_est[:3], RouteTag.LEHMER_RELATION)
    with pytest.raises(MissingInputError):
        eta_from_sigma(10, short, CTX)
    with pytest.raises(MissingInputError):
        eta_from_gamma(40, fam["gamma"], CTX)


def test_eta_sign_alternation_and_monotone_magnitude(fam):
    e = fam["eta_s"]
    for k in e.indices:
        sign = 1 if k % 2 else -1
        assert sign * e.at(k) > e.err_at(k)
        if k:
            assert abs(e.at(k)) < abs(e.at(k - 1))


# -- b and sigma ----------------------------------------------------------------

def test_lehmer_b(fam):
    mp.prec = 256
    b = fam["b"]
    assert abs(b.at(0) - (mpmath.log(2 * mp.pi) - 1)) <= b.err_at(0)
    assert mpmath.nstr(b.at(0), 10) == "0.8378770664"
    assert b.at(1) < 0
    for m in b.indices:
        assert (-1) ** m * b.at(m) > b.err_at(m)


def test_lehmer_sum_identity(fam):
    # sum_{m=2..M} (-1)^(m-1) [mu_{m-1} - zeta(m)/2^m] -> 2 sigma_1
    mp.prec = 256
    b = fam["b"]
    partial = []
    total = mpf(0)
    for m in range(2, 31):
        mu = abs(b.at(m - 1))
        total += (-1) ** (m - 1) * (mu - zeta_int(m, CTX) / mpf(2) ** m)
        partial.append(total)
    target = 2 * fam["sigma"].at(1)
    # the terms shrink geometrically; the last increment bounds the tail
    assert abs(partial[-1] - target) <= 2 * abs(partial[-1] - partial[-2]) + mpf(10) ** -40


def test_sigma_values(fam):
    mp.prec = 256
    s = fam["sigma"]
    lam1, lam2 = lambda_closed_forms(fam["gamma"][1], CTX)
    assert abs(s.at(1) - lam1) <= s.err_at(1)
    assert abs(s.at(2) - (2 * lam1 - lam2)) <= s.err_at(2) + 2 * fam["gamma"].err_est[1]
    assert mpmath.nstr(s.at(2), 6) == "-0.0461543"
    assert s.at(2) < 0 and s.at(3) < 0


def test_sigma_26_magnitude():
    ctx = PrecisionContext(192)
    s = sigma(26, lehmer_b(25, zeta_derivs0(26, ctx), ctx), ctx)
    # printed in the literature as -0.0000 0000 0000 0000 0000 0000 0000 01, i.e. of order 1e-30
    assert s.at(26) < 0
    assert mpf(10) ** -30 <= abs(s.at(26)) < 2 * mpf(10) ** -30


def test_sigma_decay_beyond_five(fam):
    s = fam["sigma"]
    for m in range(6, s.end_index + 1):
        assert abs(s.at(m)) < abs(s.at(m - 1))


# -- lambda --------------------------------------------------------------------

@pytest.mark.parametrize("n", sorted(LAMBDA_ORACLE))
def test_lambda_against_oracle(lambdas, n):
    mp.prec = 256
    for r, seq in lambdas.items():
        assert abs(seq.at(n) - mpf(LAMBDA_ORACLE[n])) <= seq.err_at(n) + mpf(10) ** -36, r


def test_lambda_closed_forms(fam, lambdas):
    mp.prec = 256
    lam1, lam2 = lambda_closed_forms(fam["gamma"][1], CTX)
    assert mpmath.nstr(lam1, 6) == "0.0230957"
    assert mpmath.nstr(lam2, 6) == "0.0923457"
    for seq in lambdas.values():
        assert abs(seq.at(1) - lam1) <= seq.err_at(1) + mpf(2) ** -180
        assert abs(seq.at(2) - lam2) <= seq.err_at(2) + 2 * fam["gamma"].err_est[1] + mpf(2) ** -180


def test_lambda_route_tags(lambdas):
    assert {r: s.route for r, s in lambdas.items()} == {
        "A": RouteTag.SIGMA_BINOMIAL, "B": RouteTag.LEHMER_ROUTE,
        "C": RouteTag.ETA_ROUTE, "D": RouteTag.BELL_XI_ROUTE}


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 30), st.sampled_from(["AB", "AC", "AD", "BC", "BD", "CD"]))
def test_cross_route_agreement(lambdas, n, pair):
    mp.prec = 256
    a, b = (lambdas[c] for c in pair)
    assert abs(a.at(n) - b.at(n)) <= a.err_at(n) + b.err_at(n)
    assert a.at(n) > a.err_at(n)


def test_lambda_missing_inputs(fam):
    with pytest.raises(MissingInputError):
        li_lambda(5, "A", ctx=CTX)
    with pytest.raises(MissingInputError):
        li_lambda(40, "B", bs=fam["b"], ctx=CTX)
    with pytest.raises(ValueError):
        li_lambda(5, RouteTag.ETA_SIGMA, etas=fam["eta_g"], ctx=CTX)
    with pytest.raises(DomainError):
        li_lambda(0, "A", sigmas=fam["sigma"], ctx=CTX)


def test_route_d_cancellation_detector():
    ctx = PrecisionContext(64)
    xi = xi_deriv1(30, ctx)
    with pytest.raises(PrecisionShortfall):
        li_lambda(30, "D", xi=xi, ctx=ctx)


def test_binomial_transform_recovers_sigma(fam, lambdas):
    mp.prec = 256
    vals, errs = binomial_transform(lambdas["A"], CTX)
    s = fam["sigma"]
    for n in range(1, 31):
        assert abs(vals[n - 1] - s.at(n)) <= 2 * (errs[n - 1] + s.err_at(n))


def test_binomial_transform_is_an_exact_involution():
    sig = [Fraction(1, k + 2) * (-1) ** (k // 2) for k in range(12)]
    seq = ConstSeq("sigma", 1, sig, [0] * 12, RouteTag.LEHMER_RELATION)
    lam = [-sum((-1) ** m * math.comb(n, m) * sig[m - 1] for m in range(1, n + 1)) for n in range(1, 13)]
    back, _ = binomial_transform(ConstSeq("lambda", 1, lam, [0] * 12, RouteTag.SIGMA_BINOMIAL))
    assert back == sig


# -- S1, S2 and the trend/oscillation split -------------------------------------------

def test_s2_examples():
    eta = ConstSeq("eta", 0, [Fraction(-1, 2), Fraction(1, 5)], [0, 0], RouteTag.ETA_SIGMA)
    assert s2(1, eta) == Fraction(1, 2)
    assert s2(2, eta) == -2 * eta.at(0) - eta.at(1)
    with pytest.raises(DomainError):
        s2(0, eta)


def test_s1_small_cases():
    mp.prec = 256
    assert s1(1, CTX)[0] == 0
    v, size = s1(2, CTX)
    assert abs(v - (1 - mpf(1) / 4) * zeta_int(2, CTX)) < mpf(2) ** -180
    assert size >= abs(v)


def test_maslanka_decomposition(fam, lambdas):
    mp.prec = 256
    trend, osc = maslanka_decompose(30, fam["eta_g"], CTX)
    assert trend.family == "trend" and osc.family == "s2"
    assert abs(osc.at(1) - mp.euler) <= osc.err_at(1) + mpf(2) ** -180
    for m in range(1, 31):
        assert abs(trend.at(m) + osc.at(m) - lambdas["C"].at(m)) <= mpf(2) ** -190 * (1 + abs(osc.at(m)))
        assert abs(osc.at(m) - s2(m, fam["eta_g"])) <= mpf(2) ** -190 * (1 + abs(osc.at(m)))


def test_trend_monotonicity_observed(fam):
    # The printed trend decreases for m = 1..3 and increases from m = 3 on.
    mp.prec = 256
    trend, _ = maslanka_decompose(30, fam["eta_g"], CTX)
    t = [trend.at(m) for m in range(1, 31)]
    assert t[1] < t[0] and t[2] < t[1]
    assert all(t[i] > t[i - 1] for i in range(3, 30))
    assert mpmath.nstr(t[0], 6) == "-0.55412"
