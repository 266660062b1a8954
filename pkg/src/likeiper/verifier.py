"""Identity, inequality, sign and conjecture checks over the computed constants.

Every check returns :class:`CheckResult` records.  Equality checks pass when
``|residual| <= tolerance`` with tolerance four times the combined
propagated error; inequality checks put the margin ``lhs - rhs`` in
``residual`` and pass only when it exceeds the combined error estimate.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Sequence

import mpmath
from mpmath import mp, mpf

from .combinatorics import bell_complete, bell_complete_all, bell_partial_table, stirling2
from .precision import PrecisionContext, bits_to_err
from .sequences import (
    ConstSeq,
    RouteTag,
    eta_from_gamma,
    eta_from_sigma,
    lambda_closed_forms,
    lehmer_b,
    li_lambda,
    maslanka_decompose,
    s2,
    sigma,
)
from .xi import XiDerivSeq, xi_deriv1
from .zeta import StieltjesSeq, delta, stieltjes, zeta_deriv0_limit, zeta_derivs0, zeta_int, zeta_real

__all__ = [
    "CheckResult",
    "ConjectureScan",
    "Bundle",
    "build_bundle",
    "check_bell_xi_sigma",
    "check_bell_gamma_eta",
    "check_bell_b_zeta",
    "check_lambda_stirling",
    "check_s2_bell",
    "check_inequalities",
    "check_cross_routes",
    "check_spot_values",
    "check_magnitude_decay",
    "conjecture_scan",
    "sign_report",
    "run_suite",
    "sort_results",
]

EQUALITY = "equality"
# the printed trend formula decreases from m = 1 to m = 3 and increases afterwards
TREND_INCREASING_FROM = 4
INEQUALITY = "inequality"
TOL_FACTOR = 4
# notes prefix for checks whose residual is set by series truncation, not precision
TRUNCATED = "truncation-limited"


@dataclass
class CheckResult:
    """Outcome of one check.

    ``kind`` is ``"equality"`` or ``"inequality"``; together with
    ``residual`` and ``tolerance`` it determines ``passed``.
    """

    check_id: str
    lhs: object
    rhs: object
    residual: mpf
    tolerance: mpf
    passed: bool
    kind: str = EQUALITY
    notes: str = ""

    @classmethod
    def equality(cls, check_id, lhs, rhs, err, notes=""):
        residual = lhs - rhs
        tol = TOL_FACTOR * err
        return cls(check_id, lhs, rhs, residual, tol, bool(abs(residual) <= tol), EQUALITY, notes)

    @classmethod
    def inequality(cls, check_id, lhs, rhs, err, notes=""):
        """lhs > rhs with margin beyond ``err``."""
        margin = lhs - rhs
        return cls(check_id, lhs, rhs, margin, err, bool(margin > err), INEQUALITY, notes)

    def recompute_passed(self) -> bool:
        if self.kind == EQUALITY:
            return bool(abs(self.residual) <= self.tolerance)
        return bool(self.residual > self.tolerance)


@dataclass
class ConjectureScan:
    """Measurements around |eta_k| <= alpha 3^-(k+1).

    Attributes
    ----------
    k_range : range
    ratio : list
        eta_k / (-1/3)^(k+1) for k in ``k_range``.
    refined_ratio : list
        eta_k / [(-1/3)^(k+1) zeta(k+1)].
    best_alpha : mpf
        max over k >= 1 of |eta_k| 3^(k+1).
    best_alpha_from_2 : mpf
        Same maximum restricted to k >= 2.
    violations : list of int
        k with |eta_k| 3^(k+1) > 1.
    smallest_clean_N : int
        Smallest N such that no k > N in range is a violation; equal to the
        last k when every k violates (see ``has_clean_tail``).
    bound_values : dict
        alpha -> lower bound (n/2)(gamma + log pi - 1) + (1-alpha)[(3/2)^n - 1], n = 1..n_bound.
    bound_positive_at_best : list of int
        n for which the bound is positive at ``best_alpha``.
    """

    k_range: range
    ratio: list
    refined_ratio: list
    best_alpha: mpf
    best_alpha_from_2: mpf
    violations: list
    smallest_clean_N: int
    bound_values: dict
    bound_positive_at_best: list
    trend_constant: mpf

    @property
    def has_clean_tail(self) -> bool:
        """True when some k in range lies beyond the last violation."""
        return self.smallest_clean_N < self.k_range[-1]


@dataclass
class Bundle:
    """Every sequence the suite needs, computed once at a common precision."""

    ctx: PrecisionContext
    n_max: int
    zd0: list
    gammas: StieltjesSeq
    b: ConstSeq
    sigma: ConstSeq
    eta_gamma: ConstSeq
    eta_sigma: ConstSeq
    xi: XiDerivSeq
    lambdas: dict = field(default_factory=dict)


def build_bundle(n_max: int, ctx: PrecisionContext | None = None, routes=("A", "B", "C", "D")) -> Bundle:
    """Compute the families needed by :func:`run_suite` up to ``n_max``.

    Ranges are widened where the fixed-range inequalities need it: sigma
    and b reach index 21, xi derivatives index 12.
    """
    ctx = ctx or PrecisionContext.for_range(n_max)
    N = max(n_max, 21)
    zd0 = zeta_derivs0(N + 1, ctx)
    gammas = stieltjes(N + 1, ctx)
    b = lehmer_b(N, zd0, ctx)
    sig = sigma(N + 1, b, ctx)
    eta_g = eta_from_gamma(N + 1, gammas, ctx)
    eta_s = eta_from_sigma(N + 1, sig, ctx)
    xi = xi_deriv1(max(n_max, 12), ctx)
    bundle = Bundle(ctx, n_max, zd0, gammas, b, sig, eta_g, eta_s, xi)
    for r in routes:
        tag = RouteTag.from_letter(r)
        bundle.lambdas[tag.letter] = li_lambda(
            max(n_max, 3), tag, sigmas=sig, bs=b, etas=eta_g, xi=xi, ctx=ctx)
    return bundle


def _floor(ctx):
    return bits_to_err(ctx.guard_bits - 8)


def _bell_with_err(n, xs, errs, ctx):
    """Y_n(xs) and a bound on its error from per-argument errors ``errs``."""
    val = bell_complete(n, xs)
    base = bell_complete(n, [abs(x) for x in xs])
    up = bell_complete(n, [abs(x) + e for x, e in zip(xs, errs)])
    return val, (up - base) + base * _floor(ctx)


# -- Bell identity checks ---------------------------------------------------

def check_bell_xi_sigma(n_max: int, sigmas: ConstSeq, xi: XiDerivSeq, ctx=None) -> list[CheckResult]:
    """Y_n(-sigma_1, -1! sigma_2, ..., -(n-1)! sigma_n) = 2 (-1)^n xi^(n)(1)."""
    ctx = ctx or PrecisionContext.for_range(n_max)
    out = []
    with ctx.workprec(32):
        xs = [-math.factorial(j - 1) * sigmas.at(j) for j in range(1, n_max + 1)]
        es = [math.factorial(j - 1) * sigmas.err_at(j) for j in range(1, n_max + 1)]
        for n in range(1, n_max + 1):
            lhs, e = _bell_with_err(n, xs[:n], es[:n], ctx)
            sign = 1 if n % 2 == 0 else -1
            rhs = 2 * sign * xi.xi1[n]
            out.append(CheckResult.equality(f"bell_xi_sigma_n{n}", lhs, rhs, e + 2 * xi.err_est[n]))
    return out


def check_bell_gamma_eta(m_max: int, gammas: StieltjesSeq, etas: ConstSeq, ctx=None) -> list[CheckResult]:
    """Y_m(-eta_0, -1! eta_1, ..., -(m-1)! eta_{m-1}) = (-1)^(m-1) m gamma_{m-1}."""
    ctx = ctx or PrecisionContext.for_range(m_max)
    out = []
    with ctx.workprec(32):
        xs = [-math.factorial(j) * etas.at(j) for j in range(m_max)]
        es = [math.factorial(j) * etas.err_at(j) for j in range(m_max)]
        for m in range(1, m_max + 1):
            lhs, e = _bell_with_err(m, xs[:m], es[:m], ctx)
            g = m * gammas.values[m - 1]
            rhs = g if m % 2 else -g
            out.append(CheckResult.equality(
                f"bell_gamma_eta_m{m}", lhs, rhs, e + m * gammas.err_est[m - 1],
                notes=f"eta route: {etas.route.value}"))
    return out


def check_bell_b_zeta(m_max: int, bs: ConstSeq, zd0, gammas: StieltjesSeq | None = None, ctx=None,
                      series_terms: int = 40) -> list[CheckResult]:
    """Y_m(0! b_0, ..., (m-1)! b_{m-1}) = 2 [m zeta^(m-1)(0) - zeta^(m)(0)].

    With ``gammas`` the same Bell values are compared with the truncated
    series 2 (-1)^(m+1) sum_p (m gamma_{p+m-1} + gamma_{p+m})/p!, and the
    sign consequence of b_1 < 0,
    2 [zeta(0) - zeta'(0)]^2 > 2 zeta'(0) - zeta''(0), is checked.
    """
    ctx = ctx or PrecisionContext.for_range(m_max)
    out = []
    with ctx.workprec(32):
        xs = [math.factorial(j) * bs.at(j) for j in range(m_max)]
        es = [math.factorial(j) * bs.err_at(j) for j in range(m_max)]
        for m in range(1, m_max + 1):
            lhs, e = _bell_with_err(m, xs[:m], es[:m], ctx)
            fm = math.factorial(m)
            rhs = 2 * fm * (zd0[m - 1].shifted - zd0[m].shifted)
            rerr = 2 * fm * (zd0[m - 1].shifted_err + zd0[m].shifted_err)
            out.append(CheckResult.equality(f"bell_b_zeta_m{m}", lhs, rhs, e + rerr))
            if gammas is not None and len(gammas) > m + series_terms:
                acc = mpf(0)
                err = mpf(0)
                for p in range(series_terms + 1):
                    fp = math.factorial(p)
                    acc += (m * gammas.values[p + m - 1] + gammas.values[p + m]) / fp
                    err += (m * gammas.err_est[p + m - 1] + gammas.err_est[p + m]) / fp
                last = abs(m * gammas.values[series_terms + m - 1] + gammas.values[series_terms + m])
                tail = 2 * last / math.factorial(series_terms)
                srhs = 2 * acc if m % 2 else -2 * acc
                out.append(CheckResult.equality(
                    f"bell_b_zeta_series_m{m}", lhs, srhs, e + 2 * (err + tail),
                    notes=f"{series_terms + 1} series terms; tail estimate {mpmath.nstr(2 * tail, 3)}"))
        z0, z1, z2 = zd0[0], zd0[1], zd0[2]
        lhs = 2 * (z0.value - z1.value) ** 2
        rhs = 2 * z1.value - z2.value
        err = 8 * abs(z0.value - z1.value) * (z0.err_est + z1.err_est) + 2 * z1.err_est + z2.err_est
        out.append(CheckResult.inequality("lehmer_b1_negative_corollary", lhs, rhs, err))
    return out


def check_lambda_stirling(n_max: int, sigmas: ConstSeq, lam_a: ConstSeq | None = None, ctx=None) -> list[CheckResult]:
    """lambda_n from partial Bell polynomials and Stirling numbers against route A.

    lambda_n = sum_m C(n,m) (-1)^(m+1)/(m-1)! sum_l B_{m,l}(-sigma_1, -1! sigma_2, ...)
               sum_{k=1..l} (-1)^k (k-1)! S(l,k).

    The alternating power sums behind this formula satisfy
    sum_j C(k,j) (-1)^j j^l = (-1)^k k! S(l,k); the inner Stirling sum is
    therefore -1 for l = 1 and 0 otherwise.  The value obtained with the
    sign (-1)^l in place of (-1)^k is recorded in the notes for comparison.
    """
    ctx = ctx or PrecisionContext.for_range(n_max)
    if lam_a is None:
        lam_a = li_lambda(n_max, "A", sigmas=sigmas, ctx=ctx)
    out = []
    with ctx.workprec(32):
        xs = [-math.factorial(j - 1) * sigmas.at(j) for j in range(1, n_max + 1)]
        T = bell_partial_table(n_max, xs)
        Tabs = bell_partial_table(n_max, [abs(x) for x in xs])
        Tup = bell_partial_table(
            n_max, [abs(x) + math.factorial(j) * sigmas.err_at(j + 1) for j, x in enumerate(xs)])
        stir = [sum((-1) ** k * math.factorial(k - 1) * stirling2(l, k) for k in range(1, l + 1))
                for l in range(n_max + 1)]
        stir_printed = [(-1) ** l * sum(math.factorial(k - 1) * stirling2(l, k) for k in range(1, l + 1))
                        for l in range(n_max + 1)]
        for n in range(1, n_max + 1):
            val = mpf(0)
            alt = mpf(0)
            err = mpf(0)
            for m in range(1, n + 1):
                w = mpf(math.comb(n, m)) / math.factorial(m - 1) * (1 if m % 2 else -1)
                inner = sum(T[m][l] * stir[l] for l in range(1, m + 1))
                inner_alt = sum(T[m][l] * stir_printed[l] for l in range(1, m + 1))
                ierr = sum(abs(stir[l]) * (Tup[m][l] - Tabs[m][l]) for l in range(1, m + 1))
                val += w * inner
                alt += w * inner_alt
                err += abs(w) * ierr
            note = f"with (-1)^l sign: {mpmath.nstr(alt, 15)}"
            out.append(CheckResult.equality(
                f"lambda_stirling_n{n}", val, lam_a.at(n), err + lam_a.err_at(n) + abs(val) * _floor(ctx),
                notes=note))
    return out


def check_s2_bell(n_max: int, etas: ConstSeq, ctx=None) -> list[CheckResult]:
    """S_2(n) from the double Bell sum against -sum_m C(n,m) eta_{m-1}.

    S_2(n) = sum_m C(n,m)/(m-1)! sum_{j<m} C(m-1,j) Y^-_{m-j} Y_j, with
    Y_j = Y_j(eta_0, 1! eta_1, ...) and Y^-_j = Y_j(-eta_0, -1! eta_1, ...).
    For n = 1 this is Y^-_1 Y_0 = -eta_0.
    """
    ctx = ctx or PrecisionContext.for_range(n_max)
    out = []
    with ctx.workprec(32):
        plus = [math.factorial(j) * etas.at(j) for j in range(n_max)]
        minus = [-x for x in plus]
        errs = [math.factorial(j) * etas.err_at(j) for j in range(n_max)]
        Y = bell_complete_all(n_max, plus)
        Ym = bell_complete_all(n_max, minus)
        A = bell_complete_all(n_max, [abs(x) for x in plus])
        Aup = bell_complete_all(n_max, [abs(x) + e for x, e in zip(plus, errs)])
        for n in range(1, n_max + 1):
            val = mpf(0)
            err = mpf(0)
            for m in range(1, n + 1):
                w = mpf(math.comb(n, m)) / math.factorial(m - 1)
                for j in range(m):
                    c = math.comb(m - 1, j)
                    val += w * c * Ym[m - j] * Y[j]
                    err += w * c * (Aup[m - j] * Aup[j] - A[m - j] * A[j] + A[m - j] * A[j] * _floor(ctx))
            direct = s2(n, etas)
            derr = sum(math.comb(n, m) * etas.err_at(m - 1) for m in range(1, n + 1))
            out.append(CheckResult.equality(f"s2_bell_n{n}", val, direct, err + derr))
    return out


# -- inequalities -----------------------------------------------------------

def check_inequalities(sigmas: ConstSeq, bs: ConstSeq, xi: XiDerivSeq, lambdas: ConstSeq,
                       ctx=None, n_range: int = 20, pair_m: int = 5, cauchy_r="1.5") -> list[CheckResult]:
    """The proved inequalities, evaluated with margins against error estimates."""
    ctx = ctx or PrecisionContext.for_range(n_range)
    out = []
    fl = _floor(ctx)
    with ctx.workprec(32):
        for n in range(1, n_range + 1):
            z = zeta_int(n + 1, ctx)
            rhs = 1 - (1 - mpf(2) ** -(n + 1)) * z
            out.append(CheckResult.inequality(
                f"ineq_sigma_lower_n{n}", sigmas.at(n + 1), rhs, sigmas.err_at(n + 1) + 2 * fl))
            lhs = z - 1 - (1 + (-1) ** (n + 1)) * z / mpf(2) ** (n + 1)
            out.append(CheckResult.inequality(
                f"ineq_zeta_b_n{n}", lhs, bs.at(n), bs.err_at(n) + 2 * fl))
        x, xe = xi.xi1, xi.err_est
        out.append(CheckResult.inequality("ineq_xi2_gt_2xi1", x[2], 2 * x[1], xe[2] + 2 * xe[1]))
        for m in range(1, pair_m + 1):
            out.append(CheckResult.inequality(
                f"ineq_xi_pair_m{m}", x[2 * m + 2], x[2 * m + 1], xe[2 * m + 2] + xe[2 * m + 1]))
        out.append(CheckResult.inequality("ineq_xi2_gt_xi3", x[2], x[3], xe[2] + xe[3]))
        for n in range(1, xi.n_max + 1):
            out.append(CheckResult.inequality(f"xi_positive_n{n}", x[n], 0, xe[n]))
        out.append(CheckResult.inequality("ineq_sigma2_negative", 0, sigmas.at(2), sigmas.err_at(2)))
        L, Le = lambdas.at, lambdas.err_at
        out.append(CheckResult.inequality("ineq_lambda1_positive", L(1), 0, Le(1)))
        out.append(CheckResult.inequality("ineq_lambda2_gt_lambda1", L(2), L(1), Le(2) + Le(1)))
        out.append(CheckResult.inequality("ineq_lambda3_gt_lambda2", L(3), L(2), Le(3) + Le(2)))
        out.append(CheckResult.inequality("ineq_lambda2_gt_2lambda1", L(2), 2 * L(1), Le(2) + 2 * Le(1)))
        r = mpf(cauchy_r)
        bound_c = 2 * (r + 1) * zeta_real(r, ctx)
        for m in range(1, bs.end_index + 2):
            mu = abs(bs.at(m - 1))
            rhs = bound_c / r ** m
            out.append(CheckResult.inequality(
                f"ineq_cauchy_m{m}", rhs, mu / m, bs.err_at(m - 1) / m + rhs * fl,
                notes=f"r = {cauchy_r}"))
    return out


# -- cross-route and spot checks ---------------------------------------------

def check_cross_routes(bundle: Bundle, n_max: int | None = None) -> list[CheckResult]:
    """Agreement between independent routes for lambda, eta, zeta^(n)(0) and delta."""
    ctx = bundle.ctx
    n_max = n_max or bundle.n_max
    out = []
    with ctx.workprec(32):
        letters = sorted(bundle.lambdas)
        for n in range(1, n_max + 1):
            worst = None
            for i, a in enumerate(letters):
                for c in letters[i + 1:]:
                    A, C = bundle.lambdas[a], bundle.lambdas[c]
                    gap = abs(A.at(n) - C.at(n))
                    tol = A.err_at(n) + C.err_at(n)
                    score = gap / tol if tol else mpf("inf")
                    if worst is None or score > worst[0]:
                        worst = (score, a, c, A.at(n), C.at(n), tol)
            if worst is not None:
                _, a, c, va, vc, tol = worst
                r = CheckResult(f"lambda_routes_n{n}", va, vc, va - vc, tol, bool(abs(va - vc) <= tol),
                                EQUALITY, f"worst pair {a}-{c} of routes {''.join(letters)}")
                out.append(r)
            ref = bundle.lambdas[letters[0]]
            out.append(CheckResult.inequality(f"lambda_positive_n{n}", ref.at(n), 0, ref.err_at(n),
                                              notes=f"route {letters[0]}"))
        eg, es = bundle.eta_gamma, bundle.eta_sigma
        for k in range(0, min(eg.end_index, es.end_index, n_max) + 1):
            out.append(CheckResult.equality(f"eta_routes_k{k}", eg.at(k), es.at(k),
                                            eg.err_at(k) + es.err_at(k)))
        for n in range(0, min(6, n_max) + 1):
            a = bundle.zd0[n]
            b = zeta_deriv0_limit(n, 64, ctx)
            out.append(CheckResult.equality(f"zeta_deriv0_methods_n{n}", a.value, b.value,
                                            a.err_est + b.err_est))
        d_ap = delta(min(6, n_max), ctx)
        d_st = delta(min(6, n_max), ctx, route="stieltjes_series")
        for n in range(len(d_ap)):
            out.append(CheckResult.equality(f"delta_routes_n{n}", d_ap[n], d_st[n],
                                            d_ap.err_est[n] + d_st.err_est[n]))
        gam = bundle.gammas
        out.append(CheckResult.equality("gamma0_euler", gam[0], +mp.euler, gam.err_est[0] + _floor(ctx)))
        # gamma = sum_n [zeta^(n)(0)/n! + 1], truncated
        tot = sum(d.shifted for d in bundle.zd0)
        terr = sum(d.shifted_err for d in bundle.zd0) + 2 * abs(bundle.zd0[-1].shifted)
        out.append(CheckResult.equality("gamma_sum_identity", tot, +mp.euler, terr,
                                        notes=f"{TRUNCATED}: {len(bundle.zd0)} terms"))
        xi = bundle.xi
        out.append(CheckResult.equality("xi1_equals_sigma1_half", 2 * xi.xi1[1], bundle.sigma.at(1),
                                        2 * xi.err_est[1] + bundle.sigma.err_at(1)))
    return out


def check_spot_values(bundle: Bundle) -> list[CheckResult]:
    ctx = bundle.ctx
    out = []
    with ctx.workprec(32):
        z0, z1 = bundle.zd0[0], bundle.zd0[1]
        fl = _floor(ctx)
        out.append(CheckResult.equality("spot_zeta0", zeta_real(0, ctx), mpf(-1) / 2, fl))
        out.append(CheckResult.equality("spot_zeta0_abel_plana", z0.value, mpf(-1) / 2, z0.err_est + fl))
        out.append(CheckResult.equality("spot_zeta1_0", z1.value, -mpmath.log(2 * mp.pi) / 2, z1.err_est + fl))
        out.append(CheckResult.equality("spot_b0", bundle.b.at(0), mpmath.log(2 * mp.pi) - 1,
                                        bundle.b.err_at(0) + fl))
        lam = bundle.lambdas.get("A") or next(iter(bundle.lambdas.values()))
        out.append(CheckResult.equality("spot_2lambda1", 2 * lam.at(1), 2 + mp.euler - mpmath.log(4 * mp.pi),
                                        2 * lam.err_at(1) + fl))
        lam1, lam2 = lambda_closed_forms(bundle.gammas[1], ctx)
        for letter, seq in sorted(bundle.lambdas.items()):
            out.append(CheckResult.equality(f"lambda1_closed_form_{letter}", seq.at(1), lam1,
                                            seq.err_at(1) + fl))
            out.append(CheckResult.equality(f"lambda2_closed_form_{letter}", seq.at(2), lam2,
                                            seq.err_at(2) + 2 * bundle.gammas.err_est[1] + fl))
        out.append(CheckResult.inequality("spot_zeta1_0_plus_1_positive", z1.value + 1, 0, z1.err_est))
        z2 = bundle.zd0[2]
        out.append(CheckResult.inequality("spot_zeta2_0_half_plus_1_negative", 0, z2.value / 2 + 1,
                                          z2.err_est / 2))
    return out


# -- sign structure -----------------------------------------------------------

SIGMA_PATTERN_LITERATURE = "--++---"


def sign_report(b: ConstSeq, etas: ConstSeq, sigmas: ConstSeq, lambdas: ConstSeq | None = None) -> list[CheckResult]:
    """Sign alternation of b and eta, the observed sigma pattern, positivity of lambda."""
    out = []
    for n in b.indices:
        v, e = b.at(n), b.err_at(n)
        if n % 2 == 0:
            out.append(CheckResult.inequality(f"sign_b_n{n}", v, 0, e, notes="expected positive"))
        else:
            out.append(CheckResult.inequality(f"sign_b_n{n}", 0, v, e, notes="expected negative"))
    for k in etas.indices:
        v, e = etas.at(k), etas.err_at(k)
        if k % 2 == 1:
            out.append(CheckResult.inequality(f"sign_eta_k{k}", v, 0, e, notes="expected positive"))
        else:
            out.append(CheckResult.inequality(f"sign_eta_k{k}", 0, v, e, notes="expected negative"))
    out.append(CheckResult.inequality("sign_sigma1_positive", sigmas.at(1), 0, sigmas.err_at(1)))
    out.append(CheckResult.inequality("sign_sigma2_negative", 0, sigmas.at(2), sigmas.err_at(2)))
    if sigmas.end_index >= 3:
        out.append(CheckResult.inequality("sign_sigma3_negative", 0, sigmas.at(3), sigmas.err_at(3)))
    observed = "".join(
        "+" if sigmas.at(m) > sigmas.err_at(m) else "-" if sigmas.at(m) < -sigmas.err_at(m) else "?"
        for m in range(2, sigmas.end_index + 1))
    prefix = SIGMA_PATTERN_LITERATURE
    k = min(len(prefix), len(observed))
    mismatches = [i + 2 for i in range(k) if observed[i] != prefix[i]]
    agreed = min(6, k)
    head_mismatch = sum(1 for i in range(agreed) if observed[i] != prefix[i])
    note = (f"observed from sigma_2: {observed}; literature prefix {prefix}; "
            f"differs at sigma index {mismatches}" if mismatches else
            f"observed from sigma_2: {observed}; literature prefix {prefix}")
    out.append(CheckResult("sign_sigma_pattern", observed[:agreed], prefix[:agreed], mpf(head_mismatch), mpf(0),
                           head_mismatch == 0, EQUALITY, note))
    return out


# -- conjecture scan ------------------------------------------------------------

def conjecture_scan(etas: ConstSeq, alpha_grid: Sequence = ("0.5", "0.9", "1"), n_bound: int = 100,
                    ctx=None) -> ConjectureScan:
    """Tabulate eta_k against (-1/3)^(k+1) and evaluate the resulting lambda lower bound."""
    ctx = ctx or PrecisionContext.for_range(etas.end_index)
    with ctx.workprec(32):
        ks = range(1, etas.end_index + 1)
        ratio, refined, scaled = [], [], []
        for k in ks:
            base = (mpf(-1) / 3) ** (k + 1)
            ratio.append(etas.at(k) / base)
            refined.append(etas.at(k) / (base * zeta_int(k + 1, ctx)))
            scaled.append(abs(etas.at(k)) * mpf(3) ** (k + 1))
        best = max(scaled)
        best2 = max(scaled[1:]) if len(scaled) > 1 else mpf(0)
        violations = [k for k, s in zip(ks, scaled) if s > 1]
        clean = max(violations) if violations else 0
        c = mp.euler + mpmath.log(mp.pi) - 1

        def bound(n, a):
            return n * c / 2 + (1 - a) * ((mpf(3) / 2) ** n - 1)

        bounds = {str(a): [bound(n, mpf(a)) for n in range(1, n_bound + 1)] for a in alpha_grid}
        positive = [n for n in range(1, n_bound + 1) if bound(n, best) > 0]
    return ConjectureScan(ks, ratio, refined, best, best2, violations, clean, bounds, positive, c)


# -- suite --------------------------------------------------------------------

def _natural_key(check_id: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", check_id)]


def sort_results(results):
    return sorted(results, key=lambda r: _natural_key(r.check_id))


def run_suite(n_max: int, ctx: PrecisionContext | None = None, bundle: Bundle | None = None) -> list[CheckResult]:
    """Every check at index range ``n_max``, sorted by check id."""
    ctx = ctx or PrecisionContext.for_range(n_max)
    bundle = bundle or build_bundle(n_max, ctx)
    results = []
    results += check_bell_xi_sigma(n_max, bundle.sigma, bundle.xi, ctx)
    results += check_bell_gamma_eta(n_max, bundle.gammas, bundle.eta_sigma, ctx)
    g_long = stieltjes(n_max + 41, ctx)
    results += check_bell_b_zeta(n_max, bundle.b, bundle.zd0, g_long, ctx)
    results += check_lambda_stirling(n_max, bundle.sigma, bundle.lambdas.get("A"), ctx)
    results += check_s2_bell(n_max, bundle.eta_sigma, ctx)
    lam = bundle.lambdas.get("A") or next(iter(bundle.lambdas.values()))
    results += check_inequalities(bundle.sigma, bundle.b, bundle.xi, lam, ctx)
    results += check_cross_routes(bundle)
    results += check_spot_values(bundle)
    results += sign_report(bundle.b, bundle.eta_sigma, bundle.sigma, lam)
    trend, osc = maslanka_decompose(n_max, bundle.eta_gamma, ctx)
    with ctx.workprec(32):
        for m in range(1, n_max + 1):
            results.append(CheckResult.equality(
                f"maslanka_s2_m{m}", osc.at(m), s2(m, bundle.eta_gamma), osc.err_at(m)))
            if "C" in bundle.lambdas:
                results.append(CheckResult.equality(
                    f"maslanka_sum_m{m}", trend.at(m) + osc.at(m), bundle.lambdas["C"].at(m),
                    trend.err_at(m) + osc.err_at(m)))
            if m >= TREND_INCREASING_FROM:
                results.append(CheckResult.inequality(
                    f"maslanka_trend_increasing_m{m}", trend.at(m), trend.at(m - 1),
                    trend.err_at(m) + trend.err_at(m - 1)))
    results += check_magnitude_decay(bundle.sigma, bundle.eta_sigma)
    return sort_results(results)


def check_magnitude_decay(sigmas: ConstSeq, etas: ConstSeq, sigma_from: int = 6) -> list[CheckResult]:
    """|sigma_m| decreasing for m >= ``sigma_from`` and |eta_k| decreasing, over the computed range.

    Both are empirical statements about the computed values, not proofs.
    """
    out = []
    for m in range(sigma_from, sigmas.end_index + 1):
        out.append(CheckResult.inequality(
            f"sigma_decay_m{m}", abs(sigmas.at(m - 1)), abs(sigmas.at(m)),
            sigmas.err_at(m - 1) + sigmas.err_at(m), notes="empirical"))
    for k in range(etas.start_index + 1, etas.end_index + 1):
        out.append(CheckResult.inequality(
            f"eta_magnitude_decreasing_k{k}", abs(etas.at(k - 1)), abs(etas.at(k)),
            etas.err_at(k - 1) + etas.err_at(k), notes="empirical"))
    return out
