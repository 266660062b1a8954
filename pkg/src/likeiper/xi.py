"""Derivatives of the Riemann xi function at s = 1 from theta-sum integrals.

With ``omega(x) = sum_{k>=1} exp(-pi k^2 x)`` the Taylor coefficients of
``2 xi(s) = sum alpha_n (s-1)^n`` are

    alpha_0 = 1,   alpha_n = beta_{n-2} + beta_{n-1},   beta_{-1} = 0,
    beta_0  = 1 + gamma/2 - log(2 sqrt(pi)),
    beta_n  = (1/n!) int_1^inf omega(x) log^n(sqrt x) (sqrt x + (-1)^n) dx/x,

and ``xi^(n)(1) = alpha_n n!/2``.  A second route integrates the direct
formula

    xi^(n)(1) = (n/2) int_1^inf omega(x) log^(n-2)(sqrt x)/x
                [(n-1)(sqrt x + (-1)^n) + (sqrt x - (-1)^n) log(sqrt x)] dx

in the original variable on different nodes; for n = 1 it reduces to
``2 xi'(1) = int_1^inf omega(x) (1 + sqrt x) dx/x``, which also checks the
closed form for beta_0.  The beta integrals are evaluated after the
substitution ``x = e^(2u)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from .combinatorics import PowerSeries
from .precision import ConvergenceError, DomainError, PrecisionContext
from .quadrature import quad_batch

__all__ = [
    "ThetaSum",
    "XiDerivSeq",
    "theta_omega",
    "keiper_beta",
    "keiper_betas",
    "xi_deriv1",
    "xi_taylor",
]


@dataclass(frozen=True)
class ThetaSum:
    """omega(x) truncated after ``k_used`` terms; ``err`` bounds the omitted tail."""

    x: mpf
    value: mpf
    k_used: int
    err: mpf


@dataclass(frozen=True)
class XiDerivSeq:
    """xi^(n)(1), alpha_n (n = 0..N) and beta_n (n = 0..N-1).

    ``xi1[n]`` comes from the alpha/beta route.  ``xi1_direct[n]`` is the
    second, direct-integral route (``None`` at n = 0), kept for inspection.
    """

    xi1: list
    alpha: list
    beta: list
    err_est: list
    alpha_err: list
    beta_err: list
    xi1_direct: list

    @property
    def n_max(self) -> int:
        return len(self.xi1) - 1

    def beta_at(self, n: int):
        """beta_n with the convention beta_{-1} = 0."""
        return mpf(0) if n == -1 else self.beta[n]


def _omega(x, eps):
    """omega(x) summed until the next term drops below eps * value; returns (value, k, tail)."""
    q = mpmath.exp(-mp.pi * x)
    q2 = q * q
    term = q
    ratio = q * q2
    total = mpf(0)
    k = 0
    while True:
        total += term
        k += 1
        term *= ratio
        ratio *= q2
        if term < eps * total:
            # remaining terms fall off faster than a geometric series with ratio q^2
            return total, k, term / (1 - q2)


def theta_omega(x, ctx: PrecisionContext | None = None) -> ThetaSum:
    """omega(x) = sum_{k>=1} exp(-pi k^2 x) for x > 0.

    Examples
    --------
    >>> from likeiper.precision import PrecisionContext
    >>> print(mpmath.nstr(theta_omega(1, PrecisionContext(96)).value, 10))
    0.04321740561
    """
    ctx = ctx or PrecisionContext()
    with mp.workprec(ctx.guard_bits):
        x = mpf(x)
        if not x > 0:
            raise DomainError("theta_omega requires x > 0")
        value, k, tail = _omega(x, mpf(ctx.target_abs_err) / 4)
        return ThetaSum(x, value, k, tail)


def _cutoff(target, prec):
    """X with 4 e^(-pi X)/pi < target; bounds every scaled integrand tail beyond X."""
    X = mpf(4)
    while 4 * mpmath.exp(-mp.pi * X) / mp.pi >= target:
        X += 4
    return X


def keiper_betas(n_max: int, ctx: PrecisionContext | None = None):
    """beta_0..beta_{n_max} and their error estimates.

    beta_0 is the closed form; the rest come from one batched quadrature in
    u = log(sqrt x):  beta_n = (2/n!) int_0^inf omega(e^(2u)) u^n (e^u + (-1)^n) du.
    """
    ctx = ctx or PrecisionContext()
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    prec = ctx.guard_bits
    with mp.workprec(prec):
        beta0 = 1 + mp.euler / 2 - mpmath.log(2 * mpmath.sqrt(mp.pi))
        betas, errs = [beta0], [mpf(2) ** -(prec - 8)]
        if n_max == 0:
            return betas, errs
        target = mpf(ctx.target_abs_err) / 8
        X = _cutoff(target / 4, prec)
        U = mpmath.log(X) / 2
        eps = mpf(2) ** -(prec + 4)
        inv = [mpf(1) / n for n in range(1, n_max + 1)]

        def integrand(u):
            w, _, _ = _omega(mpmath.exp(2 * u), eps)
            eu = mpmath.exp(u)
            plus, minus = 2 * w * (eu + 1), 2 * w * (eu - 1)
            p = mpf(1)
            out = []
            for n in range(1, n_max + 1):
                p = p * u * inv[n - 1]
                out.append(p * (plus if n % 2 == 0 else minus))
            return out

        points = [mpf(0), mpf(1) / 2] + [mpf(v) for v in (1, 2) if v < U] + [U]
        vals, qerr = quad_batch(integrand, points, n_max, target, prec)
        tail = 2 * mpmath.exp(-mp.pi * X) / mp.pi
        betas += vals
        errs += [e + tail for e in qerr]
        return betas, errs


def keiper_beta(n: int, ctx: PrecisionContext | None = None) -> mpf:
    """beta_n; ``beta_{-1} = 0`` by convention.

    Examples
    --------
    >>> from likeiper.precision import PrecisionContext
    >>> print(mpmath.nstr(keiper_beta(0, PrecisionContext(96)), 10))
    0.02309570897
    """
    if n == -1:
        return mpf(0)
    if n < -1:
        raise DomainError("keiper_beta needs n >= -1")
    return keiper_betas(n, ctx)[0][n]


def _direct_alphas(n_max, ctx):
    """alpha_n = 2 xi^(n)(1)/n! from the direct integral, n = 1..n_max, in x."""
    prec = ctx.guard_bits
    with mp.workprec(prec):
        target = mpf(ctx.target_abs_err) / 8
        X = _cutoff(target / 4, prec)
        eps = mpf(2) ** -(prec + 4)
        inv = [mpf(1) / n for n in range(1, n_max + 1)]

        def integrand(x):
            w, _, _ = _omega(x, eps)
            s = mpmath.sqrt(x)
            v = mpmath.log(x) / 2
            wx = w / x
            p = [mpf(1)]  # p[j] = v^j / j!
            for j in range(1, n_max):
                p.append(p[-1] * v * inv[j - 1])
            out = []
            for n in range(1, n_max + 1):
                sg = 1 if n % 2 == 0 else -1
                acc = p[n - 1] * (s - sg)
                if n >= 2:
                    acc += p[n - 2] * (s + sg)
                out.append(wx * acc)
            return out

        points = [mpf(1), mp.e] + [mpf(v) for v in (4, 8, 16, 32, 64, 128, 256) if v < X] + [X]
        vals, errs = quad_batch(integrand, points, n_max, target, prec)
        tail = 4 * mpmath.exp(-mp.pi * X) / mp.pi
        return vals, [e + tail for e in errs]


def xi_deriv1(n_max: int, ctx: PrecisionContext | None = None, agree_factor: int = 4) -> XiDerivSeq:
    """xi^(n)(1) for n = 0..n_max by the alpha/beta route, checked against the direct integral.

    Parameters
    ----------
    n_max : int
        Highest derivative, ``n_max >= 1``.
    ctx : PrecisionContext, optional
    agree_factor : int
        The two routes must agree within ``agree_factor`` times their
        combined error estimate.

    Raises
    ------
    ConvergenceError
        If the two routes disagree; this points at a quadrature defect.
    """
    ctx = ctx or PrecisionContext()
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    betas, berrs = keiper_betas(n_max - 1, ctx)
    direct, derrs = _direct_alphas(n_max, ctx)
    with mp.workprec(ctx.guard_bits):
        alpha, aerr = [mpf(1)], [mpf(0)]
        for n in range(1, n_max + 1):
            a = betas[n - 1] + (betas[n - 2] if n >= 2 else 0)
            e = berrs[n - 1] + (berrs[n - 2] if n >= 2 else 0)
            gap = abs(a - direct[n - 1])
            if gap > agree_factor * (e + derrs[n - 1]):
                raise ConvergenceError(
                    f"xi^({n})(1): beta route and direct integral differ by {mpmath.nstr(gap, 3)}",
                    achieved=gap,
                )
            alpha.append(a)
            aerr.append(e)
        xi1, xerr, xdir = [mpf(1) / 2], [mpf(0)], [None]
        for n in range(1, n_max + 1):
            half_fact = mpf(math.factorial(n)) / 2  # exact for every n used here
            xi1.append(alpha[n] * half_fact)
            xerr.append(aerr[n] * half_fact)
            xdir.append(direct[n - 1] * half_fact)
    return XiDerivSeq(xi1, alpha, betas, xerr, aerr, berrs, xdir)


def xi_taylor(n_max: int, ctx: PrecisionContext | None = None) -> PowerSeries:
    """Coefficients alpha_0..alpha_{n_max} of 2 xi(s) about s = 1."""
    ctx = ctx or PrecisionContext()
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    if n_max == 0:
        return PowerSeries(1, [mpf(1)])
    return PowerSeries(1, list(xi_deriv1(n_max, ctx).alpha))
