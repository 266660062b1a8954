"""Constant families eta, Lehmer b, sigma and lambda, each by independent routes.

Index conventions: ``b_n`` and ``eta_n`` start at 0, ``sigma_n`` and
``lambda_n`` at 1.  Every :class:`ConstSeq` records its start index and is
indexed by the mathematical index through :meth:`ConstSeq.at`.

Error estimates are deterministic bounds propagated term by term: a binomial
sum ``sum C(n,m) x_m`` carries ``sum C(n,m) err(x_m)`` plus a rounding floor.
The lambda routes also run a cancellation detector: when the sum of
absolute terms exceeds the result by more than ``2**(work_bits - 32)`` the
computation stops with :class:`PrecisionShortfall` instead of returning
digits that are mostly noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import mpmath
from mpmath import mp, mpf

from .combinatorics import bell_partial_table, series_log
from .precision import DomainError, LikeiperError, PrecisionContext, PrecisionShortfall, bits_to_err
from .zeta import StieltjesSeq, ZetaDerivAt0, zeta_int

__all__ = [
    "RouteTag",
    "ConstSeq",
    "MissingInputError",
    "eta_from_gamma",
    "eta_from_sigma",
    "lehmer_b",
    "sigma",
    "li_lambda",
    "lambda_closed_forms",
    "maslanka_decompose",
    "s1",
    "s2",
    "binomial_transform",
]


class MissingInputError(LikeiperError, ValueError):
    """A route was asked for without the sequence it is built from."""


class RouteTag(str, Enum):
    SIGMA_BINOMIAL = "sigma_binomial"
    LEHMER_ROUTE = "lehmer_route"
    ETA_ROUTE = "eta_route"
    BELL_XI_ROUTE = "bell_xi_route"
    LEHMER_RELATION = "lehmer_relation"
    ETA_SIGMA = "eta_sigma"
    GAMMA_LOG_SERIES = "gamma_log_series"
    B_LOG_SERIES = "b_log_series"

    @classmethod
    def from_letter(cls, letter: str) -> "RouteTag":
        """Map the lambda route letters A-D to tags."""
        try:
            return _LETTERS[letter.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown lambda route {letter!r}; expected one of A, B, C, D") from None

    @property
    def letter(self) -> str | None:
        for k, v in _LETTERS.items():
            if v is self:
                return k
        return None


_LETTERS = {
    "A": RouteTag.SIGMA_BINOMIAL,
    "B": RouteTag.LEHMER_ROUTE,
    "C": RouteTag.ETA_ROUTE,
    "D": RouteTag.BELL_XI_ROUTE,
}

FAMILIES = ("eta", "lehmer_b", "sigma", "lambda", "s1", "s2", "trend")


@dataclass(frozen=True)
class ConstSeq:
    """One constant family on a contiguous index range.

    Attributes
    ----------
    family : str
        One of ``eta, lehmer_b, sigma, lambda, s1, s2, trend``.
    start_index : int
        Mathematical index of ``values[0]``.
    values, err_est : list of mpf
        Values and absolute error bounds.
    route : RouteTag
    """

    family: str
    start_index: int
    values: list
    err_est: list
    route: RouteTag
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if len(self.values) != len(self.err_est):
            raise ValueError("values and err_est differ in length")
        if any(e < 0 for e in self.err_est):
            raise ValueError("err_est must be non-negative")
        object.__setattr__(self, "route", RouteTag(self.route))

    def __len__(self):
        return len(self.values)

    @property
    def end_index(self) -> int:
        """Last index covered (inclusive)."""
        return self.start_index + len(self.values) - 1

    @property
    def indices(self) -> range:
        return range(self.start_index, self.end_index + 1)

    def covers(self, lo: int, hi: int) -> bool:
        return self.start_index <= lo and hi <= self.end_index

    def at(self, n: int):
        if not self.start_index <= n <= self.end_index:
            raise IndexError(f"{self.family}_{n} outside {self.start_index}..{self.end_index}")
        return self.values[n - self.start_index]

    def err_at(self, n: int):
        if not self.start_index <= n <= self.end_index:
            raise IndexError(f"{self.family}_{n} outside {self.start_index}..{self.end_index}")
        return self.err_est[n - self.start_index]


def _require(seq, name, lo, hi):
    if seq is None:
        raise MissingInputError(f"route needs {name}")
    if isinstance(seq, ConstSeq):
        ok = seq.covers(lo, hi)
    else:
        ok = 0 <= lo and hi < len(seq)
    if not ok:
        raise MissingInputError(f"{name} must cover indices {lo}..{hi}")


def _ctx_or_default(ctx, n):
    return ctx or PrecisionContext.for_range(n)


def _floor(ctx):
    return bits_to_err(ctx.guard_bits - 8)


def _guarded_sum(terms, ctx, label):
    """Sum ``terms``; abort when their magnitudes swamp the result."""
    total = mpf(0)
    size = mpf(0)
    for t in terms:
        total += t
        size += abs(t)
    limit = mpf(2) ** (ctx.work_bits - 32)
    if size > 0 and (total == 0 or size > abs(total) * limit):
        lost = float(mpmath.log(size / abs(total), 2)) if total else float("inf")
        raise PrecisionShortfall(
            f"{label}: cancellation of {lost:.0f} bits exceeds the "
            f"{ctx.work_bits - 32} bits available at {ctx.work_bits}-bit precision"
        )
    return total, size


def _series_log_with_err(coeffs, errs, order, prec):
    """series_log plus a running absolute-error bound; needs a_0 == 1 exactly."""
    b0, bs = series_log(coeffs, order)
    floor = bits_to_err(prec - 4)
    E = []
    for r in range(1, order + 1):
        e = r * errs[r] + r * abs(coeffs[r]) * floor
        for m in range(1, r):
            am = abs(coeffs[r - m])
            e += am * E[m - 1] + errs[r - m] * (abs(bs[m - 1]) + E[m - 1]) + am * abs(bs[m - 1]) * floor
        E.append(e)
    return bs, E


# -- eta ---------------------------------------------------------------------

def eta_from_gamma(n_max: int, gammas: StieltjesSeq, ctx: PrecisionContext | None = None) -> ConstSeq:
    """eta_0..eta_{n_max-1} from Stieltjes constants.

    The Laurent data give ``(s-1) zeta(s) = 1 + sum_n (-1)^n gamma_n (s-1)^(n+1)/n!``;
    its logarithm is ``-sum_k eta_{k-1} (s-1)^k / k``.

    Examples
    --------
    >>> from likeiper.zeta import stieltjes
    >>> from likeiper.precision import PrecisionContext
    >>> ctx = PrecisionContext(128)
    >>> eta = eta_from_gamma(3, stieltjes(3, ctx), ctx)
    >>> print(mpmath.nstr(eta.at(1), 6))
    0.187546
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    _require(gammas, "gamma", 0, n_max - 1)
    ctx = _ctx_or_default(ctx, n_max)
    with ctx.workprec(32):
        coeffs, errs = [mpf(1)], [mpf(0)]
        for n in range(n_max):
            f = math.factorial(n)
            g = gammas.values[n] / f
            coeffs.append(g if n % 2 == 0 else -g)
            errs.append(gammas.err_est[n] / f)
        bs, E = _series_log_with_err(coeffs, errs, n_max, ctx.guard_bits)
        values = [-b for b in bs]
    return ConstSeq("eta", 0, values, E, RouteTag.GAMMA_LOG_SERIES)


def eta_from_sigma(n_max: int, sigmas: ConstSeq, ctx: PrecisionContext | None = None) -> ConstSeq:
    """eta_0..eta_{n_max-1} from sigma via

        eta_n = (-1)^(n+1) [sigma_{n+1} + (1 - 2^-(n+1)) zeta(n+1) - 1],  n >= 1,

    with eta_0 = -gamma.  Needs sigma_2..sigma_{n_max}.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    if n_max > 1:
        _require(sigmas, "sigma", 2, n_max)
    ctx = _ctx_or_default(ctx, n_max)
    with ctx.workprec(32):
        values, errs = [-mp.euler], [_floor(ctx)]
        for n in range(1, n_max):
            m = n + 1
            z = zeta_int(m, ctx)
            # (zeta(m) - 1) - zeta(m)/2^m keeps the cancellation visible in one place
            eps = sigmas.at(m) + (z - 1) - z / mpf(2) ** m
            values.append(eps if n % 2 else -eps)
            errs.append(sigmas.err_at(m) + 2 * _floor(ctx))
    return ConstSeq("eta", 0, values, errs, RouteTag.ETA_SIGMA)


# -- Lehmer b and sigma ------------------------------------------------------

def lehmer_b(n_max: int, zd0: Sequence[ZetaDerivAt0], ctx: PrecisionContext | None = None) -> ConstSeq:
    """Lehmer constants b_0..b_{n_max} from zeta^(m)(0), m = 0..n_max+1.

    ``2 (s-1) zeta(s)`` has Taylor coefficients
    ``a_m = 2 [m zeta^(m-1)(0) - zeta^(m)(0)]/m! = 2 (c_{m-1} - c_m)`` with
    ``c_m = zeta^(m)(0)/m! + 1`` and ``a_0 = 1``; the logarithmic derivative
    of this function is ``sum b_n s^n``.
    """
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    _require(zd0, "zeta^(m)(0)", 0, n_max + 1)
    ctx = _ctx_or_default(ctx, n_max)
    order = n_max + 1
    with ctx.workprec(32):
        c = [d.shifted for d in zd0[: order + 1]]
        ce = [d.shifted_err for d in zd0[: order + 1]]
        coeffs = [mpf(1)] + [2 * (c[m - 1] - c[m]) for m in range(1, order + 1)]
        errs = [mpf(0)] + [2 * (ce[m - 1] + ce[m]) for m in range(1, order + 1)]
        bs, E = _series_log_with_err(coeffs, errs, order, ctx.guard_bits)
    return ConstSeq("lehmer_b", 0, bs, E, RouteTag.B_LOG_SERIES)


def sigma(n_max: int, bs: ConstSeq, ctx: PrecisionContext | None = None) -> ConstSeq:
    """sigma_1..sigma_{n_max} by Lehmer's relation.

    sigma_1 = gamma/2 - log(pi)/2 + 1 - log 2 and, for m >= 2,
    sigma_m = (-1)^(m-1) 2^-m zeta(m) - b_{m-1}.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    if n_max > 1:
        _require(bs, "lehmer_b", 1, n_max - 1)
    ctx = _ctx_or_default(ctx, n_max)
    with ctx.workprec(32):
        values = [mp.euler / 2 - mpmath.log(mp.pi) / 2 + 1 - mpmath.log(2)]
        errs = [_floor(ctx)]
        for m in range(2, n_max + 1):
            t = zeta_int(m, ctx) / mpf(2) ** m
            values.append((t if m % 2 == 0 else -t) * -1 - bs.at(m - 1))
            errs.append(bs.err_at(m - 1) + _floor(ctx))
    return ConstSeq("sigma", 1, values, errs, RouteTag.LEHMER_RELATION)


# -- lambda ---------------------------------------------------------------------

def _lambda_A(n_max, sigmas, ctx):
    _require(sigmas, "sigma", 1, n_max)
    vals, errs = [], []
    for n in range(1, n_max + 1):
        terms = []
        err = mpf(0)
        for m in range(1, n + 1):
            c = math.comb(n, m)
            t = c * sigmas.at(m)
            terms.append(t if m % 2 else -t)
            err += c * sigmas.err_at(m)
        total, size = _guarded_sum(terms, ctx, f"lambda_{n} (route A)")
        vals.append(total)
        errs.append(err + size * _floor(ctx))
    return vals, errs


def _lambda_B(n_max, bs, ctx):
    if n_max > 1:
        _require(bs, "lehmer_b", 1, n_max - 1)
    lam1 = (2 + mp.euler - mpmath.log(4 * mp.pi)) / 2
    vals, errs = [], []
    for n in range(1, n_max + 1):
        terms = [n * lam1]
        err = n * _floor(ctx)
        for m in range(2, n + 1):
            c = math.comb(n, m)
            b = bs.at(m - 1)
            terms.append(c * (zeta_int(m, ctx) / mpf(2) ** m + (b if m % 2 == 0 else -b)))
            err += c * (bs.err_at(m - 1) + _floor(ctx))
        total, size = _guarded_sum(terms, ctx, f"lambda_{n} (route B)")
        vals.append(total)
        errs.append(err + size * _floor(ctx))
    return vals, errs


def _trend_const():
    return mpmath.log(mp.pi) + mp.euler + 2 * mpmath.log(2)


def s1(n: int, ctx: PrecisionContext | None = None):
    """S_1(n) = sum_{m=2..n} C(n,m) (-1)^m (1 - 2^-m) zeta(m); returns (value, abs_size)."""
    ctx = _ctx_or_default(ctx, n)
    with ctx.workprec(32):
        terms = []
        for m in range(2, n + 1):
            t = math.comb(n, m) * (1 - mpf(2) ** -m) * zeta_int(m, ctx)
            terms.append(t if m % 2 == 0 else -t)
        total = mpf(0)
        size = mpf(0)
        for t in terms:
            total += t
            size += abs(t)
        return total, size


def s2(n: int, etas: ConstSeq):
    """S_2(n) = -sum_{m=1..n} C(n,m) eta_{m-1}.

    Examples
    --------
    >>> from fractions import Fraction
    >>> eta = ConstSeq("eta", 0, [Fraction(-1, 2), Fraction(1, 5)], [0, 0], "eta_sigma")
    >>> s2(2, eta)
    Fraction(4, 5)
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    _require(etas, "eta", 0, n - 1)
    total = 0
    for m in range(1, n + 1):
        total -= math.comb(n, m) * etas.at(m - 1)
    return total


def maslanka_decompose(n_max: int, etas: ConstSeq, ctx: PrecisionContext | None = None):
    """Trend and oscillation parts of lambda_1..lambda_{n_max}.

    trend_m = 1 - (m/2) [log pi + gamma + 2 log 2] + S_1(m)
    osc_m   = S_2(m) = -sum_n C(m,n) eta_{n-1}

    Returns
    -------
    trend, osc : ConstSeq
        Families ``trend`` and ``s2``; their sum is the route-C lambda.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    _require(etas, "eta", 0, n_max - 1)
    ctx = _ctx_or_default(ctx, n_max)
    with ctx.workprec(32):
        k = _trend_const()
        tv, te, ov, oe = [], [], [], []
        for m in range(1, n_max + 1):
            s, size = s1(m, ctx)
            tv.append(1 - m * k / 2 + s)
            te.append((size + m * 4) * _floor(ctx))
            ov.append(s2(m, etas))
            err = sum(math.comb(m, n) * etas.err_at(n - 1) for n in range(1, m + 1))
            ov_size = sum(math.comb(m, n) * abs(etas.at(n - 1)) for n in range(1, m + 1))
            oe.append(err + ov_size * _floor(ctx))
    trend = ConstSeq("trend", 1, tv, te, RouteTag.ETA_ROUTE)
    osc = ConstSeq("s2", 1, ov, oe, RouteTag.ETA_ROUTE)
    return trend, osc


def _lambda_C(n_max, etas, ctx):
    _require(etas, "eta", 0, n_max - 1)
    k = _trend_const()
    vals, errs = [], []
    for n in range(1, n_max + 1):
        terms = [mpf(1), -n * k / 2]
        err = mpf(0)
        for m in range(2, n + 1):
            t = math.comb(n, m) * (1 - mpf(2) ** -m) * zeta_int(m, ctx)
            terms.append(t if m % 2 == 0 else -t)
        for m in range(1, n + 1):
            c = math.comb(n, m)
            terms.append(-c * etas.at(m - 1))
            err += c * etas.err_at(m - 1)
        total, size = _guarded_sum(terms, ctx, f"lambda_{n} (route C)")
        vals.append(total)
        errs.append(err + size * _floor(ctx))
    return vals, errs


def _bell_log_terms(m, T):
    return [(math.factorial(k - 1) * T[m][k]) * (1 if k % 2 else -1) for k in range(1, m + 1)]


def _lambda_D(n_max, xi, ctx):
    if xi is None:
        raise MissingInputError("route D needs xi^(n)(1)")
    if xi.n_max < n_max:
        raise MissingInputError(f"xi^(n)(1) must cover 1..{n_max}")
    g = [2 * xi.xi1[j] for j in range(1, n_max + 1)]
    ge = [2 * xi.err_est[j] for j in range(1, n_max + 1)]
    T = bell_partial_table(n_max, g)
    Tabs = bell_partial_table(n_max, [abs(x) for x in g])
    Tup = bell_partial_table(n_max, [abs(x) + e for x, e in zip(g, ge)])
    logs, lerrs = [], []
    for m in range(1, n_max + 1):
        Lm, size = _guarded_sum(_bell_log_terms(m, T), ctx, f"L_{m}(2 xi'(1), ...) (route D)")
        # every B_{m,k} has non-negative coefficients, so the perturbation is bounded monotonically
        err = sum(math.factorial(k - 1) * (Tup[m][k] - Tabs[m][k]) for k in range(1, m + 1))
        logs.append(Lm / math.factorial(m - 1))
        lerrs.append((err + size * _floor(ctx)) / math.factorial(m - 1))
    vals, errs = [], []
    for n in range(1, n_max + 1):
        terms = [math.comb(n, m) * logs[m - 1] for m in range(1, n + 1)]
        total, size = _guarded_sum(terms, ctx, f"lambda_{n} (route D)")
        vals.append(total)
        errs.append(sum(math.comb(n, m) * lerrs[m - 1] for m in range(1, n + 1)) + size * _floor(ctx))
    return vals, errs


def li_lambda(
    n_max: int,
    route,
    *,
    sigmas: ConstSeq | None = None,
    bs: ConstSeq | None = None,
    etas: ConstSeq | None = None,
    xi=None,
    ctx: PrecisionContext | None = None,
) -> ConstSeq:
    """Li/Keiper constants lambda_1..lambda_{n_max} by one route.

    Parameters
    ----------
    n_max : int
    route : RouteTag or {"A", "B", "C", "D"}
        A  lambda_n = -sum_m (-1)^m C(n,m) sigma_m                      (needs ``sigmas``)
        B  lambda_n = n lambda_1 + sum_{m>=2} C(n,m)[2^-m zeta(m) + (-1)^m b_{m-1}],
           lambda_1 = (2 + gamma - log 4 pi)/2                           (needs ``bs``)
        C  lambda_n = 1 - (n/2)[log pi + gamma + 2 log 2] + S_1(n) + S_2(n)
                                                                        (needs ``etas``)
        D  lambda_n = sum_m C(n,m)/(m-1)! L_m(2 xi'(1), ..., 2 xi^(m)(1)) (needs ``xi``)
    ctx : PrecisionContext, optional
        Sums run at ``ctx.guard_bits``.

    Raises
    ------
    MissingInputError
        The route's input sequence is absent or too short.
    PrecisionShortfall
        Cancellation inside a sum exceeds ``ctx.work_bits - 32`` bits.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    tag = route if isinstance(route, RouteTag) else (
        RouteTag.from_letter(route) if len(str(route)) == 1 else RouteTag(route))
    ctx = _ctx_or_default(ctx, n_max)
    with ctx.workprec(32):
        if tag is RouteTag.SIGMA_BINOMIAL:
            vals, errs = _lambda_A(n_max, sigmas, ctx)
        elif tag is RouteTag.LEHMER_ROUTE:
            vals, errs = _lambda_B(n_max, bs, ctx)
        elif tag is RouteTag.ETA_ROUTE:
            vals, errs = _lambda_C(n_max, etas, ctx)
        elif tag is RouteTag.BELL_XI_ROUTE:
            vals, errs = _lambda_D(n_max, xi, ctx)
        else:
            raise ValueError(f"{tag.value} is not a lambda route")
    return ConstSeq("lambda", 1, vals, errs, tag)


def lambda_closed_forms(gamma1, ctx: PrecisionContext | None = None):
    """lambda_1 and lambda_2 from their closed forms.

    lambda_1 = gamma/2 - log(pi)/2 + 1 - log 2
    lambda_2 = 3 zeta(2)/4 + 1 + gamma - gamma^2 - 2 log 2 - log pi - 2 gamma_1
    """
    ctx = ctx or PrecisionContext()
    with ctx.workprec(32):
        g = mp.euler
        lam1 = g / 2 - mpmath.log(mp.pi) / 2 + 1 - mpmath.log(2)
        lam2 = (3 * zeta_int(2, ctx) / 4 + 1 + g - g ** 2 - 2 * mpmath.log(2)
                - mpmath.log(mp.pi) - 2 * gamma1)
    return lam1, lam2


def binomial_transform(seq: ConstSeq, ctx: PrecisionContext | None = None):
    """Map a 1-based sequence u_1..u_N to -sum_{m=1..n} (-1)^m C(n,m) u_m.

    The map is an involution; it sends sigma to lambda and lambda to sigma.
    Exact inputs give exact outputs.  Returns ``(values, err_bounds)``.
    """
    if seq.start_index != 1:
        raise DomainError("binomial_transform expects a sequence starting at index 1")
    N = seq.end_index
    ctx = ctx or PrecisionContext.for_range(N)
    vals, errs = [], []
    with ctx.workprec(32):
        for n in range(1, N + 1):
            acc = 0
            err = 0
            for m in range(1, n + 1):
                c = math.comb(n, m)
                t = c * seq.at(m)
                acc = acc + t if m % 2 else acc - t
                err += c * seq.err_at(m)
            vals.append(acc)
            errs.append(err)
    return vals, errs
