"""Zeta function on the real line, derivatives at s = 0, Stieltjes and delta constants.

Two independent routes are provided for the derivatives at the origin:

* ``abel_plana``: the Hermite-type integral

      zeta^(n)(0) = -n! + 2 (-1)^(n+1) Im int_0^inf log^n(1+ix) / (e^(2 pi x) - 1) dx,

  integrated for every n in one tanh-sinh pass;
* ``limit_formula``: the Euler-Maclaurin-accelerated limit

      (-1)^n [zeta^(n)(0) + n!] = lim_m [sum_{k<=m} log^n k - int_1^m log^n x dx - log^n(m)/2].

Stieltjes constants use the same Euler-Maclaurin machinery on
``sum log^n(k)/k - log^(n+1)(N)/(n+1)``; the alternating Hasse-type series is
kept as a slow, low-accuracy cross-check.

Everything that depends on a truncation returns an explicit absolute error
estimate.  The convention ``log^0(1) = 1`` is used throughout.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import mpmath
from mpmath import mp, mpf

from .precision import ConvergenceError, DomainError, PrecisionContext, bits_to_err
from .quadrature import quad_batch

__all__ = [
    "ABEL_PLANA",
    "LIMIT_FORMULA",
    "ZetaDerivAt0",
    "StieltjesSeq",
    "DeltaSeq",
    "zeta_real",
    "zeta_int",
    "zeta_derivs0",
    "zeta_deriv0_abel_plana",
    "zeta_deriv0_limit",
    "stieltjes",
    "delta",
]

ABEL_PLANA = "abel_plana"
LIMIT_FORMULA = "limit_formula"


@dataclass(frozen=True)
class ZetaDerivAt0:
    """zeta^(n)(0) with an absolute error estimate.

    ``shifted`` is ``zeta^(n)(0)/n! + 1``, which tends to zero with n and is
    what downstream series actually consume; computing it directly avoids
    the catastrophic cancellation of subtracting n! afterwards.
    """

    n: int
    value: mpf
    err_est: mpf
    method: str
    shifted: mpf

    def __post_init__(self):
        if self.err_est < 0:
            raise ValueError("err_est must be non-negative")

    @property
    def shifted_err(self) -> mpf:
        return self.err_est / math.factorial(self.n)


@dataclass(frozen=True)
class StieltjesSeq:
    """gamma_0..gamma_N with per-entry absolute error estimates."""

    values: list
    err_est: list
    method: str = "euler_maclaurin"

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1


@dataclass(frozen=True)
class DeltaSeq:
    """delta_0..delta_N, delta_n = (-1)^n [zeta^(n)(0) + n!]."""

    values: list
    err_est: list
    route: str

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]


# -- Euler-Maclaurin helpers ---------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_ratio(j: int):
    """B_{2j} / (2j)! as an exact fraction."""
    from fractions import Fraction

    return Fraction(mpmath.bernfrac(2 * j)[0], mpmath.bernfrac(2 * j)[1]) / math.factorial(2 * j)


def _falling_coeffs(a: int, m_max: int) -> list[list[int]]:
    """Coefficients e[m][r] of t^r in (t-a)(t-a-1)...(t-a-m+1), m <= m_max.

    Derivatives of x^(t-a) are falling(t-a, m) x^(t-a-m), and log^n(x)/x^a
    is n! [t^n] x^(t-a), so these polynomials give every derivative of every
    log-power at once.
    """
    rows = [[1]]
    for m in range(1, m_max + 1):
        prev = rows[-1]
        shift = -(a + m - 1)
        row = [0] * (m + 1)
        for r, c in enumerate(prev):
            row[r + 1] += c
            row[r] += shift * c
        rows.append(row)
    return rows


def _log_power_derivative(n: int, m: int, a: int, x, logx_pows, inv_fact, falling):
    """d^m/dx^m [log^n(x) / x^a] at x, with ``logx_pows[i] = log(x)^i``."""
    row = falling[m]
    acc = mpf(0)
    for r in range(min(m, n) + 1):
        c = row[r]
        if c:
            acc += c * logx_pows[n - r] * inv_fact[n - r]
    return acc * math.factorial(n) / x ** (a + m)


def _em_tail(n, a, N, logN_pows, inv_fact, target, j_max=4000):
    """sum_j B_{2j}/(2j)! f^(2j-1)(N) for f = log^n(x)/x^a, stopped near the minimal term.

    Returns ``(tail, err)``, or raises ConvergenceError if the asymptotic
    terms turn upward above ``target``.  ``err`` is twice the larger of the
    first two omitted terms: a single omitted term can be accidentally small
    when its log-polynomial factor is near a sign change.
    """
    falling = _falling_table(a, 128)
    total = mpf(0)
    prev = None
    x = mpf(N)
    for j in range(1, j_max + 1):
        if 2 * j - 1 >= len(falling):
            falling = _falling_table(a, 4 * j)
        b = _bernoulli_ratio(j)
        d = _log_power_derivative(n, 2 * j - 1, a, x, logN_pows, inv_fact, falling)
        term = mpf(b.numerator) / b.denominator * d
        mag = abs(term)
        if prev is not None and mag > prev and prev > target:
            raise ConvergenceError(
                f"Euler-Maclaurin terms diverge at N={N} before reaching the target",
                achieved=prev,
            )
        if mag < target:
            if 2 * j + 1 >= len(falling):
                falling = _falling_table(a, 4 * j + 4)
            b2 = _bernoulli_ratio(j + 1)
            d2 = _log_power_derivative(n, 2 * j + 1, a, x, logN_pows, inv_fact, falling)
            return total, 2 * max(mag, abs(mpf(b2.numerator) / b2.denominator * d2))
        total += term
        prev = mag
    raise ConvergenceError("Euler-Maclaurin correction did not converge", achieved=prev)


_falling_cache: dict = {}
_falling_lock = threading.Lock()


def _falling_table(a, m_max):
    """Cached falling-factorial polynomial table for offset ``a``."""
    rows = _falling_cache.get(a)
    if rows is None or len(rows) <= m_max:
        with _falling_lock:
            rows = _falling_coeffs(a, max(m_max, 64))
            _falling_cache[a] = rows
    return rows


def _log_extra_bits(n: int, N: int) -> int:
    """Bits lost to cancellation between sums of log^n k and their integrals."""
    return int(n * max(0.0, math.log2(math.log(N) + 1)) + math.log2(N)) + 8


# -- zeta on the real line -----------------------------------------------

def zeta_real(s, ctx: PrecisionContext | None = None) -> mpf:
    """Riemann zeta at a real point ``s > -1``, ``s != 1``.

    Parameters
    ----------
    s : real
    ctx : PrecisionContext, optional

    Returns
    -------
    mpf
        zeta(s) with absolute error below ``ctx.target_abs_err``.

    Notes
    -----
    Euler-Maclaurin with cut N:

        zeta(s) = sum_{k<N} k^-s + N^(1-s)/(s-1) + N^-s/2
                  + sum_j B_{2j}/(2j)! s(s+1)...(s+2j-2) N^(-s-2j+1).

    N is doubled until the correction terms fall below the target before
    they start to grow.
    """
    ctx = ctx or PrecisionContext()
    prec = ctx.guard_bits
    with mp.workprec(prec):
        s = mpf(s)
        if s == 1:
            raise DomainError("zeta has a pole at s = 1")
        if s <= -1:
            raise DomainError("zeta_real requires s > -1")
        target = ctx.target_abs_err / 16
        N = max(8, int(prec * math.log(2) / (2 * math.pi)) + 4)
        while True:
            try:
                tail = _zeta_em_tail(s, N, target)
                break
            except ConvergenceError:
                N *= 2
        head = mpf(0)
        for k in range(N - 1, 0, -1):
            head += mpf(k) ** -s
        return head + mpf(N) ** (1 - s) / (s - 1) + mpf(N) ** -s / 2 + tail


def _zeta_em_tail(s, N, target):
    x = mpf(N)
    total = mpf(0)
    rising = s
    prev = None
    for j in range(1, 4000):
        if j > 1:
            rising *= (s + 2 * j - 3) * (s + 2 * j - 2)
        b = _bernoulli_ratio(j)
        term = mpf(b.numerator) / b.denominator * rising * x ** (-s - 2 * j + 1)
        mag = abs(term)
        if mag < target or rising == 0:
            return total
        if prev is not None and mag > prev:
            raise ConvergenceError("zeta tail diverges", achieved=prev)
        total += term
        prev = mag
    raise ConvergenceError("zeta tail did not converge", achieved=prev)


@lru_cache(maxsize=None)
def _zeta_int_cached(m: int, bits: int) -> mpf:
    return zeta_real(m, PrecisionContext(work_bits=bits))


def zeta_int(m: int, ctx: PrecisionContext | None = None) -> mpf:
    """zeta(m) for integer m >= 2, cached at ``work_bits + 32`` bits."""
    ctx = ctx or PrecisionContext()
    if m < 2:
        raise DomainError("zeta_int needs m >= 2")
    return _zeta_int_cached(int(m), ctx.guard_bits)


# -- derivatives at the origin: Abel-Plana -----------------------------

def _abel_plana_cutoff(target) -> mpf:
    """X with 2 e^(pi/2) e^(-2 pi X) ((1+X)/(2 pi) + 1/(4 pi^2)) < target.

    Uses |log(1+ix)|^n/n! summed over n <= e^|log(1+ix)| <= (1+x) e^(pi/2).
    """
    X = mpf(2)
    for _ in range(60):
        bound = _abel_plana_tail(X)
        if bound < target:
            return X
        X += max(mpf(1) / 4, -mpmath.log(target / bound) / (2 * mp.pi))
    raise ConvergenceError("could not place the upper cutoff", achieved=_abel_plana_tail(X))


def _abel_plana_tail(X) -> mpf:
    return (2 * mpmath.exp(mp.pi / 2) * mpmath.exp(-2 * mp.pi * X)
            * ((1 + X) / (2 * mp.pi) + 1 / (4 * mp.pi ** 2)) * mpf("1.01"))


_ap_cache: dict = {}
_ap_lock = threading.Lock()


def zeta_derivs0(n_max: int, ctx: PrecisionContext | None = None) -> list[ZetaDerivAt0]:
    """zeta^(n)(0) for n = 0..n_max by the Abel-Plana integral, in one quadrature pass.

    The integrand for index n is Im[log^n(1+ix)]/n! / (e^(2 pi x) - 1), so
    the quadrature directly delivers ``zeta^(n)(0)/n! + 1`` to absolute
    accuracy ``ctx.target_abs_err``.  The reported error adds the quadrature
    estimate to the bound on the discarded range beyond the cutoff.
    """
    ctx = ctx or PrecisionContext()
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    key = (ctx.work_bits, ctx.target_abs_err)
    with _ap_lock:
        hit = _ap_cache.get(key)
    if hit is not None and len(hit) > n_max:
        return hit[: n_max + 1]
    prec = ctx.guard_bits
    with mp.workprec(prec):
        target = mpf(ctx.target_abs_err) / 8
        X = _abel_plana_cutoff(target / 4)
        cut_err = 2 * _abel_plana_tail(X)
        points = [mpf(p) for p in (0, 1, 2, 4, 8, 16, 32, 64) if p < X] + [X]
        two_pi = 2 * mp.pi
        inv = [mpf(1) / n for n in range(1, n_max + 1)]

        def integrand(x):
            lr = mpmath.log1p(x * x) / 2
            li = mpmath.atan(x)
            den = mpmath.expm1(two_pi * x)
            pr, pi_ = mpf(1), mpf(0)
            out = []
            for n in range(n_max):
                pr, pi_ = (pr * lr - pi_ * li) * inv[n], (pr * li + pi_ * lr) * inv[n]
                out.append(pi_ / den)
            return out

        if n_max:
            ints, errs = quad_batch(integrand, points, n_max, target, prec)
        else:
            ints, errs = [], []
        out = [ZetaDerivAt0(0, mpf(-1) / 2, mpf(0), ABEL_PLANA, mpf(1) / 2)]
        for n in range(1, n_max + 1):
            sign = 1 if n % 2 else -1
            c = 2 * sign * ints[n - 1]
            err_c = 2 * (errs[n - 1] + cut_err)
            fact = math.factorial(n)
            out.append(ZetaDerivAt0(n, fact * (c - 1), fact * err_c, ABEL_PLANA, c))
    with _ap_lock:
        prev = _ap_cache.get(key)
        if prev is None or len(prev) < len(out):
            _ap_cache[key] = out
    return out


def zeta_deriv0_abel_plana(n: int, ctx: PrecisionContext | None = None) -> ZetaDerivAt0:
    """Single-index wrapper around :func:`zeta_derivs0`.

    Examples
    --------
    >>> from likeiper.precision import PrecisionContext
    >>> d = zeta_deriv0_abel_plana(1, PrecisionContext(96))
    >>> print(mpmath.nstr(d.value, 12))
    -0.918938533205
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    return zeta_derivs0(n, ctx)[n]


# -- derivatives at the origin: limit formula ---------------------------

def _log_power_integral(n: int, logm, m) -> mpf:
    """int_1^m log^n x dx = m sum_j (-1)^(n-j) n!/j! log^j m - (-1)^n n!."""
    acc = mpf(0)
    p = mpf(1)
    nf = math.factorial(n)
    for j in range(n + 1):
        term = p * (nf // math.factorial(j))
        acc += term if (n - j) % 2 == 0 else -term
        p *= logm
    return m * acc - (nf if n % 2 == 0 else -nf)


def zeta_deriv0_limit(n: int, m_max: int = 64, ctx: PrecisionContext | None = None) -> ZetaDerivAt0:
    """zeta^(n)(0) from the limit formula, accelerated by Euler-Maclaurin.

    Parameters
    ----------
    n : int
        Derivative order, ``n >= 0``.
    m_max : int
        Cut point of the partial sum.  The Euler-Maclaurin correction at
        ``m_max`` replaces the limit; larger values allow more accuracy.
    ctx : PrecisionContext, optional

    Returns
    -------
    ZetaDerivAt0
        ``err_est`` is the first omitted correction term (times n! is not
        applied: it is already an absolute error on the value) plus rounding.
        It may be large when ``m_max`` is too small for the requested
        precision; no exception is raised in that case.
    """
    ctx = ctx or PrecisionContext()
    if n < 0:
        raise DomainError("n must be >= 0")
    if m_max < 2:
        raise DomainError("m_max must be >= 2")
    N = int(m_max)
    prec = ctx.guard_bits + _log_extra_bits(n, N)
    with mp.workprec(prec):
        target = mpf(ctx.target_abs_err) / 8
        logs = [mpf(0)] + [mpmath.log(k) for k in range(2, N + 1)]
        head = mpf(1) if n == 0 else mpf(0)  # log^0(1) = 1
        for L in logs[1:]:
            head += L ** n
        logN = logs[-1]
        pows = [logN ** i for i in range(n + 1)]
        inv_fact = [mpf(1) / math.factorial(i) for i in range(n + 1)]
        try:
            tail, err = _em_tail(n, 0, N, pows, inv_fact, target)
        except ConvergenceError:
            tail, err = _em_tail_best(n, 0, N, pows, inv_fact)
        d = head - _log_power_integral(n, logN, mpf(N)) - pows[n] / 2 - tail
        err = err + abs(head) * bits_to_err(prec - 8)
        sign = 1 if n % 2 == 0 else -1
        fact = math.factorial(n)
        value = sign * d - fact
        return ZetaDerivAt0(n, value, err, LIMIT_FORMULA, value / fact + 1)


def _em_tail_best(n, a, N, pows, inv_fact):
    """Truncate the asymptotic correction at its smallest term."""
    falling = _falling_table(a, 400)
    total = mpf(0)
    x = mpf(N)
    prev = None
    for j in range(1, 200):
        b = _bernoulli_ratio(j)
        d = _log_power_derivative(n, 2 * j - 1, a, x, pows, inv_fact, falling)
        term = mpf(b.numerator) / b.denominator * d
        if prev is not None and abs(term) > prev:
            return total, prev
        total += term
        prev = abs(term)
    return total, prev


# -- Stieltjes constants --------------------------------------------------

def stieltjes(n_max: int, ctx: PrecisionContext | None = None, method: str = "euler_maclaurin",
              terms: int = 400) -> StieltjesSeq:
    """Stieltjes constants gamma_0..gamma_{n_max}.

    Parameters
    ----------
    n_max : int
    ctx : PrecisionContext, optional
    method : {"euler_maclaurin", "hasse"}
        ``euler_maclaurin`` evaluates the defining limit

            gamma_n = lim_N [sum_{k<=N} log^n(k)/k - log^(n+1)(N)/(n+1)]

        with an Euler-Maclaurin correction at an adaptively doubled N.
        ``hasse`` sums the alternating series

            gamma_n = -1/(n+1) sum_i 1/(i+1) sum_j C(i,j) (-1)^j log^(n+1)(1+j),

        whose terms decay only like 1/(i^2 log i); it is useful as an
        independent low-accuracy check; its error estimate is heuristic.
    terms : int
        Number of outer terms for ``hasse``.

    Raises
    ------
    ConvergenceError
        ``hasse`` only, when the tail estimate exceeds ``ctx.target_abs_err``.
    """
    ctx = ctx or PrecisionContext()
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    if method == "euler_maclaurin":
        return _stieltjes_em(n_max, ctx)
    if method == "hasse":
        return _stieltjes_hasse(n_max, ctx, terms)
    raise ValueError(f"unknown method {method!r}")


def _stieltjes_em(n_max, ctx):
    N = max(16, int(ctx.work_bits * math.log(2) / (2 * math.pi)) + 8)
    while True:
        prec = ctx.guard_bits + _log_extra_bits(n_max + 1, N)
        with mp.workprec(prec):
            target = mpf(ctx.target_abs_err) / 8
            logN = mpmath.log(N)
            pows = [mpf(1)]
            for _ in range(n_max + 1):
                pows.append(pows[-1] * logN)
            inv_fact = [mpf(1) / math.factorial(i) for i in range(n_max + 2)]
            try:
                tails = [_em_tail(n, 1, N, pows, inv_fact, target) for n in range(n_max + 1)]
            except ConvergenceError:
                N *= 2
                continue
            heads = [mpf(0)] * (n_max + 1)
            for k in range(1, N + 1):
                L = mpmath.log(k)
                p = mpf(1) / k
                for n in range(n_max + 1):
                    heads[n] += p
                    p *= L
            values, errs = [], []
            for n in range(n_max + 1):
                tail, err = tails[n]
                v = heads[n] - pows[n + 1] / (n + 1) - pows[n] / (2 * N) - tail
                scale = pows[n + 1] / (n + 1) + 1
                values.append(v)
                errs.append(err + scale * bits_to_err(prec - 8))
            return StieltjesSeq(values, errs, "euler_maclaurin")


def _stieltjes_hasse(n_max, ctx, terms):
    values, errs = [], []
    for n in range(n_max + 1):
        prec = ctx.guard_bits + terms + 16
        with mp.workprec(prec):
            logs = [mpmath.log(1 + j) ** (n + 1) for j in range(terms)]
            total = mpf(0)
            last = mpf(0)  # largest term over the final quarter; single terms oscillate
            half = mpf(0)
            for i in range(terms):
                inner = mpf(0)
                for j in range(i + 1):
                    c = math.comb(i, j)
                    inner += c * logs[j] if j % 2 == 0 else -c * logs[j]
                term = inner / (i + 1)
                total += term
                if 4 * i >= 3 * terms:
                    last = max(last, abs(term))
                if 2 * (i + 1) == terms:
                    half = total
            value = -total / (n + 1)
            # Heuristic, not a bound: terms shrink like log^n(i)/i^2 but oscillate, so
            # take twice the larger of T (1 + n/log T) max|late term| and the
            # change over the second half of the partial sums.
            by_term = abs(last) * terms * (1 + n / math.log(terms))
            by_half = abs(total - half)
            err = 2 * max(by_term, by_half) / (n + 1)
        values.append(value)
        errs.append(err)
        if err > ctx.target_abs_err:
            raise ConvergenceError(
                f"Hasse series for gamma_{n} reached only {mpmath.nstr(err, 3)} with {terms} terms",
                achieved=err,
            )
    return StieltjesSeq(values, errs, "hasse")


# -- Sitaramachandrarao constants --------------------------------------

def delta(n_max: int, ctx: PrecisionContext | None = None, route: str = ABEL_PLANA,
          extra_terms: int = 48) -> DeltaSeq:
    """delta_n = (-1)^n [zeta^(n)(0) + n!] for n = 0..n_max.

    Parameters
    ----------
    route : {"abel_plana", "stieltjes_series"}
        ``abel_plana`` rescales the Abel-Plana derivatives;
        ``stieltjes_series`` sums ``delta_n = sum_p gamma_{p+n}/p!`` over
        ``extra_terms`` values of p and adds the last term as a tail estimate.
    """
    ctx = ctx or PrecisionContext()
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    if route == ABEL_PLANA:
        ds = zeta_derivs0(n_max, ctx)
        vals, errs = [], []
        with ctx.workprec(32):
            for d in ds:
                fact = math.factorial(d.n)
                sign = 1 if d.n % 2 == 0 else -1
                vals.append(sign * fact * d.shifted)
                errs.append(d.err_est)
        return DeltaSeq(vals, errs, ABEL_PLANA)
    if route == "stieltjes_series":
        g = stieltjes(n_max + extra_terms, ctx)
        vals, errs = [], []
        with ctx.workprec(32):
            inv_fact = [mpf(1) / math.factorial(p) for p in range(extra_terms + 1)]
            for n in range(n_max + 1):
                acc = mpf(0)
                err = mpf(0)
                for p in range(extra_terms + 1):
                    acc += g.values[n + p] * inv_fact[p]
                    err += g.err_est[n + p] * inv_fact[p]
                tail = abs(g.values[n + extra_terms]) * inv_fact[extra_terms] * 2
                vals.append(acc)
                errs.append(err + tail)
        return DeltaSeq(vals, errs, "stieltjes_series")
    raise ValueError(f"unknown route {route!r}")
