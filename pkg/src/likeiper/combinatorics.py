"""Exact combinatorial kernel: binomials, Stirling numbers, Bell polynomials,
and the exp/log recurrences for power-series coefficients.

Arguments may be ``int``/``Fraction`` (results are exact) or mpmath numbers
(results carry the current mpmath precision).  A single call never mixes the
two: if any argument is inexact, every argument is promoted to ``mpf``.

Factorial-weighted argument conventions such as ``x_j = (j-1)! c_j`` are the
caller's job.  Nothing here applies factorials implicitly.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import mpmath
from mpmath import mpf

from .precision import DomainError

__all__ = [
    "PowerSeries",
    "binomial",
    "stirling2",
    "bell_partial",
    "bell_partial_table",
    "bell_complete",
    "bell_complete_all",
    "bell_scale",
    "bell_invert",
    "bell_forward",
    "log_polynomial",
    "series_exp",
    "series_log",
]


def _is_exact(x) -> bool:
    return isinstance(x, Rational)


def _unify(values):
    """Promote a list of scalars to one arithmetic type."""
    values = list(values)
    if all(_is_exact(v) for v in values):
        return [Fraction(v) for v in values], True
    return [v if isinstance(v, (mpmath.mpf, mpmath.mpc)) else mpf(v) for v in values], False


def _one(exact: bool):
    return Fraction(1) if exact else mpf(1)


def _zero(exact: bool):
    return Fraction(0) if exact else mpf(0)


@dataclass
class PowerSeries:
    """Truncated Taylor expansion about ``center``; ``coeffs[0]`` is the constant term."""

    center: object
    coeffs: list

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a power series needs at least the constant term")
        if not mpmath.isfinite(self.center):
            raise ValueError("center must be finite")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i]

    def __call__(self, x):
        """Horner evaluation at ``x`` (absolute position, not offset)."""
        t = x - self.center
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * t + c
        return acc


def binomial(n: int, k: int) -> int:
    if n < 0:
        raise DomainError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


_stirling_rows: list[list[int]] = [[1]]
_stirling_lock = threading.Lock()


def stirling2(l: int, k: int) -> int:
    """Stirling number of the second kind S(l, k); zero when k > l."""
    if l < 0 or k < 0:
        raise DomainError("stirling2 needs non-negative arguments")
    if k > l:
        return 0
    rows = _stirling_rows
    if l >= len(rows):
        with _stirling_lock:
            while len(rows) <= l:
                prev = rows[-1]
                n = len(rows)
                row = [0] * (n + 1)
                for j in range(1, n + 1):
                    row[j] = j * (prev[j] if j < n else 0) + prev[j - 1]
                rows.append(row)
    return rows[l][k]


def bell_partial_table(n_max: int, xs: Sequence) -> list[list]:
    """All partial Bell values ``T[n][k] = B_{n,k}(x_1, ...)`` for n, k <= n_max.

    Uses B_{n,k} = sum_i C(n-1, i-1) x_i B_{n-i,k-1}, which needs only the
    first n-k+1 arguments.
    """
    if len(xs) < n_max:
        raise ValueError(f"need {n_max} arguments, got {len(xs)}")
    x, exact = _unify(xs[:n_max])
    zero, one = _zero(exact), _one(exact)
    T = [[zero] * (n_max + 1) for _ in range(n_max + 1)]
    T[0][0] = one
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            acc = zero
            for i in range(1, n - k + 2):
                prev = T[n - i][k - 1]
                if prev:
                    acc += math.comb(n - 1, i - 1) * x[i - 1] * prev
            T[n][k] = acc
    return T


def bell_partial(n: int, k: int, xs: Sequence):
    """B_{n,k}(x_1, ..., x_{n-k+1}); zero for k > n."""
    if n < 0 or k < 0:
        raise DomainError("bell_partial needs non-negative indices")
    if k > n:
        return 0
    if n == 0:
        return 1
    if len(xs) < n - k + 1:
        raise ValueError(f"B_{n},{k} needs {n - k + 1} arguments, got {len(xs)}")
    padded = list(xs[: n - k + 1]) + [0] * (k - 1)
    return bell_partial_table(n, padded)[n][k]


def bell_complete_all(n_max: int, xs: Sequence) -> list:
    """Y_0..Y_{n_max} via Y_{r+1} = sum_k C(r, k) Y_{r-k} x_{k+1}."""
    if len(xs) < n_max:
        raise ValueError(f"need {n_max} arguments, got {len(xs)}")
    x, exact = _unify(xs[:n_max])
    Y = [_one(exact)]
    for r in range(n_max):
        acc = _zero(exact)
        for k in range(r + 1):
            acc += math.comb(r, k) * Y[r - k] * x[k]
        Y.append(acc)
    return Y


def bell_complete(n: int, xs: Sequence):
    if n < 0:
        raise DomainError("bell_complete needs n >= 0")
    return bell_complete_all(n, xs)[n]


def bell_scale(n: int, alpha, xs: Sequence):
    """Y_n(alpha x_1, ..., alpha x_n) expanded as sum_k alpha^k B_{n,k}(xs)."""
    if n < 1:
        raise DomainError("bell_scale needs n >= 1")
    vals, _ = _unify([alpha] + list(xs[:n]))
    a, x = vals[0], vals[1:]
    row = bell_partial_table(n, x)[n]
    acc = row[0] * 0
    power = a
    for k in range(1, n + 1):
        acc += power * row[k]
        power *= a
    return acc


def log_polynomial(n: int, gs: Sequence):
    """Logarithmic partition polynomial L_n = sum_k (-1)^(k-1) (k-1)! B_{n,k}(gs).

    These are the Taylor coefficients (times n!) of log of an exponential
    generating function whose constant term is 1.  L_0 = 0.
    """
    if n == 0:
        return 0
    row = bell_partial_table(n, list(gs[:n]))[n]
    acc = row[0] * 0
    for k in range(1, n + 1):
        term = math.factorial(k - 1) * row[k]
        acc = acc + term if k % 2 else acc - term
    return acc


def bell_forward(xs: Sequence) -> list:
    """y_n = sum_k B_{n,k}(x_1, ...) = Y_n(xs) for n = 1..len(xs)."""
    return bell_complete_all(len(xs), xs)[1:]


def bell_invert(ys: Sequence) -> list:
    """Inverse of :func:`bell_forward`: x_n = sum_k (-1)^(k-1) (k-1)! B_{n,k}(ys)."""
    n_max = len(ys)
    if n_max == 0:
        return []
    T = bell_partial_table(n_max, ys)
    out = []
    for n in range(1, n_max + 1):
        acc = T[n][0]
        for k in range(1, n + 1):
            term = math.factorial(k - 1) * T[n][k]
            acc = acc + term if k % 2 else acc - term
        out.append(acc)
    return out


def series_exp(b0, bs: Sequence, order: int) -> PowerSeries:
    """Coefficients of h(x) given log h(x) = b0 + sum_{n>=1} b_n x^n / n.

    ``bs[0]`` is b_1.  Uses r a_r = sum_{m=1..r} a_{r-m} b_m with a_0 = e^{b0}.
    """
    if order < 0:
        raise DomainError("order must be >= 0")
    if len(bs) < order:
        raise ValueError(f"need {order} log-coefficients, got {len(bs)}")
    vals, exact = _unify([b0] + list(bs[:order]))
    b = vals[1:]
    if vals[0] == 0:
        a = [_one(exact)]
    else:
        a = [mpmath.exp(vals[0])]
        b = [mpf(v) for v in b]
    for r in range(1, order + 1):
        acc = a[0] * 0
        for m in range(1, r + 1):
            acc += a[r - m] * b[m - 1]
        a.append(acc / r)
    return PowerSeries(0, a)


def series_log(as_: Sequence, order: int):
    """Inverse of :func:`series_exp`: returns ``(b0, [b_1..b_order])``.

    Fails when a_0 <= 0, where the logarithm leaves the real line.
    """
    if order < 0:
        raise DomainError("order must be >= 0")
    if len(as_) < order + 1:
        raise ValueError(f"need {order + 1} coefficients, got {len(as_)}")
    a, exact = _unify(as_[: order + 1])
    if not a[0] > 0:
        raise DomainError("series_log needs a positive constant term")
    b0 = _zero(exact) if a[0] == 1 else mpmath.log(a[0])
    if exact and a[0] != 1:
        a = [mpf(v) for v in a]
    b = []
    for r in range(1, order + 1):
        acc = r * a[r]
        for m in range(1, r):
            acc -= a[r - m] * b[m - 1]
        b.append(acc / a[0])
    return b0, b
