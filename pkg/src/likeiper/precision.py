"""Working-precision bookkeeping shared by every numerical module."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
from mpmath import mp, mpf

__all__ = [
    "PrecisionContext",
    "LikeiperError",
    "PrecisionShortfall",
    "ConvergenceError",
    "DomainError",
    "ladder_bits",
    "bits_to_err",
]


class LikeiperError(Exception):
    """Base class for errors raised by this package."""


class PrecisionShortfall(LikeiperError):
    """Raised when cancellation would consume more bits than are available."""


class ConvergenceError(LikeiperError):
    """A series or quadrature failed to reach its target.

    ``achieved`` holds the best error estimate that was reached.
    """

    def __init__(self, message: str, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class DomainError(LikeiperError, ValueError):
    """Argument outside the region where a formula is valid."""


def ladder_bits(n_max: int) -> int:
    """Default working precision for sequences up to index ``n_max``.

    Alternating binomial sums with results of size 3**-n lose about
    n*log2(3) bits, so precision grows with the index range.
    """
    return max(192, math.ceil(n_max * math.log2(3)) + 64)


def bits_to_err(bits: int) -> mpf:
    return mpf(2) ** (-bits)


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision plus the absolute error target for results.

    ``target_abs_err`` defaults to 2**-(work_bits - 24), leaving headroom for
    the rounding that accumulates in long sums.
    """

    work_bits: int = 192
    target_abs_err: mpf | None = field(default=None)
    ladder_factor: int = 2

    def __post_init__(self):
        if self.work_bits < 64:
            raise ValueError(f"work_bits must be >= 64, got {self.work_bits}")
        if self.ladder_factor < 2:
            raise ValueError("ladder_factor must be >= 2")
        if self.target_abs_err is None:
            object.__setattr__(self, "target_abs_err", bits_to_err(self.work_bits - 24))
        elif not self.target_abs_err > 0:
            raise ValueError("target_abs_err must be positive")

    @classmethod
    def for_range(cls, n_max: int, **kw) -> "PrecisionContext":
        return cls(work_bits=ladder_bits(n_max), **kw)

    @property
    def guard_bits(self) -> int:
        return self.work_bits + 32

    @property
    def eps(self) -> mpf:
        """Unit roundoff at the working precision."""
        return bits_to_err(self.work_bits)

    def laddered(self) -> "PrecisionContext":
        """The same request at ``ladder_factor`` times the precision."""
        bits = self.work_bits * self.ladder_factor
        target = self.target_abs_err * bits_to_err(bits - self.work_bits)
        return PrecisionContext(bits, target, self.ladder_factor)

    def workprec(self, extra: int = 0):
        return mp.workprec(self.work_bits + extra)


def mag2(x) -> float:
    """log2 |x| as a float; -inf for zero."""
    if not x:
        return float("-inf")
    return float(mpmath.log(abs(mpf(x)), 2))
