"""High-precision Li/Keiper constants and the sequences that feed them.

Stieltjes constants, zeta derivatives at 0 and 1, Lehmer constants b_n,
the eta and sigma families, xi derivatives at s = 1, and the Li/Keiper
constants lambda_n, each by more than one independent route, with a
verifier that checks the Bell-polynomial identities and inequalities
relating them.

Modules
-------
combinatorics  Exact Bell/Stirling algebra and power-series exp/log.
zeta           zeta(s), zeta^(n)(0), Stieltjes constants, delta_n.
xi             Theta-sum integrals for xi^(n)(1).
sequences      eta, b, sigma, lambda families and the trend/oscillation split.
verifier       Identity, inequality, sign and conjecture checks.
cli            ``likeiper`` command-line entry point.
"""

from .combinatorics import *  # noqa: F401,F403
from .precision import *  # noqa: F401,F403
from .sequences import *  # noqa: F401,F403
from .verifier import *  # noqa: F401,F403
from .xi import *  # noqa: F401,F403
from .zeta import *  # noqa: F401,F403
from . import combinatorics, precision, sequences, verifier, xi, zeta  # noqa: F401

__version__ = "0.1.0"
