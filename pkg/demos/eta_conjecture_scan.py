"""How close is eta_k to (-1/3)^(k+1)?

The eta constants from the Laurent expansion of zeta'/zeta at s = 1 alternate
in sign and shrink by about a factor of three per step.  The scan shows the
ratio eta_k / (-1/3)^(k+1) approaching 1 from above, which is why
|eta_k| 3^(k+1) <= 1 fails at every computed k.  The excess over 1 shrinks
roughly like (3/5)^(k+1), far slower than zeta(k+1) - 1, so dividing by
zeta(k+1) barely changes the ratio.

    python3 demos/eta_conjecture_scan.py
"""
import mpmath

from likeiper import PrecisionContext, conjecture_scan, eta_from_sigma, lehmer_b, sigma, zeta_derivs0

K = 40
ctx = PrecisionContext(320)
zd = zeta_derivs0(K + 2, ctx)
b = lehmer_b(K + 1, zd, ctx)
etas = eta_from_sigma(K + 1, sigma(K + 1, b, ctx), ctx)
scan = conjecture_scan(etas, ctx=ctx)

print(f"{'k':>3}  {'eta_k':>22}  {'ratio':>14}  {'ratio / zeta(k+1)':>18}")
for k, r, q in zip(scan.k_range, scan.ratio, scan.refined_ratio):
    if k <= 6 or k % 5 == 0:
        print(f"{k:>3}  {mpmath.nstr(etas.at(k), 12):>22}  {mpmath.nstr(r, 10):>14}  {mpmath.nstr(q, 12):>18}")

print()
print("best alpha (all k):    ", mpmath.nstr(scan.best_alpha, 8))
print("best alpha (k >= 2):   ", mpmath.nstr(scan.best_alpha_from_2, 8))
print("violations at alpha=1: ", len(scan.violations), "of", len(scan.k_range))
print("clean tail in range:   ", scan.has_clean_tail)
