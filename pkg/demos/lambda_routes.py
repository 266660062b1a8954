"""Li/Keiper constants by four independent routes.

Route A goes through the sigma sums, B through Lehmer's b_n, C through the
Maslanka decomposition in eta_k, and D through the xi derivatives at s = 1.
They share no intermediate values past zeta^(n)(0), so agreement within the
reported error bounds is a real check.

    python3 demos/lambda_routes.py [N]
"""
import sys

import mpmath

from likeiper import PrecisionContext, build_bundle

N = int(sys.argv[1]) if len(sys.argv) > 1 else 20
ctx = PrecisionContext.for_range(N)
bundle = build_bundle(N, ctx)
lam = bundle.lambdas

print(f"{N} constants at {ctx.work_bits} bits\n")
print(f"{'n':>3}  {'lambda_n (route A)':>24}  {'worst pair gap':>14}  {'gap / err_est':>13}")
with ctx.workprec(32):
    for n in range(1, N + 1):
        vals = {k: s.at(n) for k, s in lam.items()}
        gap = max(abs(vals[a] - vals[b]) for a in vals for b in vals)
        tol = max(lam[a].err_at(n) + lam[b].err_at(n) for a in vals for b in vals if a != b)
        print(f"{n:>3}  {mpmath.nstr(vals['A'], 20):>24}  {mpmath.nstr(gap, 3):>14}  {mpmath.nstr(gap / tol, 3):>13}")

# lambda_n grows like (n/2) log n, and stays positive throughout
print("\nall positive:", all(lam["A"].at(n) > lam["A"].err_at(n) for n in range(1, N + 1)))
