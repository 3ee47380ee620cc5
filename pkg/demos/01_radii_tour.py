"""A tour of the radius solvers.

Prints the univalence radius rho and covering radius sigma for each family,
then shows how far the sup-norm radius improves on the older estimate tE.
"""

import numpy as np

from landau_kit import (
    Theorem1Params,
    Theorem2Params,
    Theorem3Params,
    rho2_sigma2,
    theorem1_radii,
    theorem3_radii,
    theoremA_radius,
    theoremB_radius,
    theoremC_radii,
    theoremD_radii,
    theoremE_radii,
)

print("Derivative bounds |G'| <= L1, |H'| < L2 (t1) against the biharmonic tC:")
for l1, l2 in [(0.0, 2.0), (0.5, 1.5), (1.0, 2.0), (2.0, 4.0)]:
    a = theorem1_radii(Theorem1Params(l1, l2))
    c = theoremC_radii(l1, l2)
    print(f"  L1={l1:<4} L2={l2:<4} rho1={a.rho:.6f} sigma1={a.sigma:.6f}   tC: r={c.rho:.6f} R={c.sigma:.6f}")

print("\n|G'| <= lambda with |H| <= 1 (t2) and the biharmonic tD; note the branch switch:")
for lam in (0.25, 0.5, 1.0, 2.0, 5.0):
    r2 = rho2_sigma2(Theorem2Params(lam))
    rd = theoremD_radii(lam)
    print(f"  lambda={lam:<5} rho2={r2.rho:.4f} sigma2={r2.sigma:.4f} [{r2.branch}]   tD: {rd.rho:.4f} [{rd.branch}]")

print("\nSup bounds |G| <= M1, |H| <= M2 (t3).  M1 = M2 = 1 is the sharp case:")
for m1, m2 in [(1, 1), (1, 2), (2, 1), (3, 3)]:
    r = theorem3_radii(Theorem3Params(m1, m2))
    print(f"  M1={m1} M2={m2}  rho3={r.rho:.12f}  sigma3={r.sigma:.12f}  residual={r.residual:.1e}")

print("\nImprovement over tE along the diagonal M1 = M2 = M:")
for m in np.linspace(1, 10, 7):
    r3 = theorem3_radii(Theorem3Params(m, m)).rho
    r5 = theoremE_radii(m).rho
    print(f"  M={m:5.2f}  rho3={r3:.6f}  r5={r5:.6f}  ratio={r3 / r5:.3f}")

a = theoremA_radius(2.0)
print(f"\nHarmonic estimate tA: minimised constant m = {a.diagnostics['phi_min']:.6f},"
      f" r1 * M = {a.rho * 2.0:.6f} (1/11.105 = {1 / 11.105:.6f})")
print(f"tB with Lambda = 2: r2 = {theoremB_radius(2.0).rho:.6f}")
