"""Why rho1 cannot be enlarged.

The extremal map F1 is checked on grids just inside rho1 (no collision) and
just outside (a collision, with a witness pair on the real axis).  The
covering radius at rho1 is attained at theta = 0.
"""

from landau_kit import (
    GridSpec,
    Theorem1Params,
    coverage_min_modulus,
    injectivity_check,
    make_F1,
    reverify,
    rho1,
    sharpness_witness_F1,
    sigma1,
)

p = Theorem1Params(1.0, 2.0)
f = make_F1(p)
rho = rho1(p)
print(f"rho1 = {rho:.15f} (2 - sqrt(3) for these bounds)")

inside = injectivity_check(f, GridSpec(40, 100, 0.99 * rho))
print("inside :", inside)

outside = injectivity_check(f, GridSpec(40, 100, 1.2 * rho))
w = outside.witness
print("outside:", outside)
print(f"  F1({w.z1.real:.9f}) = {w.f1.real:.15f}")
print(f"  F1({w.z2.real:.9f}) = {w.f2.real:.15f}")
print(f"  re-evaluated gap {reverify(f, w):.1e}")

for r in (rho + 1e-3, 0.5, 1.0):
    rep = sharpness_witness_F1(p, r)
    print(f"sharpness at r={r:.4f}: x1={rep.witness.z1.real:.6f} x2={rep.witness.z2.real:.6f} gap={rep.measured:.1e}")

cov = coverage_min_modulus(f, rho, claimed_sigma=sigma1(p))
print(f"\ncoverage at rho1: min |F1| = {cov.measured:.15f}, sigma1 = {sigma1(p):.15f},"
      f" at theta = {cov.details['theta_min']:.1e}")
