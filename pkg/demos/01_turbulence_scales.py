"""From a physical link to the dimensionless turbulence numbers.

A 633 nm beam with a 1 cm waist over 1 km of moderate turbulence
(C_n^2 = 1e-14 m^-2/3).  Everything downstream works with K, t and W, so
this is the place to see what a real link maps to.
"""

import numpy as np

from biphoton import params

link = params.TurbulenceScales(cn2=1e-14, wavelength=633e-9, waist=0.01, distance=1e3)

print(f"Fried parameter r0     {link.r0 * 100:.2f} cm")
print(f"W = w0 / r0            {link.W:.3f}")
print(f"K (turbulence strength) {link.K:.4f}")
print(f"t (Rayleigh ranges)    {link.t:.3f}")
print(f"Rytov variance         {link.sigma_R2:.4f}  (via W, K: {link.sigma_R2_WK:.4f})")

# Weak scintillation means large K at fixed W: the beam sees many thin
# screens, each barely perturbing it.  t then shrinks like 1/K.
print("\nHolding W = 1 while K grows:")
for K in (0.1, 1, 10, 1e4):
    print(f"  K = {K:>8g}   t = {params.weak_scint_t(1.0, K):.3e}   sigma_R^2 = {params.rytov_from_WK(1.0, K):.3e}")

# S comes from integrating the Kolmogorov spectrum; the 1.457 used above
# is recovered numerically here.
print(f"\nstructure constant S = {params.verify_structure_constant():.6f}")

# Doubling the waist at fixed link leaves r0 alone but raises W and K steeply.
for w in 0.01 * 2.0 ** np.arange(3):
    s = params.TurbulenceScales(1e-14, 633e-9, w, 1e3)
    print(f"  waist {w * 100:4.1f} cm: W = {s.W:.3f}, K = {s.K:.3f}")
