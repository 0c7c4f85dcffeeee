"""Propagating the down-converted pair through turbulence.

The closed-form kernels for the two media are checked against the general
Gaussian propagation of a finite-length crystal state, which approaches
them as the crystal gets thinner.
"""

import numpy as np

from biphoton import evolve
from biphoton.kernel import hermiticity_defect, spdc_kernel, trace

K, t = 1.0, 0.5

for xi, label in ((1, "one shared medium"), (0, "independent media")):
    closed = evolve.evolve_spdc(K, t, 1.0, correlated=bool(xi))
    print(f"{label}: closed-form coefficient matrix")
    print(np.array2string(closed.coeff, precision=4, suppress_small=True))
    for beta in (1e-2, 1e-3, 1e-4):
        general = evolve.propagate_general(spdc_kernel(1.0, beta), K, t, xi)
        limit = evolve.thin_crystal_limit(general, beta)
        err = np.abs(limit.coeff - closed.coeff).max()
        print(f"  beta = {beta:.0e}: max coefficient difference {err:.2e}")
    print()

# Turbulence is a channel: it keeps the state normalized and Hermitian.
state = spdc_kernel(1.0, 1e-2)
for xi in (0, 1):
    out = evolve.propagate_general(state, 10.0, 1.0, xi)
    print(f"xi = {xi}: trace {trace(state).real:.12f} -> {trace(out).real:.12f}, "
          f"Hermiticity defect {hermiticity_defect(out):.1e}")
