"""The brute-force cross-checks behind the closed forms.

Propagation integrals are summed on tensor grids and the LG projection
derivatives are taken by finite differences in extended precision.
Neither path touches the Gaussian-elimination or series code.
"""

import time

import numpy as np

from biphoton import evolve, oracle, project
from biphoton.kernel import spdc_kernel

rng = np.random.default_rng(0)
state = spdc_kernel(1.0, 0.5)
points = rng.normal(scale=0.2, size=(3, 4, 2))

for xi in (1, 0):
    exact = evolve.propagate_general(state, 1.0, 0.5, xi)
    for spec in (oracle.QuadratureSpec(81), oracle.QuadratureSpec(161)):
        quad = oracle.quad_propagate(state, 1.0, 0.5, xi, spec, points)
        err = max(abs(v / complex(exact(*p)) - 1) for v, p in zip(quad, points))
        print(f"xi = {xi}, {spec.nodes_per_dim:3d} nodes/dim: max relative error {err:.1e}")

B = rng.uniform(-1, 1, (4, 4)) + 1j * rng.uniform(-1, 1, (4, 4))
form = project.MuQuadraticForm(1.0, 0.5 * (B + B.T))
for q in (1, 2, 3):
    start = time.perf_counter()
    fd = oracle.fd_extract(form, q)
    elapsed = time.perf_counter() - start
    series = project.extract_element(form, q)
    print(f"q = {q}: series {series:.6e}  finite differences {fd:.6e}  ({elapsed:.2f} s)")
